import { createApp, loadDemo } from "./app";
import { Store } from "./state";
import "./style.css";

const root = document.getElementById("app");
if (root) {
  const store = new Store();
  createApp(root, store);
  // start with the bundled demo dataset so every tab has content
  void loadDemo(store).catch(() => {
    // offline or service down: the file input still works
  });
}

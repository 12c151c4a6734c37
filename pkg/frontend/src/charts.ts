// Client-side SVG charts built straight from bundle point arrays. Every
// chart is a <figure> holding the SVG plus a readout line that tracks the
// hovered data point. Wheel zooms the viewBox, double-click resets it.

import { formatStat } from "./format";
import type { BaSection, CurveResponse, Pair, RocSection } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 640;
const H = 420;
const MARGIN = { left: 60, right: 16, top: 18, bottom: 46 };
const PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];
const SQUARE_FILL = "#dce9f5";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
  text?: string,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  if (text !== undefined) node.textContent = text;
  return node;
}

interface Scale {
  (v: number): number;
  lo: number;
  hi: number;
}

function makeScale(lo: number, hi: number, a: number, b: number): Scale {
  const span = hi - lo || 1;
  const fn = ((v: number) => a + ((v - lo) / span) * (b - a)) as Scale;
  fn.lo = lo;
  fn.hi = hi;
  return fn;
}

function ticks(lo: number, hi: number, target = 5): number[] {
  const span = hi - lo || 1;
  const raw = span / target;
  const mag = 10 ** Math.floor(Math.log10(raw));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= target) ?? mag * 10;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step / 1e6; v += step) {
    out.push(Math.abs(v) < step / 1e6 ? 0 : v);
  }
  return out;
}

interface HoverPoint {
  px: number;
  py: number;
  label: string;
}

class Frame {
  svg: SVGSVGElement;
  readout: HTMLElement;
  figure: HTMLElement;
  x: Scale;
  y: Scale;
  private hoverPoints: HoverPoint[] = [];

  constructor(xlo: number, xhi: number, ylo: number, yhi: number) {
    this.svg = el("svg", {
      viewBox: `0 0 ${W} ${H}`,
      width: "100%",
      class: "chart-svg",
      "data-base-viewbox": `0 0 ${W} ${H}`,
    });
    this.x = makeScale(xlo, xhi, MARGIN.left, W - MARGIN.right);
    this.y = makeScale(ylo, yhi, H - MARGIN.bottom, MARGIN.top);
    this.figure = document.createElement("figure");
    this.figure.className = "chart";
    this.readout = document.createElement("figcaption");
    this.readout.className = "chart-readout";
    this.readout.textContent = " ";
    this.figure.append(this.svg, this.readout);
    this.attachZoom();
    this.attachHover();
  }

  axes(xlabel: string, ylabel: string): void {
    const axis = el("g", { class: "axes", stroke: "#444", "stroke-width": 1 });
    axis.append(
      el("line", {
        x1: MARGIN.left, y1: H - MARGIN.bottom,
        x2: W - MARGIN.right, y2: H - MARGIN.bottom,
      }),
      el("line", {
        x1: MARGIN.left, y1: MARGIN.top,
        x2: MARGIN.left, y2: H - MARGIN.bottom,
      }),
    );
    this.svg.append(axis);
    const labels = el("g", { class: "tick-labels", "font-size": 11, fill: "#222" });
    for (const t of ticks(this.x.lo, this.x.hi)) {
      labels.append(
        el("line", {
          x1: this.x(t), y1: H - MARGIN.bottom,
          x2: this.x(t), y2: H - MARGIN.bottom + 5,
          stroke: "#444",
        }),
        el("text", {
          x: this.x(t), y: H - MARGIN.bottom + 17,
          "text-anchor": "middle",
        }, formatStat(Number(t.toPrecision(10)))),
      );
    }
    for (const t of ticks(this.y.lo, this.y.hi)) {
      labels.append(
        el("line", {
          x1: MARGIN.left - 5, y1: this.y(t),
          x2: MARGIN.left, y2: this.y(t),
          stroke: "#444",
        }),
        el("text", {
          x: MARGIN.left - 8, y: this.y(t) + 4,
          "text-anchor": "end",
        }, formatStat(Number(t.toPrecision(10)))),
      );
    }
    this.svg.append(labels);
    this.svg.append(
      el("text", {
        x: (MARGIN.left + W - MARGIN.right) / 2, y: H - 8,
        "text-anchor": "middle", "font-size": 13, class: "axis-label",
      }, xlabel),
      el("text", {
        x: 14, y: (MARGIN.top + H - MARGIN.bottom) / 2,
        "text-anchor": "middle", "font-size": 13, class: "axis-label",
        transform: `rotate(-90 14 ${(MARGIN.top + H - MARGIN.bottom) / 2})`,
      }, ylabel),
    );
  }

  point(vx: number, vy: number, color: string, cls: string, label: string): void {
    const c = el("circle", {
      cx: this.x(vx), cy: this.y(vy), r: 3.5,
      fill: color, "fill-opacity": 0.75, class: cls,
      "data-x": vx, "data-y": vy,
    });
    c.append(el("title", {}, label));
    this.svg.append(c);
    this.hoverPoints.push({ px: this.x(vx), py: this.y(vy), label });
  }

  hline(vy: number, color: string, cls: string, dash?: string): void {
    const attrs: Record<string, string | number> = {
      x1: MARGIN.left, y1: this.y(vy),
      x2: W - MARGIN.right, y2: this.y(vy),
      stroke: color, "stroke-width": 1.5, class: cls,
    };
    if (dash) attrs["stroke-dasharray"] = dash;
    this.svg.append(el("line", attrs));
  }

  /** y = slope*x + intercept drawn across the x domain, clipped to y range. */
  line(slope: number, intercept: number, color: string, cls: string, dash?: string): void {
    const pts: [number, number][] = [];
    const n = 64;
    for (let i = 0; i <= n; i++) {
      const vx = this.x.lo + ((this.x.hi - this.x.lo) * i) / n;
      const vy = slope * vx + intercept;
      if (vy >= this.y.lo && vy <= this.y.hi) pts.push([this.x(vx), this.y(vy)]);
    }
    if (pts.length < 2) return;
    const attrs: Record<string, string | number> = {
      points: pts.map(([a, b]) => `${a.toFixed(2)},${b.toFixed(2)}`).join(" "),
      fill: "none", stroke: color, "stroke-width": 1.5, class: cls,
    };
    if (dash) attrs["stroke-dasharray"] = dash;
    this.svg.append(el("polyline", attrs));
  }

  polyline(xs: number[], ys: number[], color: string, cls: string): void {
    const pts = xs.map((vx, i) => `${this.x(vx).toFixed(2)},${this.y(ys[i]).toFixed(2)}`);
    this.svg.append(
      el("polyline", {
        points: pts.join(" "),
        fill: "none", stroke: color, "stroke-width": 2, class: cls,
      }),
    );
  }

  legend(entries: [string, string][]): void {
    const g = el("g", { class: "legend", "font-size": 11 });
    entries.forEach(([color, label], i) => {
      const ly = MARGIN.top + 8 + i * 16;
      g.append(
        el("rect", { x: W - MARGIN.right - 180, y: ly - 8, width: 10, height: 10, fill: color }),
        el("text", { x: W - MARGIN.right - 165, y: ly, fill: "#222", class: "legend-entry" }, label),
      );
    });
    this.svg.append(g);
  }

  private attachZoom(): void {
    this.svg.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const [vx, vy, vw, vh] = (this.svg.getAttribute("viewBox") ?? `0 0 ${W} ${H}`)
        .split(/\s+/)
        .map(Number);
      const factor = (ev as WheelEvent).deltaY > 0 ? 1.25 : 0.8;
      const nw = Math.min(Math.max(vw * factor, W / 16), W);
      const nh = Math.min(Math.max(vh * factor, H / 16), H);
      const cx = vx + vw / 2;
      const cy = vy + vh / 2;
      const nx = Math.min(Math.max(cx - nw / 2, 0), W - nw);
      const ny = Math.min(Math.max(cy - nh / 2, 0), H - nh);
      this.svg.setAttribute("viewBox", `${nx} ${ny} ${nw} ${nh}`);
    });
    this.svg.addEventListener("dblclick", () => {
      this.svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
    });
  }

  private attachHover(): void {
    this.svg.addEventListener("mousemove", (ev) => {
      if (this.hoverPoints.length === 0) return;
      const rect = this.svg.getBoundingClientRect();
      const mx = (ev as MouseEvent).clientX - rect.left;
      const my = (ev as MouseEvent).clientY - rect.top;
      let best = this.hoverPoints[0];
      let bestDist = Infinity;
      for (const p of this.hoverPoints) {
        const d = (p.px - mx) ** 2 + (p.py - my) ** 2;
        if (d < bestDist) {
          bestDist = d;
          best = p;
        }
      }
      this.readout.textContent = best.label;
    });
    this.svg.addEventListener("mouseleave", () => {
      this.readout.textContent = " ";
    });
  }
}

function spread(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * 0.06;
  return [lo - pad, hi + pad];
}

export interface ScatterOptions {
  pairs: Pair[];
  thresholds: [number, number, number];
  labels: string[];
  columnNames: [string, string];
  fits?: { slope: number; intercept: number; withIntercept: boolean }[];
}

export function scatterChart(opts: ScatterOptions): HTMLElement {
  const all = opts.pairs.flat();
  const hi = Math.max(...all, opts.thresholds[2] * 1.15);
  const frame = new Frame(0, hi, 0, hi);

  const edges = [0, ...opts.thresholds, hi];
  for (let i = 0; i < 4 && edges[i] < hi; i++) {
    const a = frame.x(edges[i]);
    const b = frame.x(Math.min(edges[i + 1], hi));
    const ya = frame.y(Math.min(edges[i + 1], hi));
    const yb = frame.y(edges[i]);
    frame.svg.append(
      el("rect", {
        x: a, y: ya, width: b - a, height: yb - ya,
        fill: SQUARE_FILL, opacity: 0.65, class: "severity-square",
        "data-label": opts.labels[i] ?? String(i),
      }),
    );
  }
  for (const t of opts.thresholds) {
    frame.svg.append(
      el("line", {
        x1: frame.x(t), y1: frame.y(0), x2: frame.x(t), y2: frame.y(hi),
        stroke: "#bbb", "stroke-dasharray": "3 3", class: "threshold-line",
      }),
      el("line", {
        x1: frame.x(0), y1: frame.y(t), x2: frame.x(hi), y2: frame.y(t),
        stroke: "#bbb", "stroke-dasharray": "3 3", class: "threshold-line",
      }),
    );
  }
  frame.line(1, 0, "#666", "identity-line", "6 4");
  const legend: [string, string][] = [["#666", "identity"]];
  for (const fit of opts.fits ?? []) {
    if (fit.withIntercept) {
      frame.line(fit.slope, fit.intercept, PALETTE[0], "fit-intercept-line");
      legend.push([
        PALETTE[0],
        `fit: y = ${formatStat(fit.slope)}x + ${formatStat(fit.intercept)}`,
      ]);
    } else {
      frame.line(fit.slope, 0, PALETTE[1], "fit-origin-line");
      legend.push([PALETTE[1], `through origin: y = ${formatStat(fit.slope)}x`]);
    }
  }
  for (const [r, m] of opts.pairs) {
    frame.point(r, m, PALETTE[3], "data-point",
      `${opts.columnNames[0]} ${formatStat(r)}, ${opts.columnNames[1]} ${formatStat(m)}`);
  }
  frame.axes(opts.columnNames[0], opts.columnNames[1]);
  frame.legend(legend);
  return frame.figure;
}

export function baChart(section: BaSection, columnNames: [string, string]): HTMLElement {
  const xs = section.points.map((p) => p[0]);
  const ys = section.points.map((p) => p[1]);
  const [xlo, xhi] = spread(xs);
  const [ylo0, yhi0] = spread([...ys, section.loa_low, section.loa_high]);
  const frame = new Frame(xlo, xhi, ylo0, yhi0);
  frame.hline(section.mean_diff, PALETTE[0], "mean-line");
  frame.hline(section.loa_low, PALETTE[3], "loa-line", "5 4");
  frame.hline(section.loa_high, PALETTE[3], "loa-line", "5 4");
  if (section.fit) {
    frame.line(section.fit.slope, section.fit.intercept, PALETTE[2], "ba-fit-line");
  }
  const unit = section.variant === "relative_deviation" ? "%" : "";
  const xlabel =
    section.variant === "modified" ? columnNames[0] : "pair mean";
  const ylabel =
    section.variant === "relative_deviation"
      ? "difference, % of pair mean"
      : "difference";
  for (const [px, py] of section.points) {
    frame.point(px, py, PALETTE[3], "data-point",
      `x ${formatStat(px)}, diff ${formatStat(py)}${unit}`);
  }
  frame.axes(xlabel, ylabel);
  frame.legend([
    [PALETTE[0], `mean ${formatStat(section.mean_diff)}${unit}`],
    [PALETTE[3], `limits ${formatStat(section.loa_low)} / ${formatStat(section.loa_high)}${unit}`],
  ]);
  return frame.figure;
}

export function curveChart(
  curve: CurveResponse,
  activeThresholds: [number, number, number],
): HTMLElement {
  const { x, values, config } = curve;
  const frame = new Frame(0, x[x.length - 1], 0, Math.max(config.max * 1.15, 0.1));
  frame.polyline(x, values, PALETTE[0], "ranking-curve");
  for (const t of activeThresholds) {
    frame.svg.append(
      el("line", {
        x1: frame.x(t), y1: frame.y(0),
        x2: frame.x(t), y2: frame.y(config.max),
        stroke: "#ccc", "stroke-dasharray": "2 3", class: "hotspot-guide",
      }),
    );
    const c = el("circle", {
      cx: frame.x(t), cy: frame.y(config.max), r: 4,
      fill: PALETTE[3], class: "hotspot-marker", "data-x": t,
    });
    c.append(el("title", {}, `hotspot ${formatStat(t)} → ${formatStat(config.max)}`));
    frame.svg.append(c);
  }
  frame.axes("reference value", "ranking weight");
  frame.legend([
    [PALETTE[0], `${config.shape} curve`],
    [PALETTE[3], `hotspots (weight ${formatStat(config.max)})`],
  ]);
  return frame.figure;
}

export function rocChart(roc: RocSection): HTMLElement {
  const frame = new Frame(0, 1, 0, 1);
  frame.line(1, 0, "#999", "chance-line", "4 4");
  const legend: [string, string][] = [];
  roc.curves.forEach((curve, i) => {
    const color = PALETTE[i % PALETTE.length];
    frame.polyline(
      curve.points.map((p) => p[0]),
      curve.points.map((p) => p[1]),
      color,
      "roc-curve",
    );
    const pw = roc.pairwise[i];
    if (pw) {
      legend.push([color, `${pw.labels[0]} vs ${pw.labels[1]}: AUC ${formatStat(pw.auc)}`]);
    }
  });
  frame.axes("false positive rate", "true positive rate");
  frame.legend(legend);
  return frame.figure;
}

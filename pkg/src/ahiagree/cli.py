"""Command line front end.

Exit codes: 0 on success, 2 when the input or configuration is invalid,
3 on I/O failure.  Diagnostics go to stderr; requested artifacts go to
--out or, for "-", to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

from . import figures, report
from .classify import PRESETS, SubrangeScheme
from .errors import ConfigError, DataWarning, InputError, Undefined
from .ingest import parse_pairs
from .ranking import Shape, RankingConfig, sample_curve

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3

DEFAULT_SAMPLES = 601

_DIAG_COLORS = {"error": "\x1b[31m", "warning": "\x1b[33m"}


def _use_color() -> bool:
    """Color diagnostics only on a terminal, and never when NO_COLOR is set."""
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(sys.stderr, "isatty") and sys.stderr.isatty()


def _diag(kind: str, message: str) -> None:
    prefix = f"{kind}:"
    if _use_color():
        prefix = f"{_DIAG_COLORS[kind]}{prefix}\x1b[0m"
    print(f"{prefix} {message}", file=sys.stderr)


def _parse_thresholds(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated thresholds, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"thresholds must be numeric, got {text!r}") from None
    return values


def _scheme_from_args(args) -> SubrangeScheme:
    if args.preset:
        return PRESETS[args.preset]
    t1, t2, t3 = _parse_thresholds(args.thresholds)
    return SubrangeScheme(t1=t1, t2=t2, t3=t3)


def _ranking_from_args(args, scheme: SubrangeScheme) -> RankingConfig:
    try:
        shape = Shape(args.shape)
    except ValueError:
        raise ConfigError(
            f"unknown shape {args.shape!r}; choose from "
            + ", ".join(s.value for s in Shape)
        ) from None
    return RankingConfig.for_scheme(
        scheme, vmin=args.ranking_min, vmax=args.ranking_max, shape=shape
    )


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_output(path: str, content: str) -> None:
    if path == "-":
        sys.stdout.write(content)
    else:
        Path(path).write_text(content, encoding="utf-8")


def _load_sample(path: str):
    """Parse the CSV/TSV (delimiter sniffed), forwarding warnings to stderr."""
    raw = _read_input(path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DataWarning)
        sample = parse_pairs(raw, delimiter=None)
    notes = tuple(str(w.message) for w in caught if issubclass(w.category, DataWarning))
    for note in notes:
        _diag("warning", note)
    return sample, notes


def _cmd_analyze(args) -> int:
    scheme = _scheme_from_args(args)
    ranking_cfg = _ranking_from_args(args, scheme)
    if not 0.0 < args.ci < 1.0:
        raise ConfigError(f"--ci must be in (0, 1), got {args.ci}")
    sample, notes = _load_sample(args.input)
    bundle = report.analyze(
        sample, scheme, ranking_cfg, ci=args.ci, extra_warnings=notes
    )
    _write_output(args.out, report.bundle_to_json(bundle))
    if args.plots:
        _write_plots(bundle, Path(args.plots))
    return EXIT_OK


def _write_plots(bundle, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    documents = {
        "scatter.svg": figures.render_scatter(bundle),
        "histogram.svg": figures.render_histogram(bundle),
        "ranking.svg": figures.render_ranking(bundle.ranking),
        "roc.svg": figures.render_roc(bundle),
    }
    for name, result in (
        ("bland_altman.svg", bundle.bland_altman),
        ("modified_ba.svg", bundle.modified_ba),
        ("relative_ba.svg", bundle.relative_ba),
    ):
        if isinstance(result, Undefined):
            _diag("warning", f"skipping {name}: {result.reason}")
        else:
            documents[name] = figures.render_ba(result)
    for name, svg in documents.items():
        (directory / name).write_text(svg, encoding="utf-8")


def _cmd_ranking_curve(args) -> int:
    scheme = _scheme_from_args(args)
    cfg = _ranking_from_args(args, scheme)
    xs, values = sample_curve(cfg, args.samples)
    if args.format == "csv":
        lines = ["x,value"]
        lines.extend(f"{repr(float(x))},{repr(float(v))}" for x, v in zip(xs, values))
        _write_output(args.out, "\n".join(lines) + "\n")
    else:
        _write_output(args.out, figures.render_ranking(cfg, args.samples))
    return EXIT_OK


def _cmd_validate(args) -> int:
    sample, _ = _load_sample(args.input)
    print(f"{sample.n} rows OK")
    return EXIT_OK


def _parse_listen(listen: str) -> tuple[str, int]:
    host, sep, port_text = listen.rpartition(":")
    if not sep or not host:
        raise ConfigError(f"--listen must be HOST:PORT, got {listen!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise ConfigError(f"--listen port must be an integer, got {port_text!r}") from None
    if not 0 < port < 65536:
        raise ConfigError(f"--listen port out of range: {port}")
    return host, port


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, port = _parse_listen(args.listen)
    uvicorn.run(create_app(), host=host, port=port, log_level="info")
    return EXIT_OK


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--thresholds",
        default="5,15,30",
        help="three ascending class boundaries, e.g. 5,15,30 (default)",
    )
    group.add_argument(
        "--preset", choices=sorted(PRESETS), help="named threshold set"
    )
    parser.add_argument(
        "--ranking-min", type=float, default=0.5, help="weight at midpoints"
    )
    parser.add_argument(
        "--ranking-max", type=float, default=1.5, help="weight at the boundaries"
    )
    parser.add_argument(
        "--shape",
        default="cubic",
        choices=[s.value for s in Shape],
        help="interpolation between boundary and midpoint weights",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ahiagree",
        description="Agreement statistics for paired AHI measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="run the full battery over a two-column CSV"
    )
    p_analyze.add_argument(
        "--input", required=True, help="CSV path, or - for stdin"
    )
    _add_config_flags(p_analyze)
    p_analyze.add_argument(
        "--ci", type=float, default=0.95, help="confidence level for intervals"
    )
    p_analyze.add_argument(
        "--out", default="-", help="report destination, - for stdout (default)"
    )
    p_analyze.add_argument(
        "--plots", metavar="DIR", help="also write the SVG figures here"
    )
    p_analyze.set_defaults(func=_cmd_analyze)

    p_curve = sub.add_parser(
        "ranking-curve", help="tabulate or draw the weighting curve"
    )
    _add_config_flags(p_curve)
    p_curve.add_argument(
        "--samples", type=int, default=DEFAULT_SAMPLES, help="number of grid points"
    )
    p_curve.add_argument("--format", default="csv", choices=["csv", "svg"])
    p_curve.add_argument("--out", default="-")
    p_curve.set_defaults(func=_cmd_ranking_curve)

    p_validate = sub.add_parser(
        "validate", help="check a CSV without running the analysis"
    )
    p_validate.add_argument("--input", required=True, help="CSV path, or - for stdin")
    p_validate.set_defaults(func=_cmd_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP analysis service")
    p_serve.add_argument(
        "--listen", default="127.0.0.1:8080", help="HOST:PORT to bind"
    )
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConfigError) as exc:
        _diag("error", str(exc))
        return EXIT_INVALID
    except OSError as exc:
        _diag("error", str(exc))
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())

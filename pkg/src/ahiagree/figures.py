"""SVG figures for the analysis bundle.

All renderers are pure functions of their inputs and return the complete
SVG document as a string.  Re-rendering the same bundle yields identical
bytes, which keeps report artifacts diffable.
"""

from __future__ import annotations

import math

import numpy as np

from ._svg import Canvas
from .blandaltman import BAVariant, BlandAltmanResult
from .errors import Undefined
from .ranking import RankingConfig, sample_curve
from .report import AnalysisBundle

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")
SQUARE_FILL = "#d7e3f4"


def render_scatter(bundle: AnalysisBundle) -> str:
    """Measured against reference, severity squares and both fitted lines."""
    sample = bundle.sample
    scheme = bundle.scheme
    top = max(
        float(sample.reference.max()),
        float(sample.measured.max()),
        scheme.t3 * 1.2,
    ) * 1.06
    canvas = Canvas(
        (0.0, top),
        (0.0, top),
        "Method agreement",
        f"Reference ({sample.column_names[0]})",
        f"Measured ({sample.column_names[1]})",
    )
    edges = (0.0, float(scheme.t1), float(scheme.t2), float(scheme.t3), top)
    for k in range(4):
        canvas.rect(
            edges[k], edges[k + 1], edges[k], edges[k + 1],
            SQUARE_FILL, opacity=0.65, cls="severity-square",
        )
    canvas.line(0.0, 0.0, top, top, "#555555", "identity-line", dash="6 4")
    legend = [("#555555", "y = x")]
    models = bundle.linear_models
    if not isinstance(models, Undefined):
        wi = models.with_intercept
        canvas.clipped_line(wi.slope, wi.intercept, PALETTE[0], "fit-intercept-line")
        legend.append((PALETTE[0], f"fit: y = {wi.slope:.3f}x + {wi.intercept:.3f}"))
        to = models.through_origin
        canvas.clipped_line(to.slope, 0.0, PALETTE[1], "fit-origin-line")
        legend.append((PALETTE[1], f"through origin: y = {to.slope:.3f}x"))
    for r, m in zip(sample.reference, sample.measured):
        canvas.circle(float(r), float(m), 3.2, PALETTE[3], "data-point", opacity=0.75)
    canvas.legend(legend)
    return canvas.render()


_BA_TITLES = {
    BAVariant.CLASSIC: "Bland-Altman",
    BAVariant.MODIFIED: "Bland-Altman (reference on x)",
    BAVariant.RELATIVE_DEVIATION: "Relative deviation",
}
_BA_X_LABELS = {
    BAVariant.CLASSIC: "Mean of pair",
    BAVariant.MODIFIED: "Reference value",
    BAVariant.RELATIVE_DEVIATION: "Mean of pair",
}
_BA_Y_LABELS = {
    BAVariant.CLASSIC: "Difference (measured - reference)",
    BAVariant.MODIFIED: "Difference (measured - reference)",
    BAVariant.RELATIVE_DEVIATION: "Deviation (% of pair mean)",
}


def render_ba(result: BlandAltmanResult) -> str:
    """Difference plot with the mean line and both limits of agreement."""
    xs = result.points[:, 0]
    ys = result.points[:, 1]
    x_lo = min(0.0, float(xs.min()))
    x_hi = float(xs.max()) * 1.06 if xs.max() > 0 else 1.0
    y_span_candidates = [float(ys.min()), float(ys.max()), result.loa_low, result.loa_high]
    y_lo, y_hi = min(y_span_candidates), max(y_span_candidates)
    pad = (y_hi - y_lo) * 0.12 or 1.0
    unit = "%" if result.variant is BAVariant.RELATIVE_DEVIATION else ""
    canvas = Canvas(
        (x_lo, x_hi),
        (y_lo - pad, y_hi + pad),
        _BA_TITLES[result.variant],
        _BA_X_LABELS[result.variant],
        _BA_Y_LABELS[result.variant],
    )
    canvas.hline(result.mean_diff, PALETTE[0], "mean-line")
    canvas.hline(result.loa_low, PALETTE[3], "loa-line", dash="5 4")
    canvas.hline(result.loa_high, PALETTE[3], "loa-line", dash="5 4")
    if result.fit is not None:
        canvas.clipped_line(
            result.fit.slope, result.fit.intercept, PALETTE[2], "ba-fit-line"
        )
    for x, y in result.points:
        canvas.circle(float(x), float(y), 3.2, "#444444", "data-point", opacity=0.75)
    canvas.legend(
        [
            (PALETTE[0], f"mean {result.mean_diff:.2f}{unit}"),
            (PALETTE[3], f"limits {result.loa_low:.2f} / {result.loa_high:.2f}{unit}"),
        ]
    )
    return canvas.render()


def render_ranking(cfg: RankingConfig, n_samples: int = 601) -> str:
    """The ranking curve with hotspot and midpoint markers."""
    xs, values = sample_curve(cfg, n_samples)
    span = cfg.vmax - cfg.vmin
    canvas = Canvas(
        (0.0, float(xs[-1])),
        (cfg.vmin - 0.15 * span, cfg.vmax + 0.15 * span),
        "Ranking function",
        "Reference value",
        "Weight",
    )
    for t in cfg.hotspots:
        canvas.line(
            t, cfg.vmin - 0.15 * span, t, cfg.vmax + 0.15 * span,
            "#cccccc", "hotspot-guide", dash="3 3", width=1.0,
        )
    canvas.polyline(xs, values, PALETTE[0], "ranking-curve")
    for t in cfg.hotspots:
        canvas.circle(float(t), cfg.vmax, 4.0, PALETTE[3], "hotspot-marker")
    h1, h2, h3 = cfg.hotspots
    for mid in (h1 / 2.0, (h1 + h2) / 2.0, (h2 + h3) / 2.0):
        canvas.circle(mid, cfg.vmin, 4.0, PALETTE[2], "midpoint-marker")
    canvas.legend(
        [
            (PALETTE[3], f"hotspots (weight {cfg.vmax:g})"),
            (PALETTE[2], f"midpoints (weight {cfg.vmin:g})"),
        ]
    )
    return canvas.render()


def render_histogram(bundle: AnalysisBundle) -> str:
    """Histogram of paired differences, Freedman-Diaconis bin width."""
    diffs = bundle.sample.differences()
    n = diffs.size
    lo, hi = float(diffs.min()), float(diffs.max())
    if hi == lo:
        counts = np.array([n])
        edges = np.array([lo - 0.5, lo + 0.5])
    else:
        q25, q75 = np.percentile(diffs, [25.0, 75.0])
        iqr = float(q75 - q25)
        if iqr > 0.0:
            width = 2.0 * iqr / n ** (1.0 / 3.0)
            n_bins = max(1, math.ceil((hi - lo) / width))
        else:
            n_bins = 10
        counts, edges = np.histogram(diffs, bins=n_bins, range=(lo, hi))
    x_pad = (edges[-1] - edges[0]) * 0.05
    canvas = Canvas(
        (float(edges[0]) - x_pad, float(edges[-1]) + x_pad),
        (0.0, float(counts.max()) * 1.15),
        "Differences (measured - reference)",
        "Difference",
        "Count",
    )
    for k, count in enumerate(counts):
        canvas.bar(
            float(edges[k]),
            float(edges[k + 1]),
            float(count),
            PALETTE[0],
            "hist-bar",
            extra_attrs=f' data-count="{int(count)}"',
        )
    if canvas.x0 < 0.0 < canvas.x1:
        canvas.line(
            0.0, 0.0, 0.0, canvas.y1, "#555555", "zero-line", dash="4 3", width=1.0
        )
    return canvas.render()


def render_roc(bundle: AnalysisBundle) -> str:
    """Empirical ROC polylines, one per evaluated class pair."""
    canvas = Canvas(
        (0.0, 1.0),
        (0.0, 1.0),
        "Pairwise ROC",
        "False positive rate",
        "True positive rate",
    )
    canvas.line(0.0, 0.0, 1.0, 1.0, "#999999", "chance-line", dash="5 4")
    legend = []
    roc_section = bundle.roc
    if not isinstance(roc_section, Undefined):
        labels = bundle.scheme.labels
        for i, curve in enumerate(roc_section.curves):
            color = PALETTE[i % len(PALETTE)]
            canvas.polyline(
                curve.points[:, 0], curve.points[:, 1], color, "roc-curve"
            )
            a, b = curve.class_pair
            legend.append((color, f"{labels[a]} vs {labels[b]} (AUC {curve.auc:.3f})"))
        overall = roc_section.summary.overall
        legend.append(("#ffffff", f"overall AUC {overall:.3f}"))
    canvas.legend(legend, px_x=330, px_y=380)
    return canvas.render()

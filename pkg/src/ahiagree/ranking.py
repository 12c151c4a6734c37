"""Clinically-weighted error measures.

The ranking function B(x) weights an absolute error by where the reference
AHI sits: it peaks (vmax) at the subrange thresholds, where a small numeric
error can flip the diagnosis, and bottoms out (vmin) at subrange midpoints.
Past twice the last threshold it stays flat at vmin.  Three interpolation
shapes are available between those fixed points.

The extended MAE multiplies each |measured - reference| by B at the reference
value and by an attenuation A of 0.5 when both values fall in the same
subrange (1.0 otherwise), then averages.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .classify import SubrangeScheme, classify_many
from .errors import ConfigError, Undefined
from .ingest import PairedSample

#: Attenuation applied when reference and measured share a subrange.
SAME_SUBRANGE_FACTOR = 0.5
CROSS_SUBRANGE_FACTOR = 1.0


class Shape(str, Enum):
    CUBIC = "cubic"
    SINUSOIDAL = "sinusoidal"
    LINEAR = "linear"


@dataclass(frozen=True)
class RankingConfig:
    """Hotspots, extremes, and interpolation shape of the ranking function."""

    h1: float
    h2: float
    h3: float
    vmin: float = 0.5
    vmax: float = 1.5
    shape: Shape = Shape.CUBIC
    tail_end: float | None = None  # defaults to 2 * h3

    def __post_init__(self):
        if self.tail_end is None:
            object.__setattr__(self, "tail_end", 2.0 * self.h3)
        if not self.vmin < self.vmax:
            raise ConfigError(
                f"ranking minimum must be below maximum, got {self.vmin} >= {self.vmax}"
            )
        if not (0 < self.h1 < self.h2 < self.h3 < self.tail_end):
            raise ConfigError(
                f"hotspots must satisfy 0 < h1 < h2 < h3 < tail_end, got "
                f"({self.h1}, {self.h2}, {self.h3}, {self.tail_end})"
            )
        object.__setattr__(self, "shape", Shape(self.shape))

    @classmethod
    def for_scheme(
        cls,
        scheme: SubrangeScheme,
        vmin: float = 0.5,
        vmax: float = 1.5,
        shape: Shape = Shape.CUBIC,
    ) -> "RankingConfig":
        return cls(scheme.t1, scheme.t2, scheme.t3, vmin=vmin, vmax=vmax, shape=shape)

    @property
    def hotspots(self) -> tuple[float, float, float]:
        return (self.h1, self.h2, self.h3)

    def matches(self, scheme: SubrangeScheme) -> bool:
        return self.hotspots == scheme.thresholds


def _interior(x: np.ndarray, a: float, b: float, cfg: RankingConfig) -> np.ndarray:
    """Segment with vmax at both ends and vmin at the midpoint."""
    span = cfg.vmax - cfg.vmin
    mid = (a + b) / 2.0
    half = (b - a) / 2.0
    if cfg.shape is Shape.CUBIC:
        return cfg.vmin + span * ((x - mid) / half) ** 2
    if cfg.shape is Shape.SINUSOIDAL:
        return cfg.vmin + span * (0.5 + 0.5 * np.cos(2.0 * np.pi * (x - a) / (b - a)))
    return cfg.vmin + span * np.abs(x - mid) / half


def _tail(x: np.ndarray, a: float, b: float, cfg: RankingConfig) -> np.ndarray:
    """Monotone descent from vmax at the last hotspot to vmin at tail_end."""
    span = cfg.vmax - cfg.vmin
    if cfg.shape is Shape.CUBIC:
        # half-parabola, vertex (zero slope) at tail_end
        return cfg.vmin + span * ((x - b) / (b - a)) ** 2
    if cfg.shape is Shape.SINUSOIDAL:
        return cfg.vmin + span * (0.5 + 0.5 * np.cos(np.pi * (x - a) / (b - a)))
    return cfg.vmin + span * (b - x) / (b - a)


def ranking_values(xs, cfg: RankingConfig) -> np.ndarray:
    """Vectorized B(x) over reference AHI values."""
    xs = np.asarray(xs, dtype=np.float64)
    if np.any(xs < 0):
        raise ValueError("AHI must be non-negative")
    edges = (cfg.h1, cfg.h2, cfg.h3, cfg.tail_end)
    seg = np.searchsorted(edges, xs, side="right")
    out = np.full(xs.shape, cfg.vmin, dtype=np.float64)
    bounds = (0.0, cfg.h1, cfg.h2, cfg.h3)
    for k in range(3):
        mask = seg == k
        if mask.any():
            out[mask] = _interior(xs[mask], bounds[k], bounds[k + 1], cfg)
    mask = seg == 3
    if mask.any():
        out[mask] = _tail(xs[mask], cfg.h3, cfg.tail_end, cfg)
    return out


def ranking_value(x: float, cfg: RankingConfig) -> float:
    """B(x) for a single reference AHI value."""
    return float(ranking_values(np.array([x]), cfg)[0])


def sample_curve(
    cfg: RankingConfig, n_samples: int = 601
) -> tuple[np.ndarray, np.ndarray]:
    """x and B(x) vectors at n_samples evenly spaced points over [0, 2 * h3].

    With the default 601 samples every hotspot of the adult and pediatric
    presets lands exactly on the grid.
    """
    if n_samples < 10:
        raise ConfigError(f"need at least 10 samples, got {n_samples}")
    xs = np.linspace(0.0, 2.0 * cfg.h3, n_samples)
    return xs, ranking_values(xs, cfg)


def mae(sample: PairedSample) -> float:
    """Plain mean absolute error of measured vs reference."""
    return float(np.abs(sample.differences()).mean())


def _weighted_mae(diffs: np.ndarray, weights: np.ndarray) -> float:
    return float((weights * np.abs(diffs)).mean())


def emae(sample: PairedSample, scheme: SubrangeScheme, cfg: RankingConfig) -> float:
    """Extended MAE: mean of A_i * B(ref_i) * |res_i - ref_i|."""
    if not cfg.matches(scheme):
        raise ConfigError(
            f"ranking hotspots {cfg.hotspots} do not match "
            f"scheme thresholds {scheme.thresholds}"
        )
    same = classify_many(sample.reference, scheme) == classify_many(
        sample.measured, scheme
    )
    attenuation = np.where(same, SAME_SUBRANGE_FACTOR, CROSS_SUBRANGE_FACTOR)
    weights = attenuation * ranking_values(sample.reference, cfg)
    return _weighted_mae(sample.differences(), weights)


def line_counts(sample: PairedSample) -> tuple[int, int, int]:
    """Counts of points above, below, and on the Y = X identity line."""
    d = sample.differences()
    return (
        int(np.count_nonzero(d > 0)),
        int(np.count_nonzero(d < 0)),
        int(np.count_nonzero(d == 0)),
    )


def heuristic_ratio(sample: PairedSample) -> float | Undefined:
    """Points above the identity line divided by points below it.

    On-line points count toward neither side.  A zero below-count makes the
    ratio undefined (reported as such, never as an exception).
    """
    above, below, _ = line_counts(sample)
    if below == 0:
        return Undefined(f"no points below the identity line ({above} above)")
    return above / below


@dataclass(frozen=True)
class ErrorSummary:
    mae: float
    emae: float
    shape: Shape
    heuristic_ratio: float | Undefined
    n_above: int
    n_below: int
    n_on: int


def error_summary(
    sample: PairedSample, scheme: SubrangeScheme, cfg: RankingConfig
) -> ErrorSummary:
    """MAE, eMAE, and the identity-line heuristic in one bundle."""
    above, below, on = line_counts(sample)
    return ErrorSummary(
        mae=mae(sample),
        emae=emae(sample, scheme, cfg),
        shape=cfg.shape,
        heuristic_ratio=heuristic_ratio(sample),
        n_above=above,
        n_below=below,
        n_on=on,
    )

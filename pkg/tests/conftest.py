from pathlib import Path

import numpy as np
import pytest

from ahiagree import ADULT, PairedSample, RankingConfig, parse_pairs

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def synthetic25_path() -> Path:
    return DATA_DIR / "synthetic25.csv"


@pytest.fixture(scope="session")
def synthetic25(synthetic25_path) -> PairedSample:
    return parse_pairs(synthetic25_path.read_text())


@pytest.fixture(scope="session")
def synthetic25_head15(synthetic25) -> PairedSample:
    # tie-free |differences|: exercises the exact Wilcoxon branch
    return PairedSample(
        synthetic25.reference[:15].copy(), synthetic25.measured[:15].copy()
    )


@pytest.fixture(scope="session")
def demo_sample() -> PairedSample:
    import ahiagree

    path = Path(ahiagree.__file__).parent / "data" / "demo.csv"
    return parse_pairs(path.read_text())


@pytest.fixture
def adult_ranking() -> RankingConfig:
    return RankingConfig.for_scheme(ADULT)


def random_sample(rng: np.random.Generator, n: int | None = None) -> PairedSample:
    """A positive-variance random sample for property tests."""
    if n is None:
        n = int(rng.integers(3, 51))
    while True:
        ref = np.round(rng.uniform(0.0, 80.0, n), 3)
        res = np.round(np.abs(ref + rng.normal(0.0, 12.0, n)), 3)
        if len(np.unique(ref)) > 1 and len(np.unique(res)) > 1:
            return PairedSample(ref, res)

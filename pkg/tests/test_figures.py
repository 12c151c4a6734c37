import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ahiagree import (
    RankingConfig,
    Shape,
    analyze,
    bland_altman,
    modified_bland_altman,
    relative_deviation_ba,
)
from ahiagree.figures import (
    render_ba,
    render_histogram,
    render_ranking,
    render_roc,
    render_scatter,
)


def class_count(svg, cls):
    return len(re.findall(f'class="{cls}"', svg))


@pytest.fixture(scope="module")
def demo_bundle(demo_sample):
    return analyze(demo_sample)


ALL_RENDERS = [
    lambda b: render_scatter(b),
    lambda b: render_ba(bland_altman(b.sample)),
    lambda b: render_ba(modified_bland_altman(b.sample)),
    lambda b: render_ba(relative_deviation_ba(b.sample)),
    lambda b: render_ranking(b.ranking),
    lambda b: render_histogram(b),
    lambda b: render_roc(b),
]


@pytest.mark.parametrize("render", ALL_RENDERS)
def test_well_formed_xml(render, demo_bundle):
    svg = render(demo_bundle)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert root.get("width") == "640"
    assert root.get("height") == "480"
    assert root.get("viewBox") == "0 0 640 480"


@pytest.mark.parametrize("render", ALL_RENDERS)
def test_rendering_is_deterministic(render, demo_bundle):
    assert render(demo_bundle) == render(demo_bundle)


class TestScatter:
    def test_markers_and_squares(self, demo_bundle):
        svg = render_scatter(demo_bundle)
        assert class_count(svg, "severity-square") == 4
        assert class_count(svg, "data-point") == demo_bundle.sample.n
        assert class_count(svg, "identity-line") == 1
        assert class_count(svg, "fit-intercept-line") == 1
        assert class_count(svg, "fit-origin-line") == 1

    def test_fit_lines_omitted_when_undefined(self, demo_bundle):
        from ahiagree import PairedSample

        s = PairedSample(np.full(4, 9.0), np.array([4.0, 8.0, 12.0, 20.0]))
        svg = render_scatter(analyze(s))
        assert class_count(svg, "fit-intercept-line") == 0
        assert class_count(svg, "fit-origin-line") == 0
        assert class_count(svg, "data-point") == 4

    def test_axis_labels_use_column_names(self, demo_bundle):
        svg = render_scatter(demo_bundle)
        ref_name, res_name = demo_bundle.sample.column_names
        assert f"Reference ({ref_name})" in svg
        assert f"Measured ({res_name})" in svg


class TestBa:
    def test_classic_lines(self, demo_bundle):
        svg = render_ba(bland_altman(demo_bundle.sample))
        assert class_count(svg, "mean-line") == 1
        assert class_count(svg, "loa-line") == 2
        assert class_count(svg, "ba-fit-line") == 0
        assert class_count(svg, "data-point") == demo_bundle.sample.n

    def test_modified_adds_fit(self, demo_bundle):
        svg = render_ba(modified_bland_altman(demo_bundle.sample))
        assert class_count(svg, "ba-fit-line") == 1
        assert "Reference value" in svg

    def test_relative_axis_label(self, demo_bundle):
        svg = render_ba(relative_deviation_ba(demo_bundle.sample))
        assert "% of pair mean" in svg


class TestRanking:
    def test_marker_counts(self):
        svg = render_ranking(RankingConfig(5, 15, 30))
        assert class_count(svg, "ranking-curve") == 1
        assert class_count(svg, "hotspot-marker") == 3
        assert class_count(svg, "midpoint-marker") == 3
        assert class_count(svg, "hotspot-guide") == 3

    def test_curve_point_count_matches_samples(self):
        svg = render_ranking(RankingConfig(5, 15, 30, shape=Shape.LINEAR), 121)
        polyline = re.search(
            r'<polyline points="([^"]+)"[^>]*class="ranking-curve"', svg
        )
        assert polyline is not None
        assert len(polyline.group(1).split()) == 121


class TestHistogram:
    def test_counts_sum_to_n(self, demo_bundle):
        svg = render_histogram(demo_bundle)
        counts = [int(c) for c in re.findall(r'data-count="(\d+)"', svg)]
        assert sum(counts) == demo_bundle.sample.n

    def test_zero_iqr_falls_back_to_ten_bins(self):
        from ahiagree import PairedSample

        # differences mostly identical: IQR 0 but spread nonzero
        ref = np.array([10.0] * 9 + [20.0])
        res = ref + np.array([1.0] * 9 + [7.0])
        svg = render_histogram(analyze(PairedSample(ref, res)))
        assert class_count(svg, "hist-bar") == 10

    def test_constant_differences_single_bar(self):
        from ahiagree import PairedSample

        ref = np.array([2.0, 7.0, 20.0, 40.0])
        svg = render_histogram(analyze(PairedSample(ref, ref + 3.0)))
        assert class_count(svg, "hist-bar") == 1
        assert 'data-count="4"' in svg


class TestRoc:
    def test_one_polyline_per_evaluated_pair(self, demo_bundle):
        svg = render_roc(demo_bundle)
        expected = demo_bundle.roc.summary.n_pairs_evaluated
        assert class_count(svg, "roc-curve") == expected
        assert class_count(svg, "chance-line") == 1

    def test_legend_lists_aucs(self, demo_bundle):
        svg = render_roc(demo_bundle)
        assert "overall AUC" in svg
        assert svg.count("(AUC") == demo_bundle.roc.summary.n_pairs_evaluated

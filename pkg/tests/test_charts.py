"""SVG chart emission: structure, scaling, and trajectory shape."""

import re

import pytest

from cobotsim import ModelConfig, ModelVariant, emit_svg_chart, run_shift
from cobotsim.dynamics import InteractionOutcome


def records_for(variant, seed=0):
    records, _ = run_shift(ModelConfig(variant=ModelVariant(variant), seed=seed))
    return records


def polyline_points(svg, name):
    match = re.search(rf'class="series-{name}" points="([^"]+)"', svg)
    assert match, f"series {name} missing"
    return [tuple(map(float, p.split(","))) for p in match.group(1).split()]


def test_is_self_contained_svg():
    svg = emit_svg_chart(records_for("v1.1"))
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    # no external assets: the only URL is the SVG namespace itself
    assert svg.count("http") == svg.count("http://www.w3.org/2000/svg")


def test_one_polyline_per_series():
    svg = emit_svg_chart(records_for("v1.1"))
    for name in ("trust", "fatigue", "productivity"):
        assert svg.count(f'class="series-{name}"') == 1


def test_series_subset_selection():
    svg = emit_svg_chart(records_for("v1.1"), series=("trust",))
    assert 'class="series-trust"' in svg
    assert 'class="series-fatigue"' not in svg


def test_empty_and_unknown_series_rejected():
    records = records_for("v1.1")
    with pytest.raises(ValueError):
        emit_svg_chart(records, series=())
    with pytest.raises(ValueError):
        emit_svg_chart(records, series=("speed",))
    with pytest.raises(ValueError):
        emit_svg_chart([])


def test_refined_trust_polyline_saturates():
    # non-decreasing trust means non-increasing pixel y; flat at the top from
    # step 10 onward
    svg = emit_svg_chart(records_for("v1.1"))
    points = polyline_points(svg, "trust")
    ys = [y for _, y in points]
    assert all(b <= a for a, b in zip(ys, ys[1:]))
    assert len(set(ys[9:])) == 1


def test_naive_trust_polyline_collapses():
    svg = emit_svg_chart(records_for("v1.0"))
    points = polyline_points(svg, "trust")
    ys = [y for _, y in points]
    assert all(b >= a for a, b in zip(ys, ys[1:]))
    assert len(set(ys[4:])) == 1  # flat at zero from step 5


def test_severe_turns_marked():
    for seed in range(40):
        records = records_for("v1.3", seed=seed)
        severe = sum(1 for r in records if r.outcome is InteractionOutcome.SEVERE_FAILURE)
        if severe:
            svg = emit_svg_chart(records)
            assert svg.count('class="severe-marker"') == severe
            return
    pytest.fail("no run with a severe failure found")


def test_axis_labels_and_legend_present():
    svg = emit_svg_chart(records_for("v1.1"))
    assert ">step<" in svg
    assert ">trust<" in svg
    assert "items (cumulative)" in svg
    assert "fatigue" in svg

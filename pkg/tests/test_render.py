"""SVG output: determinism, element counts, layout self-check."""

import pytest

from trisections.render import FAMILY_COLORS, render_svg, render_to_file

from conftest import fixture_names, load_fixture


def test_render_is_deterministic():
    d = load_fixture("cp2.trid")
    assert render_svg(d) == render_svg(d)


def test_cp2_counts():
    svg = render_svg(load_fixture("cp2.trid"))
    assert svg.count('class="curve') == 3
    assert svg.count('class="basepoint"') == 2
    for color in FAMILY_COLORS.values():
        assert color in svg


def test_valid_svg_header():
    svg = render_svg(load_fixture("s4_genus0.trid"))
    assert svg.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in svg
    assert svg.rstrip().endswith("</svg>")


@pytest.mark.parametrize("name", fixture_names(".trid"))
def test_every_fixture_renders_without_warnings(name):
    svg = render_svg(load_fixture(name))
    assert "overlap-warning" not in svg


def test_curve_path_count_matches_components():
    d = load_fixture("glued_start.trid")
    svg = render_svg(d)
    want = sum(len(m.components) for m in d.families)
    assert svg.count('class="curve') == want


def test_arcs_render_dashed():
    svg = render_svg(load_fixture("nu_pminus.trid"))
    assert 'class="curve arcs_alpha"' in svg
    assert "stroke-dasharray" in svg


def test_render_to_file_atomic(tmp_path):
    out = tmp_path / "d.svg"
    text = render_to_file(load_fixture("cp2.trid"), str(out))
    assert out.read_text() == text
    assert list(tmp_path.iterdir()) == [out]

import math
import xml.etree.ElementTree as ET

import pytest

from grational.carpets import corner_overlay
from grational.geomkernel import regular_polygon
from grational.render import (
    FIGURES,
    SceneDoc,
    Shape,
    arrangement_doc,
    figure_doc,
    render_svg,
    square_scene_doc,
    tiling_doc,
)
from grational.tilings import assemble_ngon, theorem2_witness_scene

SVG = "{http://www.w3.org/2000/svg}"


def paths(svg_text):
    root = ET.fromstring(svg_text.encode("utf-8"))
    assert root.tag == SVG + "svg"
    return root.findall(SVG + "path")


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figure_golden(name, golden):
    svg = render_svg(figure_doc(name))
    assert svg == render_svg(figure_doc(name))
    paths(svg)
    golden(f"{name}.svg", svg)


def test_unknown_figure():
    with pytest.raises(ValueError):
        figure_doc("fig999")


def test_one_path_per_unit_square():
    doc = square_scene_doc(theorem2_witness_scene(2))
    ps = paths(render_svg(doc))
    # room + 16 room wedges, then 4 carpets with 4 wedges each
    assert len(ps) == 1 + 16 + 4 * (1 + 4)
    assert sum(1 for p in ps if p.get("class") == "tile") == 32


def test_pentagon_overlay_doc_counts():
    ov = corner_overlay(5, math.sqrt(5), 1.0)
    doc = arrangement_doc(ov.arrangement, ov.report)
    assert doc.count("carpet") == 5
    assert doc.count("depth-region", 0) == 6
    assert doc.count("depth-region", 2) == 5
    ps = paths(render_svg(doc))
    assert sum(1 for p in ps if p.get("data-depth") == "2") == 5


def test_regions_match_report():
    ov = corner_overlay(6, math.sqrt(6), 1.0)
    doc = arrangement_doc(ov.arrangement, ov.report)
    drawn = sorted((s.depth, round(s.polygon.area, 9)) for s in doc.shapes if s.role == "depth-region")
    report = sorted((r.depth, round(r.area, 9)) for r in ov.report.regions)
    assert drawn == report


def test_empty_doc():
    svg = render_svg(SceneDoc())
    assert "empty viewport" in svg
    assert paths(svg) == []


def test_y_axis_flipped():
    tri = regular_polygon(3, 1.0, (0, 10), math.pi / 2)
    d = paths(render_svg(tiling_doc([tri])))[0].get("d")
    nums = [float(t) for t in d.split() if t not in ("M", "L", "Z")]
    assert all(y < -9 for y in nums[1::2])


def test_labels_and_palette():
    ov = corner_overlay(3, math.sqrt(3), 1.0)
    doc = arrangement_doc(ov.arrangement, ov.report, title="a < b & c")
    svg = render_svg(doc, depth_palette={0: "#000001", 2: "#000002"}, show_labels=True)
    root = ET.fromstring(svg)
    assert root.find(SVG + "title").text == "a < b & c"
    assert root.findall(SVG + "text")
    assert "#000002" in svg
    # depth 1 falls back to the highest palette entry
    assert all(p.get("fill") == "#000002" for p in paths(svg) if p.get("data-depth") == "1")


def test_number_format_is_stable():
    doc = tiling_doc([regular_polygon(7, 1 / 3, (1e-15, 2 / 3), 0.1)])
    svg = render_svg(doc)
    assert "e-15" not in svg and "-0 " not in svg
    for p in paths(svg):
        for tok in p.get("d").split():
            if tok not in "MLZ":
                assert len(tok.lstrip("-").replace(".", "").lstrip("0")) <= 9


def test_shape_validation():
    with pytest.raises(ValueError):
        Shape("bogus", regular_polygon(3, 1.0))


def test_ngon_tiling_doc():
    asm = assemble_ngon(5, 2)
    doc = tiling_doc(asm.unit_wedges, asm.polygon)
    assert doc.count("tile") == 20 and doc.count("room") == 1

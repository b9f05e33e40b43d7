"""Deterministic SVG output for arrangements, overlays and tilings.

Numbers are written with 9 significant digits and no locale dependence, and
shapes are emitted in document order, so identical documents always give
identical bytes.  Scene y grows upward; it is flipped on output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .carpets import corner_overlay, tennenbaum_arrangement
from .geomkernel import Arrangement, CoverageReport, Polygon, coverage_depth
from .tilings import NgonAssembly, SquareScene, theorem2_witness_scene, tile_triangle

__all__ = [
    "DEFAULT_PALETTE",
    "FIGURES",
    "SceneDoc",
    "Shape",
    "arrangement_doc",
    "figure_doc",
    "render_svg",
    "square_scene_doc",
    "tiling_doc",
]

ROLES = ("room", "carpet", "depth-region", "tile")

DEFAULT_PALETTE: Dict[int, str] = {
    0: "#ffffff",
    1: "#e0e0e0",
    2: "#f4a259",
    3: "#d1495b",
    4: "#8e2c48",
}

MARGIN = 0.05


@dataclass(frozen=True)
class Shape:
    role: str
    polygon: Polygon
    depth: Optional[int] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown shape role {self.role!r}")
        if not all(math.isfinite(c) for p in self.polygon.vertices for c in p):
            raise ValueError("shape has non-finite coordinates")


@dataclass
class SceneDoc:
    shapes: List[Shape] = field(default_factory=list)
    title: str = ""
    style: Dict[str, str] = field(default_factory=dict)

    def add(self, role: str, polygon: Polygon, depth: Optional[int] = None, label: Optional[str] = None):
        self.shapes.append(Shape(role, polygon, depth, label))
        return self

    @property
    def viewport(self) -> Optional[Tuple[float, float, float, float]]:
        """``(min_x, min_y, max_x, max_y)`` in scene coordinates, or None if empty."""
        pts = [p for s in self.shapes for p in s.polygon.vertices]
        if not pts:
            return None
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def count(self, role: str, depth: Optional[int] = None) -> int:
        return sum(1 for s in self.shapes if s.role == role and (depth is None or s.depth == depth))


def _fmt(x: float, snap: float = 0.0) -> str:
    if abs(x) <= snap:
        x = 0.0
    s = f"{x:.9g}"
    return "0" if s in ("-0", "0") else s


def _path_data(poly: Polygon, snap: float) -> str:
    parts = []
    for ring in (poly.vertices,) + poly.holes:
        pts = [f"{_fmt(x, snap)} {_fmt(-y, snap)}" for x, y in ring]
        parts.append("M " + " L ".join(pts) + " Z")
    return " ".join(parts)


def _depth_color(depth: int, palette: Dict[int, str]) -> str:
    if depth in palette:
        return palette[depth]
    return palette[max(palette)]


def render_svg(
    doc: SceneDoc,
    depth_palette: Optional[Dict[int, str]] = None,
    stroke_width: Optional[float] = None,
    show_labels: bool = False,
) -> str:
    """Render ``doc`` as an SVG 1.1 document; one ``<path>`` per shape."""
    palette = dict(DEFAULT_PALETTE if depth_palette is None else depth_palette)
    head = '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    vp = doc.viewport
    if vp is None:
        return (
            head
            + '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1 1" '
            'width="1" height="1">\n<!-- empty viewport -->\n</svg>\n'
        )
    min_x, min_y, max_x, max_y = vp
    span = max(max_x - min_x, max_y - min_y, 1e-12)
    pad = MARGIN * span
    snap = 1e-12 * span
    width = max_x - min_x + 2 * pad
    height = max_y - min_y + 2 * pad
    sw = stroke_width if stroke_width is not None else span / 400.0
    f = lambda v: _fmt(v, snap)  # noqa: E731

    lines = [
        head.rstrip("\n"),
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{f(min_x - pad)} {f(-max_y - pad)} {f(width)} {f(height)}" '
        f'width="{f(width)}" height="{f(height)}">',
    ]
    if doc.title:
        lines.append(f"<title>{escape(doc.title)}</title>")
    for s in doc.shapes:
        attrs = [f'class="{s.role}"']
        if s.role == "room":
            style = f'fill="{palette.get(0, "#ffffff")}" stroke="#000000" stroke-width="{f(2 * sw)}"'
        elif s.role == "carpet":
            style = f'fill="none" stroke="#1f4e79" stroke-width="{f(sw)}"'
        elif s.role == "depth-region":
            attrs.append(f'data-depth="{s.depth}"')
            style = (
                f'fill="{_depth_color(s.depth or 0, palette)}" '
                f'stroke="#555555" stroke-width="{f(sw / 2)}"'
            )
        else:
            fill = doc.style.get("tile_fill", "#f2e6c9")
            style = f'fill="{fill}" stroke="#7a6a4f" stroke-width="{f(sw / 2)}"'
        attrs.append(f'd="{_path_data(s.polygon, snap)}"')
        attrs.append(style)
        attrs.append('fill-rule="evenodd"')
        lines.append("<path " + " ".join(attrs) + "/>")
    if show_labels:
        for s in doc.shapes:
            if s.label:
                c = s.polygon.centroid()
                lines.append(
                    f'<text x="{f(c.x)}" y="{f(-c.y)}" font-size="{f(span / 40)}" '
                    f'text-anchor="middle">{escape(s.label)}</text>'
                )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def arrangement_doc(
    arr: Arrangement, report: Optional[CoverageReport] = None, title: str = ""
) -> SceneDoc:
    """Room, depth regions (one per report region, depth 1 included) and carpet outlines."""
    if report is None:
        report = coverage_depth(arr)
    doc = SceneDoc(title=title)
    doc.add("room", arr.room)
    for r in report.regions:
        doc.add("depth-region", r.polygon, r.depth, f"{r.depth}")
    for i, c in enumerate(arr.carpets):
        doc.add("carpet", c, label=f"carpet {i + 1}")
    return doc


def tiling_doc(tiles: Sequence[Polygon], outline: Optional[Polygon] = None, title: str = "") -> SceneDoc:
    doc = SceneDoc(title=title)
    if outline is not None:
        doc.add("room", outline)
    for t in tiles:
        doc.add("tile", t)
    return doc


def _assembly_shapes(doc: SceneDoc, asm: NgonAssembly, role: str):
    doc.add(role, asm.polygon)
    for t in asm.unit_wedges:
        doc.add("tile", t)


def square_scene_doc(scene: SquareScene, title: str = "") -> SceneDoc:
    """Room n^2-gon and its n^2 carpets, each drawn with its unit wedges."""
    doc = SceneDoc(title=title, style={"tile_fill": "#f7f7f7"})
    _assembly_shapes(doc, scene.room, "room")
    for c in scene.carpets:
        _assembly_shapes(doc, c, "carpet")
    return doc


def _overlay_doc(n: int, title: str) -> SceneDoc:
    ov = corner_overlay(n, math.sqrt(n), 1.0)
    return arrangement_doc(ov.arrangement, ov.report, title)


def _triangle_doc(k: int, n: int, title: str) -> SceneDoc:
    tiles = [t.polygon() for t in tile_triangle(k, 2 * math.pi / n)]
    return tiling_doc(tiles, title=title)


FIGURES = {
    "fig2": lambda: square_scene_doc(theorem2_witness_scene(2), "A 2-by-2 square and four unit squares"),
    "fig7a": lambda: arrangement_doc(
        tennenbaum_arrangement(math.sqrt(2), 1.0), title="Two square carpets in opposite corners"
    ),
    "fig9": lambda: _overlay_doc(3, "Three triangular carpets in a triangular room"),
    "fig15": lambda: _overlay_doc(5, "Five pentagonal carpets in a pentagonal room"),
    "fig34": lambda: _overlay_doc(6, "Six hexagonal carpets in a hexagonal room"),
    "fig41_8a": lambda: _overlay_doc(7, "Seven heptagonal carpets"),
    "fig41_8b": lambda: _overlay_doc(8, "Eight octagonal carpets"),
    "fig52": lambda: square_scene_doc(
        theorem2_witness_scene(3), "A nonagon of side 3 and nine unit nonagons"
    ),
    "fig57_8": lambda: _triangle_doc(4, 9, "Sixteen triangles tiled in rows of 1, 3, 5, 7"),
}


def figure_doc(name: str) -> SceneDoc:
    try:
        return FIGURES[name]()
    except KeyError:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(sorted(FIGURES))}")

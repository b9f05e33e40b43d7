"""Floating-point polygon kernel for rooms and carpets.

Coordinates are doubles; exact arithmetic lives in :mod:`grational.numerics`.
Boolean operations and the edge arrangement are delegated to shapely/GEOS
with snap rounding on a fine grid, so shared vertices and collinear edges
(which the corner overlays produce on purpose) do not leave slivers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import shapely
from shapely.geometry import LinearRing, LineString
from shapely.geometry import Point as _SPoint
from shapely.geometry import Polygon as _SPolygon
from shapely.geometry.polygon import orient

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-9

__all__ = [
    "Arrangement",
    "BooleanResult",
    "CoverageReport",
    "DEFAULT_EPS",
    "Face",
    "GeometryError",
    "Point",
    "Polygon",
    "boolean_op",
    "coverage_depth",
    "max_pairwise_overlap",
    "point_in_polygon",
    "polygon_area",
    "regular_polygon",
    "union_area",
]


class GeometryError(ValueError):
    """Invalid polygon or arrangement."""


class Point(NamedTuple):
    x: float
    y: float


def _signed_area(pts: Sequence[Tuple[float, float]]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return 0.5 * s


def _clean_ring(coords) -> Tuple[Point, ...]:
    pts = [Point(float(x), float(y)) for x, y in coords]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return tuple(pts)


class Polygon:
    """Simple counterclockwise polygon, optionally with holes.

    Holes are stored clockwise.  Construction validates the ring: at least
    three finite vertices, positive signed area, no self intersections.
    """

    __slots__ = ("vertices", "holes", "_shape")

    def __init__(self, vertices: Iterable, holes: Iterable = (), validate: bool = True):
        self.vertices = _clean_ring(vertices)
        self.holes = tuple(_clean_ring(h) for h in holes)
        self._shape = None
        if validate:
            self._validate()

    def _validate(self):
        v = self.vertices
        if len(v) < 3:
            raise GeometryError(f"polygon needs at least 3 vertices, got {len(v)}")
        if not all(math.isfinite(c) for p in v for c in p):
            raise GeometryError("polygon has non-finite coordinates")
        a = _signed_area(v)
        if a == 0.0:
            raise GeometryError("degenerate polygon (zero area)")
        if a < 0:
            raise GeometryError("polygon must be counterclockwise")
        if not LinearRing(v).is_simple:
            raise GeometryError("polygon is not simple (self-intersecting)")

    @classmethod
    def from_shapely(cls, geom: _SPolygon) -> "Polygon":
        geom = orient(geom, sign=1.0)
        return cls(
            geom.exterior.coords,
            [h.coords for h in geom.interiors],
            validate=False,
        )

    def to_shapely(self) -> _SPolygon:
        if self._shape is None:
            self._shape = _SPolygon(self.vertices, self.holes)
        return self._shape

    @property
    def area(self) -> float:
        return _signed_area(self.vertices) - sum(abs(_signed_area(h)) for h in self.holes)

    @property
    def perimeter(self) -> float:
        return sum(math.dist(p, q) for p, q in self.edges())

    def edges(self) -> List[Tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def edge_lengths(self) -> List[float]:
        return [math.dist(p, q) for p, q in self.edges()]

    def centroid(self) -> Point:
        c = self.to_shapely().centroid
        return Point(c.x, c.y)

    def corners(self, tol: float = 1e-7) -> Tuple[Point, ...]:
        """Outer vertices with (near-)collinear ones removed."""
        pts = list(self.vertices)
        changed = True
        while changed and len(pts) > 3:
            changed = False
            for i in range(len(pts)):
                p, q, r = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
                cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x)
                scale = math.dist(p, q) * math.dist(q, r)
                if scale == 0.0 or abs(cross) <= tol * scale:
                    del pts[i]
                    changed = True
                    break
        return tuple(pts)

    def transformed(self, fn) -> "Polygon":
        """Apply a point map; ``fn`` must preserve orientation."""
        return Polygon(
            [fn(p) for p in self.vertices],
            [[fn(p) for p in h] for h in self.holes],
            validate=False,
        )

    def translated(self, dx: float, dy: float) -> "Polygon":
        return self.transformed(lambda p: Point(p.x + dx, p.y + dy))

    def rotated(self, angle: float, about: Tuple[float, float] = (0.0, 0.0)) -> "Polygon":
        c, s = math.cos(angle), math.sin(angle)
        ox, oy = about

        def rot(p):
            x, y = p.x - ox, p.y - oy
            return Point(ox + c * x - s * y, oy + s * x + c * y)

        return self.transformed(rot)

    def scaled(self, factor: float, about: Tuple[float, float] = (0.0, 0.0)) -> "Polygon":
        if factor <= 0:
            raise GeometryError("scale factor must be positive")
        ox, oy = about
        return self.transformed(
            lambda p: Point(ox + factor * (p.x - ox), oy + factor * (p.y - oy))
        )

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        extra = f", holes={len(self.holes)}" if self.holes else ""
        return f"Polygon({len(self.vertices)} vertices, area={self.area:.9g}{extra})"


def regular_polygon(
    n: int,
    side: float,
    center: Tuple[float, float] = (0.0, 0.0),
    rotation: float = 0.0,
) -> Polygon:
    """Regular ``n``-gon with vertex ``i`` at angle ``rotation + 2*pi*i/n``."""
    if not isinstance(n, int) or n < 3:
        raise GeometryError(f"a regular polygon needs n >= 3 sides, got {n!r}")
    if not side > 0 or not math.isfinite(side):
        raise GeometryError(f"side must be positive and finite, got {side!r}")
    r = side / (2.0 * math.sin(math.pi / n))
    cx, cy = center
    pts = [
        Point(
            cx + r * math.cos(rotation + 2.0 * math.pi * i / n),
            cy + r * math.sin(rotation + 2.0 * math.pi * i / n),
        )
        for i in range(n)
    ]
    return Polygon(pts, validate=False)


def polygon_area(p) -> float:
    """Shoelace area of a valid polygon (holes subtracted).

    Raw vertex sequences are validated first, so clockwise or degenerate
    input raises :class:`GeometryError`.
    """
    if not isinstance(p, Polygon):
        p = Polygon(p)
    return p.area


def point_in_polygon(pt: Tuple[float, float], poly: Polygon) -> bool:
    """Even-odd ray casting test against the outer ring and holes."""
    x, y = pt

    def inside(ring) -> bool:
        res = False
        n = len(ring)
        for i in range(n):
            x1, y1 = ring[i]
            x2, y2 = ring[(i + 1) % n]
            if (y1 > y) != (y2 > y):
                xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
                if xi > x:
                    res = not res
        return res

    return inside(poly.vertices) and not any(inside(h) for h in poly.holes)


def _distance_to_boundary(pt, poly: Polygon) -> float:
    return poly.to_shapely().exterior.distance(_SPoint(pt))


def _polygons_of(geom) -> List[_SPolygon]:
    if geom.is_empty:
        return []
    if isinstance(geom, _SPolygon):
        return [geom]
    if hasattr(geom, "geoms"):
        out = []
        for g in geom.geoms:
            out.extend(_polygons_of(g))
        return out
    return []


def _canonical_key(p: Polygon):
    c = p.centroid()
    return (round(c.y, 9), round(c.x, 9), round(p.area, 12))


def _rotate_to_min(p: Polygon) -> Polygon:
    """Start the outer ring at its lexicographically smallest vertex."""
    v = p.vertices
    i = min(range(len(v)), key=lambda k: (round(v[k].x, 12), round(v[k].y, 12)))
    return Polygon(v[i:] + v[:i], p.holes, validate=False)


@dataclass
class BooleanResult:
    polygons: List[Polygon]
    dropped: List[float] = field(default_factory=list)

    @property
    def area(self) -> float:
        return sum(p.area for p in self.polygons)

    def __len__(self):
        return len(self.polygons)

    def __iter__(self):
        return iter(self.polygons)


_BOOLEAN_OPS = {
    "intersection": shapely.intersection,
    "union": shapely.union,
    "difference": shapely.difference,
}


def boolean_op(op: str, p: Polygon, q: Polygon, eps: float = DEFAULT_EPS) -> BooleanResult:
    """Intersection, union or difference of two simple polygons.

    Vertices of ``q`` within ``eps`` of ``p``'s vertices are snapped onto
    them first.  Output pieces with area below ``eps**2`` are discarded and
    their areas reported in ``dropped``.
    """
    try:
        fn = _BOOLEAN_OPS[op]
    except KeyError:
        raise GeometryError(f"unknown boolean op {op!r}")
    sp, sq = p.to_shapely(), q.to_shapely()
    sq = shapely.snap(sq, sp, eps)
    geom = fn(sp, sq, grid_size=eps * 1e-3)
    kept, dropped = [], []
    for g in _polygons_of(geom):
        if g.area < eps * eps:
            dropped.append(g.area)
            continue
        kept.append(_rotate_to_min(Polygon.from_shapely(g)))
    if dropped:
        log.debug("boolean_op(%s): dropped %d sliver(s)", op, len(dropped))
    kept.sort(key=_canonical_key)
    return BooleanResult(kept, dropped)


def union_area(polys: Sequence[Polygon], eps: float = DEFAULT_EPS) -> float:
    return shapely.unary_union([p.to_shapely() for p in polys], grid_size=eps * 1e-3).area


def max_pairwise_overlap(polys: Sequence[Polygon]) -> float:
    """Largest intersection area over all pairs (bounding-box filtered)."""
    shapes = [p.to_shapely() for p in polys]
    tree = shapely.STRtree(shapes)
    left, right = tree.query(shapes, predicate="intersects")
    worst = 0.0
    for i, j in zip(left, right):
        if i < j:
            worst = max(worst, shapes[i].intersection(shapes[j]).area)
    return worst


@dataclass(frozen=True)
class Arrangement:
    """A room and the carpets lying in it."""

    room: Polygon
    carpets: Tuple[Polygon, ...]
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        object.__setattr__(self, "carpets", tuple(self.carpets))
        for idx, c in enumerate(self.carpets):
            for v in c.vertices:
                if not point_in_polygon(v, self.room) and (
                    _distance_to_boundary(v, self.room) > self.eps
                ):
                    raise GeometryError(
                        f"carpet {idx} vertex ({v.x:.6g}, {v.y:.6g}) lies outside the room"
                    )

    @property
    def room_area(self) -> float:
        return self.room.area

    @property
    def carpet_area(self) -> float:
        return sum(c.area for c in self.carpets)


@dataclass(frozen=True)
class Face:
    """A maximal region of constant coverage depth."""

    depth: int
    polygon: Polygon

    @property
    def area(self) -> float:
        return self.polygon.area


@dataclass
class CoverageReport:
    room_area: float
    carpet_areas: List[float]
    area_by_depth: Dict[int, float]
    faces: List[Face]
    regions: List[Face]
    dropped: List[float] = field(default_factory=list)

    @property
    def uncovered(self) -> float:
        return self.area_by_depth.get(0, 0.0)

    @property
    def excess(self) -> float:
        return sum((k - 1) * a for k, a in self.area_by_depth.items() if k >= 2)

    @property
    def imbalance(self) -> float:
        """``room_area - sum(carpet areas)``."""
        return self.room_area - sum(self.carpet_areas)

    @property
    def residual(self) -> float:
        return self.uncovered - self.excess - self.imbalance

    def regions_at(self, depth: int) -> List[Face]:
        return [r for r in self.regions if r.depth == depth]

    def census(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for r in self.regions:
            out[r.depth] = out.get(r.depth, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {
            "room_area": self.room_area,
            "carpet_area": sum(self.carpet_areas),
            "area_by_depth": {str(k): v for k, v in sorted(self.area_by_depth.items())},
            "regions_by_depth": {str(k): v for k, v in self.census().items()},
            "uncovered": self.uncovered,
            "excess": self.excess,
            "imbalance": self.imbalance,
            "residual": self.residual,
            "dropped_slivers": len(self.dropped),
        }


def coverage_depth(arr: Arrangement) -> CoverageReport:
    """Partition the room into faces by the number of carpets covering them.

    All boundaries are noded into a planar arrangement and polygonized; each
    face is classified by point-in-polygon tests at an interior sample
    point.  Adjacent faces of equal depth are merged into ``regions``.
    """
    eps = arr.eps
    grid = eps * 1e-3
    rings = [LineString(arr.room.vertices + arr.room.vertices[:1])]
    rings += [LineString(c.vertices + c.vertices[:1]) for c in arr.carpets]
    noded = shapely.unary_union(rings, grid_size=grid)
    polys = _polygons_of(shapely.polygonize(_lines_of(noded)))

    faces: List[Face] = []
    dropped: List[float] = []
    for g in polys:
        if g.area < eps * eps:
            dropped.append(g.area)
            continue
        rp = g.point_on_surface()
        pt = (rp.x, rp.y)
        if not point_in_polygon(pt, arr.room):
            dropped.append(g.area)
            continue
        depth = sum(point_in_polygon(pt, c) for c in arr.carpets)
        faces.append(Face(depth, _rotate_to_min(Polygon.from_shapely(g))))
    if dropped:
        log.debug("coverage_depth: dropped %d sliver face(s)", len(dropped))

    area_by_depth: Dict[int, float] = {}
    for f in faces:
        area_by_depth[f.depth] = area_by_depth.get(f.depth, 0.0) + f.area

    regions: List[Face] = []
    for depth in sorted(area_by_depth):
        merged = shapely.unary_union(
            [f.polygon.to_shapely() for f in faces if f.depth == depth], grid_size=grid
        )
        for g in _polygons_of(merged):
            pieces = _split_hairlines(g, eps)
            if len(pieces) > 1:
                dropped.append(g.area - sum(q.area for q in pieces))
            for piece in pieces:
                if piece.area < eps * eps:
                    dropped.append(piece.area)
                    continue
                regions.append(Face(depth, _rotate_to_min(Polygon.from_shapely(piece))))
    faces.sort(key=lambda f: (f.depth,) + _canonical_key(f.polygon))
    regions.sort(key=lambda f: (f.depth,) + _canonical_key(f.polygon))

    return CoverageReport(
        room_area=arr.room_area,
        carpet_areas=[c.area for c in arr.carpets],
        area_by_depth=dict(sorted(area_by_depth.items())),
        faces=faces,
        regions=regions,
        dropped=dropped,
    )


def _split_hairlines(g, eps: float) -> List:
    """Split ``g`` where its parts are joined only by necks thinner than ``eps``.

    Boundaries that should coincide but differ by less than ``eps`` leave
    such necks.  ``g`` is returned untouched unless shrinking it by ``eps``
    leaves more than one component.
    """
    core = _polygons_of(g.buffer(-eps, join_style="mitre", mitre_limit=1e6))
    if len(core) < 2:
        return [g]
    pieces = []
    for c in core:
        grown = c.buffer(2 * eps, join_style="mitre", mitre_limit=1e6)
        pieces += _polygons_of(shapely.intersection(g, grown))
    return pieces


def _lines_of(geom) -> List:
    if geom.is_empty:
        return []
    if hasattr(geom, "geoms"):
        return list(geom.geoms)
    return [geom]

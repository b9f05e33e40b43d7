"""Triangle row tilings and regular polygons assembled from wedges.

``k**2`` congruent isosceles triangles tile a similar triangle ``k`` times
larger: row ``r`` (counted from the apex) holds ``2r - 1`` triangles,
alternately pointing up and down.  A regular n-gon splits into ``n`` wedges
with apex angle ``2*pi/n`` at its center, so a nice n-gon of side ``s``
consists of ``n * s**2`` unit wedges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .geomkernel import Point, Polygon, regular_polygon
from .gratcore import DomainError, is_grational, verify_witness

__all__ = [
    "NgonAssembly",
    "RowTilingReport",
    "SquareScene",
    "TrianglePlacement",
    "UnitTriangle",
    "assemble_ngon",
    "parallelogram_double",
    "row_accounting",
    "row_tile",
    "theorem2_witness_scene",
    "tile_triangle",
]


@dataclass(frozen=True)
class UnitTriangle:
    """Isosceles triangle with the given base and apex angle."""

    apex_angle: float
    base: float = 1.0

    def __post_init__(self):
        if not 0 < self.apex_angle < math.pi:
            raise ValueError(f"apex angle must lie in (0, pi), got {self.apex_angle!r}")
        if not self.base > 0:
            raise ValueError("base must be positive")

    @classmethod
    def for_ngon(cls, n: int, base: float = 1.0) -> "UnitTriangle":
        return cls(2.0 * math.pi / n, base)

    @property
    def height(self) -> float:
        return self.base / (2.0 * math.tan(self.apex_angle / 2.0))

    @property
    def area(self) -> float:
        return 0.5 * self.base * self.height


@dataclass(frozen=True)
class TrianglePlacement:
    """One small triangle of a row tiling.

    ``vertices`` are counterclockwise in the tiling's own frame: apex of
    the big triangle at the origin, rows stacked downward.
    """

    row: int
    col: int
    orientation: str  # "up" or "down"
    vertices: Tuple[Point, Point, Point]

    def polygon(self) -> Polygon:
        return Polygon(self.vertices, validate=False)


def tile_triangle(k: int, apex_angle: float, base: float = 1.0) -> List[TrianglePlacement]:
    """Row tiling of ``k**2`` isosceles triangles into one ``k`` times larger.

    Odd columns point up (apex toward the big apex), even columns down.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    h = UnitTriangle(apex_angle, base).height
    out = []
    for r in range(1, k + 1):
        top, bot = -(r - 1) * h, -r * h
        for col in range(1, 2 * r):
            j = (col - 1) // 2
            if col % 2:
                x0 = (-r / 2 + j) * base
                verts = (Point(x0, bot), Point(x0 + base, bot), Point(x0 + base / 2, top))
                out.append(TrianglePlacement(r, col, "up", verts))
            else:
                x0 = (-(r - 1) / 2 + j) * base
                verts = (Point(x0 + base / 2, bot), Point(x0 + base, top), Point(x0, top))
                out.append(TrianglePlacement(r, col, "down", verts))
    return out


def _place(p: Point, angle: float, dx: float = 0.0, dy: float = 0.0) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return Point(dx + c * p.x - s * p.y, dy + s * p.x + c * p.y)


@dataclass
class NgonAssembly:
    n: int
    side: int
    polygon: Polygon
    wedges: List[Polygon]
    unit_wedges: List[Polygon] = field(repr=False, default_factory=list)

    @property
    def wedge_count(self) -> int:
        return len(self.unit_wedges)


def assemble_ngon(
    n: int, side: int, center: Tuple[float, float] = (0.0, 0.0)
) -> NgonAssembly:
    """Nice n-gon of the given side built from ``n`` wedges of ``side**2`` unit wedges.

    Wedges have their apex at the polygon center and base on the boundary.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if isinstance(side, bool) or not isinstance(side, int) or side < 1:
        raise DomainError(f"side must be a positive integer, got {side!r}")
    apex = 2.0 * math.pi / n
    cx, cy = center
    # Tiling frame has the base pointing down (direction -pi/2); wedge i's
    # base is the edge between polygon vertices i and i+1.
    rot = -math.pi / 2 - math.pi / n
    poly = regular_polygon(n, float(side), center, rot)
    tiles = tile_triangle(side, apex)
    wedges, units = [], []
    for i in range(n):
        mid = rot + apex * (i + 0.5)
        turn = mid + math.pi / 2
        v = poly.vertices
        wedges.append(Polygon([Point(cx, cy), v[i], v[(i + 1) % n]], validate=False))
        for t in tiles:
            units.append(
                Polygon([_place(p, turn, cx, cy) for p in t.vertices], validate=False)
            )
    return NgonAssembly(n, side, poly, wedges, units)


@dataclass
class SquareScene:
    """A nice ``m``-gon room against ``m`` nice ``m``-gon carpets, ``m = n**2``."""

    n: int
    room: NgonAssembly
    carpets: List[NgonAssembly]

    @property
    def room_wedges(self) -> int:
        return self.room.wedge_count

    @property
    def carpet_wedges(self) -> int:
        return sum(c.wedge_count for c in self.carpets)

    @property
    def room_area(self) -> float:
        return self.room.polygon.area

    @property
    def carpet_area(self) -> float:
        return sum(c.polygon.area for c in self.carpets)

    @property
    def balanced(self) -> bool:
        return (
            self.room_wedges == self.carpet_wedges
            and abs(self.room_area - self.carpet_area) <= 1e-9 * self.room_area
        )


def theorem2_witness_scene(n: int) -> SquareScene:
    """Show that ``n**2`` is grational by counting unit wedges.

    The room is a nice ``n**2``-gon of side ``n`` (``n**4`` unit wedges); the
    carpets are ``n**2`` nice ``n**2``-gons of side 1, laid out in a grid to
    the right of the room for drawing.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    m = n * n
    room = assemble_ngon(m, n)
    r_room = n / (2 * math.sin(math.pi / m))
    r_unit = 1 / (2 * math.sin(math.pi / m))
    pitch = 2 * r_unit * 1.1
    x0 = r_room + pitch
    y0 = (n - 1) * pitch / 2
    carpets = [
        assemble_ngon(m, 1, (x0 + (i % n) * pitch, y0 - (i // n) * pitch))
        for i in range(m)
    ]
    scene = SquareScene(n, room, carpets)
    if not scene.balanced:
        raise AssertionError(f"wedge/area balance failed for n={n}")
    return scene


@dataclass(frozen=True)
class RowTilingReport:
    """Row-by-row placement of carpet triangles (base ``b``) in a room triangle (base ``a``).

    ``a = (k + lam) * b`` with ``0 <= lam < 1``.  When ``lam != 0`` the rows
    leave a strip of ``strip_rows`` unit-triangle rows, backfilled with
    ``backfill_units`` unit triangles.
    """

    n: int
    a: int
    b: int
    k: int
    lam: Fraction
    carpets_per_row: Tuple[int, ...]
    total_carpets: int
    strip_rows: int
    backfill_units: int
    contradiction: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "k": self.k,
            "lambda": str(self.lam),
            "rows": list(self.carpets_per_row),
            "total": self.total_carpets,
            "strip_rows": self.strip_rows,
            "backfill_units": self.backfill_units,
            "contradiction": self.contradiction,
        }


def row_accounting(n: int, a: int, b: int) -> RowTilingReport:
    """Row accounting for any pair, witness or not.

    Full carpet rows use ``k = a // b`` rows of ``1, 3, ..., 2k-1`` carpets;
    everything else is counted in unit triangles: ``k**2 * b**2`` units sit
    in whole carpets and the remaining ``a**2 - (k*b)**2`` fill the strip.
    """
    if a < 1 or b < 1:
        raise DomainError("a and b must be positive integers")
    k = a // b
    lam = Fraction(a, b) - k
    rows = tuple(2 * r - 1 for r in range(1, k + 1))
    total = sum(rows)
    backfill = a * a - (k * b) ** 2
    if total * b * b + backfill != a * a:
        raise AssertionError("unit-triangle count does not add up to a**2")
    return RowTilingReport(
        n=n,
        a=a,
        b=b,
        k=k,
        lam=lam,
        carpets_per_row=rows,
        total_carpets=total,
        strip_rows=a - k * b,
        backfill_units=backfill,
        contradiction=lam != 0,
    )


def row_tile(n: int, a: int, b: int) -> RowTilingReport:
    """Row tiling of a witness ``(a, b)`` for ``n``.

    For a genuine witness ``a/b`` is an integer ``k``, the carpets fill
    ``k`` rows exactly and their count ``k**2`` equals ``n``.
    """
    if not verify_witness(n, a, b):
        raise DomainError(f"({a}, {b}) is not a witness for n={n}: a^2 != n*b^2")
    rep = row_accounting(n, a, b)
    if rep.lam == 0:
        if rep.total_carpets != n or not is_grational(n).grational:
            raise AssertionError(f"row tiling of n={n} gave {rep.total_carpets} carpets")
    return rep


def parallelogram_double(k: int) -> int:
    """Carpets in two row-tiled rooms glued into a parallelogram.

    Row ``r`` of one room (``2r - 1`` carpets) pairs with row ``k + 1 - r``
    of the reflected copy, so every parallelogram row holds ``2k`` carpets.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    rows = [(2 * r - 1) + (2 * (k + 1 - r) - 1) for r in range(1, k + 1)]
    if any(w != 2 * k for w in rows):
        raise AssertionError("parallelogram row width is not 2k")
    return len(rows) * rows[0]

"""Carpet overlays: Tennenbaum's squares and the corner overlays for n-gons.

A corner overlay puts ``n`` carpets (regular n-gons of side ``b``) into a
room (regular n-gon of side ``a``), one at each room vertex with its two
edges running along the room's edges there.  That carpet is the room
shrunk by ``b/a`` about the vertex.  With ``a = sqrt(n) * b`` the carpets'
total area equals the room's, so uncovered area equals doubly-covered area.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .geomkernel import (
    DEFAULT_EPS,
    Arrangement,
    CoverageReport,
    Face,
    GeometryError,
    Point,
    Polygon,
    coverage_depth,
)
from .numerics import QuadraticNumber
from .scene import RegularPlacement, Scene

__all__ = [
    "EXPECTED_CENSUS",
    "HexagonReport",
    "OverlayCheck",
    "OverlayScene",
    "PentagonDissection",
    "PlacementError",
    "RegionInfo",
    "congruent",
    "corner_overlay",
    "corner_overlay_placements",
    "hexagon_overlay_report",
    "overlay_identity_check",
    "pentagon_dissection",
    "regular_area",
    "rotation_invariant",
    "tennenbaum_arrangement",
    "tennenbaum_scene",
]


class PlacementError(GeometryError):
    """Carpets cannot be placed as requested."""


def regular_area(n: int, side: float) -> float:
    """Area of a regular n-gon: ``n/4 * side**2 * cot(pi/n)``."""
    return n * side * side / (4.0 * math.tan(math.pi / n))


def tennenbaum_scene(room_side: float, carpet_side: float) -> Scene:
    if not 0 < carpet_side < room_side < 2 * carpet_side:
        raise PlacementError(
            "need 0 < carpet_side < room_side < 2*carpet_side so the two carpets "
            f"overlap; got room={room_side!r}, carpet={carpet_side!r}"
        )
    # rotation pi/4 makes an axis-aligned square; centers chosen so the
    # carpets sit in the lower-left and upper-right corners of [0, r]^2.
    r, c = float(room_side), float(carpet_side)
    rot = math.pi / 4
    room = RegularPlacement(4, r, (r / 2, r / 2), rot)
    lo = RegularPlacement(4, c, (c / 2, c / 2), rot)
    hi = RegularPlacement(4, c, (r - c / 2, r - c / 2), rot)
    return Scene(room, (lo, hi))


def tennenbaum_arrangement(room_side: float, carpet_side: float) -> Arrangement:
    """Square room with two equal square carpets pushed into opposite corners.

    The overlap is a square of side ``2c - r`` and the two uncovered corners
    are squares of side ``r - c``.
    """
    return tennenbaum_scene(room_side, carpet_side).arrangement()


@dataclass(frozen=True)
class RegionInfo:
    depth: int
    area: float
    corners: int
    edge_lengths: Tuple[float, ...]
    centroid: Point

    @classmethod
    def of(cls, face: Face, tol: float = 1e-7) -> "RegionInfo":
        pts = face.polygon.corners(tol)
        ring = Polygon(pts, validate=False)
        return cls(
            depth=face.depth,
            area=face.area,
            corners=len(pts),
            edge_lengths=tuple(sorted(ring.edge_lengths())),
            centroid=face.polygon.centroid(),
        )

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "area": self.area,
            "corners": self.corners,
            "edge_lengths": list(self.edge_lengths),
            "centroid": [self.centroid.x, self.centroid.y],
        }


def congruent(r1: RegionInfo, r2: RegionInfo, tol: float = 1e-9) -> bool:
    """Congruence up to tolerance by area and multiset of edge lengths."""
    scale = max(r1.area, r2.area, tol)
    if abs(r1.area - r2.area) > tol * scale:
        return False
    if r1.corners != r2.corners:
        return False
    edge_scale = max(max(r1.edge_lengths, default=1.0), 1.0)
    return all(
        abs(x - y) <= 1e-7 * edge_scale for x, y in zip(r1.edge_lengths, r2.edge_lengths)
    )


@dataclass
class OverlayScene:
    n: int
    room_side: float
    carpet_side: float
    scene: Scene
    arrangement: Arrangement
    report: CoverageReport
    regions: List[RegionInfo] = field(default_factory=list)

    @property
    def doubly(self) -> List[RegionInfo]:
        return [r for r in self.regions if r.depth == 2]

    @property
    def uncovered(self) -> List[RegionInfo]:
        return [r for r in self.regions if r.depth == 0]

    def region_summary(self) -> dict:
        return {
            "doubly": len(self.doubly),
            "uncovered": len(self.uncovered),
            "regions_by_depth": {str(k): v for k, v in self.report.census().items()},
            "doubly_areas": [r.area for r in self.doubly],
            "uncovered_areas": [r.area for r in self.uncovered],
            "doubly_corners": sorted(r.corners for r in self.doubly),
            "uncovered_corners": sorted(r.corners for r in self.uncovered),
        }


def corner_overlay_placements(n: int, room_side: float, carpet_side: float) -> Scene:
    """Room and corner carpets as regular-polygon placements.

    The room is centered at the origin with one edge horizontal at the
    bottom.  Shrinking about a vertex keeps the orientation, so each carpet
    has the room's rotation and a center moved toward that vertex.
    """
    if not isinstance(n, int) or n < 3:
        raise PlacementError(f"n must be an integer >= 3, got {n!r}")
    if not carpet_side > 0:
        raise PlacementError("carpet side must be positive")
    if carpet_side >= room_side:
        raise PlacementError(
            f"carpet side {carpet_side!r} does not fit: must be smaller than the "
            f"room side {room_side!r}"
        )
    rot = -math.pi / 2 - math.pi / n
    room = RegularPlacement(n, float(room_side), (0.0, 0.0), rot)
    radius = room_side / (2.0 * math.sin(math.pi / n))
    t = 1.0 - carpet_side / room_side
    carpets = []
    for i in range(n):
        ang = rot + 2.0 * math.pi * i / n
        vx, vy = radius * math.cos(ang), radius * math.sin(ang)
        carpets.append(RegularPlacement(n, float(carpet_side), (t * vx, t * vy), rot))
    return Scene(room, tuple(carpets))


def corner_overlay(
    n: int, room_side: float, carpet_side: float, eps: float = DEFAULT_EPS
) -> OverlayScene:
    """Build the corner overlay and decompose it by coverage depth."""
    scene = corner_overlay_placements(n, room_side, carpet_side)
    scene = Scene(scene.room, scene.carpets, eps)
    arr = scene.arrangement()
    report = coverage_depth(arr)
    return OverlayScene(
        n=n,
        room_side=float(room_side),
        carpet_side=float(carpet_side),
        scene=scene,
        arrangement=arr,
        report=report,
        regions=[RegionInfo.of(f) for f in report.regions],
    )


def rotation_invariant(overlay: OverlayScene, tol: float = 1e-7) -> bool:
    """Whether rotating the depth map by ``2*pi/n`` about the room center maps it to itself."""
    ang = 2.0 * math.pi / overlay.n
    c, s = math.cos(ang), math.sin(ang)
    scale = overlay.room_side
    for r in overlay.regions:
        x, y = r.centroid
        rx, ry = c * x - s * y, s * x + c * y
        match = [
            o
            for o in overlay.regions
            if o.depth == r.depth
            and math.hypot(o.centroid.x - rx, o.centroid.y - ry) <= tol * scale
        ]
        if len(match) != 1 or abs(match[0].area - r.area) > tol * max(r.area, 1e-300):
            return False
    return True


# Region censuses per n: counts and corner-count multisets.  Shapes not
# listed are left unchecked (the n=6 center is a 12-gon, not a hexagon).
EXPECTED_CENSUS: Dict[int, dict] = {
    3: {"doubly": 3, "uncovered": 1, "doubly_shapes": {3: 3}, "uncovered_shapes": {3: 1}},
    5: {"doubly": 5, "uncovered": 6, "doubly_shapes": {4: 5}, "uncovered_shapes": {3: 5, 5: 1}},
    6: {"doubly": 6, "uncovered": 7, "doubly_shapes": {4: 6}, "uncovered_shapes": {3: 6}},
}


@dataclass
class OverlayCheck:
    n: int
    passed: bool
    uncovered: float
    excess: float
    residual: float
    census: dict
    expected: Optional[dict]
    failures: List[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "doubly": self.census["doubly"],
            "uncovered": self.census["uncovered"],
            "uncovered_area": self.uncovered,
            "excess": self.excess,
            "residual": self.residual,
            "census": self.census,
            "failures": self.failures,
            "details": self.details,
        }


def overlay_identity_check(overlay: OverlayScene, tol: float = 1e-9) -> OverlayCheck:
    """Check the carpet identity and the region census of an exact-ratio overlay.

    Requires ``room_side == sqrt(n) * carpet_side``.  Passes when
    ``|uncovered - excess| <= tol * room_area`` and, for n in 3, 5, 6, the
    region counts and shapes agree with :data:`EXPECTED_CENSUS`.
    """
    n, a, b = overlay.n, overlay.room_side, overlay.carpet_side
    if abs(a * a - n * b * b) > 1e-12 * a * a:
        raise ValueError(
            f"overlay_identity_check needs room_side = sqrt(n)*carpet_side; "
            f"got a^2={a * a!r}, n*b^2={n * b * b!r}"
        )
    rep = overlay.report
    room_area = rep.room_area
    census = overlay.region_summary()
    failures = []
    gap = rep.uncovered - rep.excess
    if abs(gap) > tol * room_area:
        failures.append(f"uncovered - excess = {gap:.3e} exceeds {tol:g} * room area")
    if abs(sum(rep.area_by_depth.values()) - room_area) > tol * room_area:
        failures.append("depth areas do not sum to the room area")

    expected = EXPECTED_CENSUS.get(n)
    if expected is not None:
        for key in ("doubly", "uncovered"):
            if census[key] != expected[key]:
                failures.append(f"{key} regions: expected {expected[key]}, got {census[key]}")
        for key, regs in (("doubly_shapes", overlay.doubly), ("uncovered_shapes", overlay.uncovered)):
            got = Counter(r.corners for r in regs)
            for corners, count in expected[key].items():
                if got.get(corners, 0) != count:
                    failures.append(
                        f"{key}: expected {count} region(s) with {corners} corners, "
                        f"got {got.get(corners, 0)}"
                    )
        if overlay.doubly and not all(congruent(overlay.doubly[0], r) for r in overlay.doubly):
            failures.append("doubly covered regions are not mutually congruent")

    details = {}
    if n == 5 and not failures:
        details = _pentagon_accounting(overlay, tol)
        failures += details.pop("failures")

    return OverlayCheck(
        n=n,
        passed=not failures,
        uncovered=rep.uncovered,
        excess=rep.excess,
        residual=rep.residual,
        census=census,
        expected=expected,
        failures=failures,
        details=details,
    )


def _pentagon_accounting(overlay: OverlayScene, tol: float) -> dict:
    # Cutting a small pentagon of side a-2b out of each doubly covered
    # quadrilateral leaves exactly an uncovered triangle's worth of carpet;
    # the five small pentagons then match the uncovered pentagon (side 5b-2a).
    a, b = overlay.room_side, overlay.carpet_side
    failures = []
    pent = [r for r in overlay.uncovered if r.corners == 5][0]
    tri = [r for r in overlay.uncovered if r.corners == 3]
    side = sum(pent.edge_lengths) / 5
    small = regular_area(5, a - 2 * b)
    room_area = overlay.report.room_area
    if abs(side - (5 * b - 2 * a)) > 1e-7 * b:
        failures.append(f"uncovered pentagon side {side!r} != 5b - 2a")
    for q in overlay.doubly:
        if abs(q.area - small - tri[0].area) > tol * room_area:
            failures.append("quadrilateral minus small pentagon != uncovered triangle")
            break
    if abs(5 * small - pent.area) > tol * room_area:
        failures.append("five small pentagons != uncovered pentagon")
    return {
        "uncovered_pentagon_side": side,
        "expected_pentagon_side": 5 * b - 2 * a,
        "small_pentagon_side": a - 2 * b,
        "failures": failures,
    }


@dataclass(frozen=True)
class PentagonDissection:
    """Exact lengths in the pentagon overlay, as elements of Q(sqrt 5).

    ``a = sqrt(5) * b`` is the room side, ``d`` a carpet diagonal.
    """

    b: int
    a: QuadraticNumber
    d: QuadraticNumber
    small_pentagon_side: QuadraticNumber
    small_pentagon_diagonal: QuadraticNumber
    checks: Dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def pentagon_dissection(b: int) -> PentagonDissection:
    if isinstance(b, bool) or not isinstance(b, int) or b < 1:
        raise ValueError(f"b must be a positive integer, got {b!r}")
    a = QuadraticNumber(5, 0, b)
    d = (a + b) / 2
    side = (3 * b * b - a * b) / (a + b)
    diag = (3 * b - a) / 2
    golden = QuadraticNumber(5, Fraction(1, 2), Fraction(1, 2))
    checks = {
        "d/b == b/(d-b)": d / b == b / (d - b),
        "d == b*(1+sqrt5)/2": d == b * golden,
        "side == a - 2b": side == a - 2 * b,
        "diagonal == golden ratio * side": diag == golden * side,
        "5b - 2a > 0": 5 * b - 2 * a > 0,
        "a - 2b > 0": a - 2 * b > 0,
    }
    return PentagonDissection(b, a, d, side, diag, checks)


@dataclass
class HexagonReport:
    b: int
    census: dict
    rhombus_areas: List[float]
    rhombi_congruent: bool
    doubly_total: float
    uncovered_total: float
    center_corners: int
    candidates: Dict[str, dict]
    matching: List[str]

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "census": self.census,
            "rhombus_areas": self.rhombus_areas,
            "rhombi_congruent": self.rhombi_congruent,
            "doubly_total": self.doubly_total,
            "uncovered_total": self.uncovered_total,
            "center_corners": self.center_corners,
            "candidates": self.candidates,
            "matching": self.matching,
        }


def hexagon_overlay_report(b: int, tol: float = 1e-9) -> HexagonReport:
    """Census of the hexagon overlay and the rhombus-to-hexagon side length.

    Each doubly covered rhombus should have the area of a regular hexagon
    of side ``(d/(3b)) * (3b - a)``.  ``d`` is evaluated both as a carpet's
    short diagonal ``sqrt(3)*b`` and long diagonal ``2b``; ``matching``
    lists the readings that agree within ``tol``.
    """
    if isinstance(b, bool) or not isinstance(b, int) or b < 1:
        raise ValueError(f"b must be a positive integer, got {b!r}")
    a = math.sqrt(6) * b
    overlay = corner_overlay(6, a, float(b))
    rhombi = overlay.doubly
    areas = [r.area for r in rhombi]
    candidates = {}
    matching = []
    mean = sum(areas) / len(areas) if areas else 0.0
    for name, d in (("short_diagonal", math.sqrt(3) * b), ("long_diagonal", 2.0 * b)):
        side = d / (3 * b) * (3 * b - a)
        hex_area = regular_area(6, side)
        rel = abs(hex_area - mean) / mean if mean else math.inf
        ok = rel <= tol
        candidates[name] = {
            "d": d,
            "hexagon_side": side,
            "hexagon_area": hex_area,
            "relative_error": rel,
            "matches": ok,
        }
        if ok:
            matching.append(name)
    centers = [r for r in overlay.uncovered if r.corners != 3]
    return HexagonReport(
        b=b,
        census=overlay.region_summary(),
        rhombus_areas=areas,
        rhombi_congruent=bool(rhombi) and all(congruent(rhombi[0], r, tol) for r in rhombi),
        doubly_total=sum(areas),
        uncovered_total=sum(r.area for r in overlay.uncovered),
        center_corners=centers[0].corners if len(centers) == 1 else -1,
        candidates=candidates,
        matching=matching,
    )

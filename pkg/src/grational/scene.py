"""JSON scene files: a regular-polygon room with regular-polygon carpets.

Schema::

    {
      "room":    {"n": 4, "side": 1.414, "center": [0, 0], "rotation": 0.785},
      "carpets": [{"n": 4, "side": 1, "center": [...], "rotation": ...}, ...],
      "tolerance": 1e-9
    }

``center`` defaults to the origin, ``rotation`` to 0 and ``tolerance`` to
1e-9.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .geomkernel import DEFAULT_EPS, Arrangement, Polygon, regular_polygon

__all__ = ["RegularPlacement", "Scene", "SceneError"]


class SceneError(ValueError):
    """Malformed scene document."""


_PLACEMENT_FIELDS = {"n", "side", "center", "rotation"}
_SCENE_FIELDS = {"room", "carpets", "tolerance"}


def _number(where: str, v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SceneError(f"{where} must be a number, got {v!r}")
    if not math.isfinite(v):
        raise SceneError(f"{where} must be finite")
    return float(v)


@dataclass(frozen=True)
class RegularPlacement:
    """A regular polygon given by side count, side, center and rotation."""

    n: int
    side: float
    center: Tuple[float, float] = (0.0, 0.0)
    rotation: float = 0.0

    def polygon(self) -> Polygon:
        return regular_polygon(self.n, self.side, self.center, self.rotation)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "side": self.side,
            "center": [self.center[0], self.center[1]],
            "rotation": self.rotation,
        }

    @classmethod
    def from_dict(cls, d, where: str = "shape") -> "RegularPlacement":
        if not isinstance(d, dict):
            raise SceneError(f"{where} must be an object")
        unknown = set(d) - _PLACEMENT_FIELDS
        if unknown:
            raise SceneError(f"unknown field {sorted(unknown)[0]!r} in {where}")
        for key in ("n", "side"):
            if key not in d:
                raise SceneError(f"{where} is missing required field {key!r}")
        n = d["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 3:
            raise SceneError(f"{where}.n must be an integer >= 3, got {n!r}")
        side = _number(f"{where}.side", d["side"])
        if side <= 0:
            raise SceneError(f"{where}.side must be positive")
        center = d.get("center", [0.0, 0.0])
        if not isinstance(center, list) or len(center) != 2:
            raise SceneError(f"{where}.center must be [x, y]")
        cx = _number(f"{where}.center[0]", center[0])
        cy = _number(f"{where}.center[1]", center[1])
        rot = _number(f"{where}.rotation", d.get("rotation", 0.0))
        return cls(n, side, (cx, cy), rot)


@dataclass(frozen=True)
class Scene:
    room: RegularPlacement
    carpets: Tuple[RegularPlacement, ...] = field(default_factory=tuple)
    tolerance: float = DEFAULT_EPS

    def arrangement(self, tolerance: Optional[float] = None) -> Arrangement:
        eps = self.tolerance if tolerance is None else tolerance
        return Arrangement(
            self.room.polygon(), tuple(c.polygon() for c in self.carpets), eps
        )

    def to_dict(self) -> dict:
        return {
            "room": self.room.to_dict(),
            "carpets": [c.to_dict() for c in self.carpets],
            "tolerance": self.tolerance,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "Scene":
        if not isinstance(d, dict):
            raise SceneError("scene must be a JSON object")
        unknown = set(d) - _SCENE_FIELDS
        if unknown:
            raise SceneError(f"unknown field {sorted(unknown)[0]!r} in scene")
        if "room" not in d:
            raise SceneError("scene is missing required field 'room'")
        room = RegularPlacement.from_dict(d["room"], "room")
        raw = d.get("carpets", [])
        if not isinstance(raw, list):
            raise SceneError("carpets must be a list")
        carpets = tuple(
            RegularPlacement.from_dict(c, f"carpets[{i}]") for i, c in enumerate(raw)
        )
        tol = _number("tolerance", d.get("tolerance", DEFAULT_EPS))
        if tol <= 0:
            raise SceneError("tolerance must be positive")
        return cls(room, carpets, tol)

    @classmethod
    def loads(cls, text: str) -> "Scene":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SceneError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Scene":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or domain
error.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional

from .carpets import corner_overlay, overlay_identity_check
from .geomkernel import DEFAULT_EPS, GeometryError, coverage_depth
from .gratcore import (
    CandidatePair,
    DomainError,
    DescentStrategy,
    descent_chain,
    is_grational,
)
from .render import FIGURES, arrangement_doc, figure_doc, render_svg, tiling_doc
from .scene import Scene, SceneError
from .tilings import UnitTriangle, assemble_ngon, row_tile, tile_triangle

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"range must look like 3..N, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range bounds must be integers, got {text!r}")


def _check_entry(n: int) -> dict:
    res = is_grational(n)
    w = res.witness
    return {"n": n, "grational": res.grational, "witness": [w.a, w.b] if w else None}


def cmd_check(args) -> int:
    if args.range:
        lo, hi = _parse_range(args.range)
        if lo < 3:
            raise DomainError(f"range must start at n >= 3, got {lo}")
        _emit({"results": [_check_entry(n) for n in range(lo, hi + 1)]})
        return EXIT_OK
    if args.n is None:
        raise UsageError("check needs n or --range")
    entry = _check_entry(args.n)
    del entry["n"]
    _emit(entry)
    return EXIT_OK


def cmd_descend(args) -> int:
    strategy = DescentStrategy.for_n(args.strategy, args.n)
    pair = CandidatePair(args.n, args.a, args.b)
    res = descent_chain(pair, strategy, args.max_steps)
    _emit(
        {
            "n": args.n,
            "strategy": str(strategy),
            "chain": [p.as_dict() for p in res.chain],
            "reason": res.reason,
            "failed": res.failed,
        }
    )
    return EXIT_OK


def cmd_overlay(args) -> int:
    tol = args.tolerance if args.tolerance is not None else DEFAULT_EPS
    n = args.n
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if args.sides:
        a, b = args.sides
    else:
        a, b = math.sqrt(n), 1.0
    if not 0 < b:
        raise UsageError("carpet side must be positive")
    ov = corner_overlay(n, a, b, eps=tol)
    if abs(a * a - n * b * b) <= 1e-12 * a * a:
        check = overlay_identity_check(ov, tol)
        out = check.to_dict()
        passed = check.passed
    else:
        rep = ov.report
        passed = abs(rep.residual) <= tol * rep.room_area
        out = {
            "n": n,
            "passed": passed,
            "doubly": len(ov.doubly),
            "uncovered": len(ov.uncovered),
            "uncovered_area": rep.uncovered,
            "excess": rep.excess,
            "residual": rep.residual,
            "census": ov.region_summary(),
            "failures": [] if passed else ["generalized carpet identity failed"],
        }
    out["room_side"], out["carpet_side"] = a, b
    if args.render:
        _write(args.render, render_svg(arrangement_doc(ov.arrangement, ov.report, f"n = {n}")))
    if args.json_scene:
        _write(args.json_scene, ov.scene.dumps() + "\n")
    if args.json:
        _emit(out)
    else:
        status = "PASS" if passed else "FAIL"
        print(
            f"n={n} room={a:.9g} carpet={b:.9g}: {out['doubly']} doubly covered, "
            f"{out['uncovered']} uncovered regions; uncovered area {out['uncovered_area']:.9g}, "
            f"excess {out['excess']:.9g} [{status}]"
        )
        for f in out["failures"]:
            print(f"  {f}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_carpets(args) -> int:
    scene = Scene.load(args.scene)
    tol = args.tolerance if args.tolerance is not None else scene.tolerance
    rep = coverage_depth(scene.arrangement(tol))
    out = rep.to_dict()
    out["tolerance"] = tol
    ok = abs(rep.residual) <= tol
    out["passed"] = ok
    _emit(out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_tile(args) -> int:
    kind = args.kind
    vals = args.values
    need = {"triangle": 1, "ngon": 2, "rows": 3}[kind]
    if len(vals) != need:
        raise UsageError(f"tile {kind} takes {need} integer argument(s), got {len(vals)}")
    ok = True
    doc = None
    if kind == "triangle":
        (k,) = vals
        if k < 1:
            raise DomainError("k must be at least 1")
        apex = 2 * math.pi / args.apex_n
        tiles = tile_triangle(k, apex)
        rows = [sum(1 for t in tiles if t.row == r) for r in range(1, k + 1)]
        unit = UnitTriangle(apex)
        area = sum(t.polygon().area for t in tiles)
        ok = len(tiles) == k * k and abs(area - k * k * unit.area) <= 1e-9 * area
        out = {"count": len(tiles), "rows": rows, "apex_angle": apex, "area": area}
        doc = tiling_doc([t.polygon() for t in tiles], title=f"{k * k} triangles")
    elif kind == "ngon":
        n, side = vals
        asm = assemble_ngon(n, side)
        total = sum(p.area for p in asm.unit_wedges)
        ok = asm.wedge_count == n * side * side and abs(total - asm.polygon.area) <= 1e-9 * total
        out = {"n": n, "side": side, "wedges": asm.wedge_count, "area": asm.polygon.area}
        doc = tiling_doc(asm.unit_wedges, asm.polygon, title=f"nice {n}-gon of side {side}")
    else:
        n, a, b = vals
        rep = row_tile(n, a, b)
        out = rep.to_dict()
        ok = not rep.contradiction
    out["passed"] = ok
    if args.render:
        if doc is None:
            raise UsageError("--render is supported for triangle and ngon tilings")
        _write(args.render, render_svg(doc))
    if args.json:
        _emit(out)
    else:
        print(" ".join(f"{k}={v}" for k, v in sorted(out.items())))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_figure(args) -> int:
    if args.list or not args.name:
        for name in sorted(FIGURES):
            print(name)
        return EXIT_OK
    svg = render_svg(figure_doc(args.name), show_labels=args.labels)
    if args.output:
        _write(args.output, svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="grational",
        description="Grationality of regular polygons: decisions, descent, carpets, tilings.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide whether n is grational")
    c.add_argument("n", type=int, nargs="?")
    c.add_argument("--range", metavar="LO..HI", help="check every n in an inclusive range")
    c.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("descend", help="run a descent chain on a candidate pair")
    d.add_argument("n", type=int)
    d.add_argument("a", type=int)
    d.add_argument("b", type=int)
    d.add_argument("strategy", help="paper3, paper5 or generic")
    d.add_argument("--max-steps", type=int, default=1000)
    d.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    d.set_defaults(func=cmd_descend)

    o = sub.add_parser("overlay", help="corner overlay of n carpets in an n-gon room")
    o.add_argument("n", type=int)
    mode = o.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact-ratio", action="store_true", help="room sqrt(n), carpet 1")
    mode.add_argument("--sides", nargs=2, type=float, metavar=("A", "B"))
    o.add_argument("--render", metavar="SVG")
    o.add_argument("--json", action="store_true")
    o.add_argument("--json-scene", metavar="PATH", help="write the scene file")
    o.add_argument("--tolerance", type=float)
    o.set_defaults(func=cmd_overlay)

    cp = sub.add_parser("carpets", help="coverage-depth report for a scene file")
    cp.add_argument("scene")
    cp.add_argument("--tolerance", type=float)
    cp.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    cp.set_defaults(func=cmd_carpets)

    t = sub.add_parser("tile", help="triangle, n-gon and row tilings")
    t.add_argument("kind", choices=["triangle", "ngon", "rows"])
    t.add_argument("values", nargs="+", type=int)
    t.add_argument("--apex-n", type=int, default=3, help="triangle apex angle is 2*pi/APEX_N")
    t.add_argument("--render", metavar="SVG")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tile)

    f = sub.add_parser("figure", help="render one of the built-in figures")
    f.add_argument("name", nargs="?")
    f.add_argument("-o", "--output")
    f.add_argument("--labels", action="store_true")
    f.add_argument("--list", action="store_true")
    f.set_defaults(func=cmd_figure)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, SceneError, GeometryError, ValueError, OSError) as exc:
        print(f"grational {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance criteria AC1-AC9, each logged as one PASS/FAIL line."""

import math
import random
import time
import xml.etree.ElementTree as ET

from grational.carpets import corner_overlay, overlay_identity_check, tennenbaum_arrangement
from grational.geomkernel import Arrangement, coverage_depth, max_pairwise_overlap, regular_polygon, union_area
from grational.gratcore import (
    DescentStrategy,
    PolyExpr,
    brute_force_witness,
    descent_map,
    is_grational,
    pentagon_diagonal_identity,
    verify_identity,
    verify_witness,
)
from grational.numerics import integer_sqrt
from grational.render import figure_doc, render_svg
from grational.tilings import UnitTriangle, assemble_ngon, parallelogram_double, row_tile, tile_triangle
from scenes import random_carpets

from conftest import GOLDEN


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_ac1_grational_iff_square(acceptance_log):
    with Timer() as t:
        bad = [n for n in range(3, 10001) if is_grational(n).grational != integer_sqrt(n)[1]]
        bad += [n for n in range(3, 201) if is_grational(n).grational != (brute_force_witness(n, 50) is not None)]
    ok = not bad and t.elapsed < 5
    acceptance_log("AC1 grational iff perfect square", ok, f"mismatches={bad[:5]} time={t.elapsed:.2f}s (<5s)")
    assert ok


def test_ac2_witnesses(acceptance_log):
    ok = verify_witness(4, 2, 1) and verify_witness(9, 3, 1)
    acceptance_log("AC2 witnesses (4,2,1) and (9,3,1)", ok, "both verify" if ok else "verification failed")
    assert ok


def test_ac3_defect_laws(acceptance_log):
    rng = random.Random(2024)
    failures = []
    with Timer() as t:
        for n in (3, 5, 6, 7, 8, 10):
            k = math.isqrt(n)
            generic = DescentStrategy.generic(k)
            for _ in range(1000):
                a, b = rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9)
                d = a * a - n * b * b
                a2, b2 = descent_map(n, a, b, generic)
                if a2 * a2 - n * b2 * b2 != (k * k - n) * d:
                    failures.append(("generic", n, a, b))
                if n == 3:
                    a3, b3 = descent_map(3, a, b, DescentStrategy.paper3())
                    if a3 * a3 - 3 * b3 * b3 != d:
                        failures.append(("paper3", a, b))
    ok = not failures and t.elapsed < 1
    acceptance_log("AC3 defect laws", ok, f"6000 pairs, failures={len(failures)} time={t.elapsed:.3f}s (<1s)")
    assert ok


def test_ac4_symbolic_identities(acceptance_log):
    a, b = PolyExpr.symbols()
    checks = {
        "3b^2-ab = (a-2b)(a+b) mod a^2-5b^2": verify_identity(3 * b**2 - a * b, (a - 2 * b) * (a + b), 5),
        "(5b-2a)^2 = 5(a-2b)^2 mod a^2-5b^2": verify_identity((5 * b - 2 * a) ** 2, 5 * (a - 2 * b) ** 2, 5),
        "(2a-3b)^2 = 3(2b-a)^2 mod a^2-3b^2": verify_identity((2 * a - 3 * b) ** 2, 3 * (2 * b - a) ** 2, 3),
        "d = b(1+sqrt5)/2": all(pentagon_diagonal_identity(k) for k in (1, 2, 3, 10)),
    }
    ok = all(checks.values())
    acceptance_log("AC4 symbolic identities", ok, ", ".join(k for k, v in checks.items() if not v) or "all 4 exact")
    assert ok


def test_ac5_carpets_identity(acceptance_log):
    rng = random.Random(7)
    worst = 0.0
    with Timer() as t:
        rep = coverage_depth(tennenbaum_arrangement(math.sqrt(2), 1.0))
        target = 6 - 4 * math.sqrt(2)
        tenn_err = max(abs(rep.uncovered - target), abs(rep.excess - target))
        scenes = 0
        while scenes < 100:
            room = regular_polygon(rng.randint(3, 10), rng.uniform(1, 5), (rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0, 6.3))
            carpets = random_carpets(rng, room, rng.randint(1, 6))
            if not carpets:
                continue
            r = coverage_depth(Arrangement(room, carpets))
            worst = max(worst, abs(r.residual) / r.room_area)
            scenes += 1
    ok = tenn_err <= 1e-9 and worst <= 1e-9 and t.elapsed < 10
    acceptance_log(
        "AC5 carpets identity",
        ok,
        f"tennenbaum err={tenn_err:.1e}, worst relative residual over 100 scenes={worst:.1e} time={t.elapsed:.2f}s (<10s)",
    )
    assert ok


def test_ac6_overlay_censuses(acceptance_log):
    notes = []
    with Timer() as t:
        checks = {n: overlay_identity_check(corner_overlay(n, math.sqrt(n), 1.0)) for n in (3, 5, 6, 7, 8)}
    ok = all(c.passed for c in checks.values())
    s3 = math.sqrt(3)
    ok &= abs(3 * (2 - s3) ** 2 - (2 * s3 - 3) ** 2) <= 1e-9
    c3, c5, c6 = checks[3].census, checks[5].census, checks[6].census
    ok &= (c3["doubly"], c3["uncovered"]) == (3, 1)
    ok &= c5["doubly_corners"] == [4] * 5 and c5["uncovered_corners"] == [3] * 5 + [5]
    ok &= (c6["doubly"], c6["uncovered"]) == (6, 7)
    for n in (7, 8):
        ok &= (GOLDEN / f"census_n{n}.json").exists()
        notes.append(f"n={n} residual={checks[n].residual:.1e}")
    ok &= t.elapsed < 10
    failures = [f for c in checks.values() for f in c.failures]
    acceptance_log("AC6 overlay censuses", ok, "; ".join(failures + notes) + f" time={t.elapsed:.2f}s (<10s)")
    assert ok


def test_ac7_tiling_counts(acceptance_log):
    worst_overlap = 0.0
    worst_area = 0.0
    rows_ok = True
    with Timer() as t:
        apex = math.pi / 3
        unit = UnitTriangle(apex).area
        for k in range(1, 51):
            tiles = tile_triangle(k, apex)
            rows_ok &= len(tiles) == k * k
            rows_ok &= [sum(1 for p in tiles if p.row == r) for r in range(1, k + 1)] == list(range(1, 2 * k, 2))
            polys = [p.polygon() for p in tiles]
            worst_overlap = max(worst_overlap, max_pairwise_overlap(polys))
            worst_area = max(worst_area, abs(union_area(polys) - k * k * unit) / (k * k * unit))
        wedges = assemble_ngon(9, 3).wedge_count
        para = all(
            parallelogram_double(k) == sum((2 * r - 1) + (2 * (k + 1 - r) - 1) for r in range(1, k + 1)) == 2 * k * k
            for k in range(1, 101)
        )
    ok = rows_ok and worst_overlap <= 1e-12 and worst_area <= 1e-9 and wedges == 81 and para and t.elapsed < 30
    acceptance_log(
        "AC7 tiling counts",
        ok,
        f"overlap={worst_overlap:.1e} area err={worst_area:.1e} wedges={wedges} time={t.elapsed:.2f}s (<30s)",
    )
    assert ok


def test_ac8_row_tiling(acceptance_log):
    seen = 0
    bad = []
    with Timer() as t:
        for n in range(3, 401):
            for b in range(1, 4):
                a, exact = integer_sqrt(n * b * b)
                if not exact:
                    continue
                rep = row_tile(n, a, b)
                seen += 1
                if rep.lam != 0 or rep.total_carpets != rep.k**2 or rep.k**2 != n:
                    bad.append((n, a, b))
    ok = not bad and seen > 0 and t.elapsed < 5
    acceptance_log("AC8 row tiling at desk scale", ok, f"{seen} witnesses, failures={bad[:5]} time={t.elapsed:.2f}s (<5s)")
    assert ok


def test_ac9_renderer_determinism(acceptance_log):
    problems = []
    with Timer() as t:
        for name in ("fig2", "fig7a", "fig9", "fig15", "fig34", "fig52"):
            first = render_svg(figure_doc(name))
            if first != render_svg(figure_doc(name)):
                problems.append(f"{name}: renders differ")
            path = GOLDEN / f"{name}.svg"
            if not path.exists():
                problems.append(f"{name}: golden missing")
                continue
            text = path.read_text(encoding="utf-8")
            try:
                root = ET.fromstring(text.encode("utf-8"))
                if root.tag != "{http://www.w3.org/2000/svg}svg":
                    problems.append(f"{name}: root is {root.tag}")
            except ET.ParseError as exc:
                problems.append(f"{name}: {exc}")
            if text != first:
                problems.append(f"{name}: differs from golden")
    ok = not problems and t.elapsed < 5
    acceptance_log("AC9 renderer determinism", ok, "; ".join(problems) or f"6 figures identical and well-formed, time={t.elapsed:.2f}s (<5s)")
    assert ok

"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with pytest (the lines are repeated in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""
import gc
import itertools
import math
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import EXAMPLE1, EXAMPLE1_OMEGAS, EXAMPLE1_POLY  # noqa: E402
from kassign.completion import NotAdjacent, complete_sequence, decompose  # noqa: E402
from kassign.estimator import KAssignment, solve  # noqa: E402
from kassign.cli import single_gap_result  # noqa: E402
from kassign.gk import run  # noqa: E402
from kassign.instance import generate  # noqa: E402
from kassign.maxplus import NEG_INF, POS_INF, ext_sub, format_polynomial, roots  # noqa: E402
from kassign.oracle import brute_force_fullchar, brute_force_omegas  # noqa: E402
from kassign.ssp import solve_sequence  # noqa: E402

RESULTS: dict = {}


def _record(number: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)


def battery_small(count=500):
    """Seeded instances with n in 1..6, weights in [-5, 5], -inf density 0.2."""
    for seed in range(count):
        yield seed, generate(1 + seed % 6, -5, 5, 0.2, seed)


def battery_medium(count=1000):
    """Seeded instances with n in 1..40, mixing wide and narrow weight ranges."""
    for seed in range(count):
        n = 1 + seed % 40
        if seed % 3 == 0:
            W = generate(n, 0, 3, 0, seed)
        else:
            W = generate(n, -50, 50, 0.2 if seed % 3 == 1 else 0, seed)
        yield seed, W


# -- 1 -----------------------------------------------------------------

def check_example1():
    t0 = time.perf_counter()
    problems = []
    for algo in ("brute", "ssp", "gk-fill"):
        seq, gk, _ = solve(EXAMPLE1, algo)
        if seq.omegas != EXAMPLE1_OMEGAS:
            problems.append(f"{algo} omegas {seq.omegas}")
        if format_polynomial(seq.polynomial()) != EXAMPLE1_POLY:
            problems.append(f"{algo} polynomial")
        singular = ([(s.value, s.multiplicity) for s in gk.singular_values] if gk
                    else roots(seq.polynomial())[::-1])
        if singular != [(10, 1), (8, 1), (5, 1), (0, 1)]:
            problems.append(f"{algo} singular values {singular}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1:
        problems.append(f"took {elapsed:.3f} s")
    return not problems, "; ".join(problems) or f"brute, ssp, gk-fill exact in {elapsed:.3f} s"


# -- 2 -----------------------------------------------------------------

def check_oracle_battery():
    for seed, W in battery_small():
        want = brute_force_omegas(W)
        for algo in ("ssp", "gk-fill"):
            got = solve(W, algo)[0].omegas
            if got != want:
                return False, f"seed {seed} {algo}: {got} != {want}"
    return True, "500 instances, ssp and gk-fill equal brute force for every k"


# -- 3 and 6 -----------------------------------------------------------

def check_concavity():
    for seed, W in battery_medium():
        om = solve_sequence(W, want_matchings=False).omegas
        gains = [ext_sub(om[k], om[k - 1]) for k in range(1, len(om))]
        for a, b in zip(gains, gains[1:]):
            if b != NEG_INF and (a == NEG_INF or a < b):
                return False, f"seed {seed}: gains {a} then {b}"
    return True, "1000 instances n<=40, differences non-increasing"


def check_nestedness():
    checked = 0
    for seed, W in battery_medium():
        seq = solve_sequence(W)
        for k in range(len(W)):
            a, b = seq.matchings[k], seq.matchings[k + 1]
            if b is None:
                break
            sym = a ^ b
            dec = decompose(a, b)
            single = len(dec.augmenting_fwd) == 1 and not dec.augmenting_bwd and not dec.alternating_even
            if len(sym) % 2 != 1 or not single:
                return False, f"seed {seed} k={k}: symmetric difference is not one augmenting path"
            checked += 1
    return True, f"1000 instances n<=40, {checked} consecutive pairs are single augmenting paths"


# -- 4 -----------------------------------------------------------------

def check_equal_gain():
    gaps = 0
    for seed in range(200):
        n = 1 + seed % 40
        W = generate(n, 0, 3, 0, seed)
        try:
            seq = complete_sequence(W, run(W))
        except NotAdjacent as exc:
            return False, f"seed {seed}: {exc}"
        for g in seq.gaps:
            if any(x * g.d != g.total for x in g.gains):
                return False, f"seed {seed}: gains {g.gains} vs G/d = {g.total}/{g.d}"
        gaps += len(seq.gaps)
    if gaps == 0:
        return False, "no gaps were exercised"
    return True, f"200 instances, {gaps} gaps, zero violations"


# -- 5 -----------------------------------------------------------------

def check_duality():
    count = 0
    for seed, W in itertools.chain(battery_small(), ((s, generate(1 + s % 6, 0, 2, 0, s)) for s in range(500))):
        n = len(W)
        r = run(W)
        got = sorted((s.value, s.multiplicity) for s in r.singular_values)
        want = sorted(roots(brute_force_fullchar(W)))
        if got != want or sum(s.multiplicity for s in r.singular_values) != n:
            return False, f"seed {seed}: {got} != {want}"
        count += 1
    return True, f"{count} instances n<=6, singular values equal FCF differences, multiplicities sum to n"


# -- 7 -----------------------------------------------------------------

def _fill_times(sizes, repeats=9):
    # timeit conventions: warm-up, collector off, best of interleaved repeats
    cases = []
    for n in sizes:
        W = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        anchor = single_gap_result(W, frozenset((i, i) for i in range(n)))
        assert complete_sequence(W, anchor).omegas == [0] * (n + 1)
        cases.append((W, anchor))
    best = [math.inf] * len(sizes)
    gc.disable()
    try:
        for _ in range(repeats):
            for idx, (W, anchor) in enumerate(cases):
                t = time.perf_counter()
                complete_sequence(W, anchor)
                best[idx] = min(best[idx], time.perf_counter() - t)
    finally:
        gc.enable()
    return best


def _ssp_time(n):
    W = generate(n, 0, 1000, 0, seed=n)
    best = math.inf
    for _ in range(2 if n < 400 else 1):
        t = time.perf_counter()
        solve_sequence(W, want_matchings=False)
        best = min(best, time.perf_counter() - t)
    return best


def check_scaling():
    t500, t1000 = _fill_times([500, 1000])
    ratio = t1000 / t500
    sizes = [100, 200, 400]
    times = [_ssp_time(n) for n in sizes]
    xs = [math.log(n) for n in sizes]
    ys = [math.log(t) for t in times]
    mx, my = sum(xs) / 3, sum(ys) / 3
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    ok = 3 <= ratio <= 6 and t1000 < 10 and 2.3 <= slope <= 3.6
    detail = (f"fill-in 500: {t500:.3f} s, 1000: {t1000:.3f} s, ratio {ratio:.2f}; "
              f"ssp {', '.join(f'{t:.2f}' for t in times)} s, slope {slope:.2f}")
    return ok, detail


# -- 8 -----------------------------------------------------------------

def _direct_min(grid, k):
    r, c = len(grid), len(grid[0])
    if k > min(r, c):
        return POS_INF
    best = POS_INF
    for rows in itertools.combinations(range(r), k):
        for cols in itertools.permutations(range(c), k):
            vals = [grid[i][j] for i, j in zip(rows, cols)]
            if POS_INF not in vals:
                best = min(best, sum(vals))
    return best


def check_min_rectangular():
    import numpy as np

    rng = np.random.Generator(np.random.PCG64(2024))
    for t in range(100):
        r, c = rng.choice(np.arange(1, 7), size=2, replace=False)
        grid = [[POS_INF if rng.random() < 0.2 else int(rng.integers(-9, 10)) for _ in range(c)] for _ in range(r)]
        want = [_direct_min(grid, k) for k in range(max(r, c) + 1)]
        for algo in ("brute", "ssp", "gk-fill"):
            got = KAssignment(algorithm=algo, objective="min").fit(grid).omegas_
            if got != want:
                return False, f"instance {t} ({r}x{c}) {algo}: {got} != {want}"
    return True, "100 rectangular min instances, brute/ssp/gk-fill equal the direct minimizer"


CHECKS = {
    1: check_example1,
    2: check_oracle_battery,
    3: check_concavity,
    4: check_equal_gain,
    5: check_duality,
    6: check_nestedness,
    7: check_scaling,
    8: check_min_rectangular,
}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_acceptance(number):
    ok, detail = CHECKS[number]()
    _record(number, ok, detail)
    assert ok, detail


def main() -> int:
    failed = 0
    for number in sorted(CHECKS):
        ok, detail = CHECKS[number]()
        _record(number, ok, detail)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

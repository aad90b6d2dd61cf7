"""Exhaustive ground truth for small instances.

Exponential in ``n``; guarded by a size bound.  The empty matching has
weight 0, which is also the coefficient of ``x^n`` in the full
characteristic maxpolynomial.
"""
from __future__ import annotations

import itertools

from .maxplus import DEFAULT_BRUTE_FORCE_BOUND, NEG_INF, MaxPolynomial, SizeBound, to_ext
from .validation import check_weight_matrix


def brute_force_k(W, k: int, bound: int = DEFAULT_BRUTE_FORCE_BOUND):
    """Best weight of a cardinality-``k`` matching and a witness.

    Row subsets and column arrangements are enumerated in lexicographic
    order and the first maximizer found is kept.  When no finite matching of
    size ``k`` exists the weight is ``-inf`` and the witness is the first
    enumerated matching.
    """
    W = check_weight_matrix(W)
    n = len(W)
    if n > bound:
        raise SizeBound(f"n={n} exceeds the brute-force bound {bound}")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    if k == 0:
        return 0, frozenset()
    best, witness = NEG_INF, None
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.permutations(range(n), k):
            total = 0
            for i, j in zip(rows, cols):
                total = total + W[i][j]
                if total == NEG_INF:
                    break
            if witness is None or total > best:
                best, witness = total, frozenset(zip(rows, cols))
    return (best if best == NEG_INF else to_ext(best)), witness


def brute_force_omegas(W, bound: int = DEFAULT_BRUTE_FORCE_BOUND) -> list:
    W = check_weight_matrix(W)
    return [brute_force_k(W, k, bound)[0] for k in range(len(W) + 1)]


def brute_force_fullchar(W, bound: int = DEFAULT_BRUTE_FORCE_BOUND) -> MaxPolynomial:
    """Full characteristic maxpolynomial; ``coeffs[n - k]`` is the ``k``-assignment weight."""
    return MaxPolynomial(brute_force_omegas(W, bound)[::-1])


def all_witnesses(W, k: int, bound: int = DEFAULT_BRUTE_FORCE_BOUND) -> list:
    """Every cardinality-``k`` matching attaining the optimum (small ``n`` only)."""
    W = check_weight_matrix(W)
    n = len(W)
    if n > bound:
        raise SizeBound(f"n={n} exceeds the brute-force bound {bound}")
    best, _ = brute_force_k(W, k, bound)
    if k == 0:
        return [frozenset()]
    out = []
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.permutations(range(n), k):
            total = 0
            for i, j in zip(rows, cols):
                total = total + W[i][j]
            if total == best:
                out.append(frozenset(zip(rows, cols)))
    return out

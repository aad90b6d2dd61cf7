"""Input checks shared by the solvers and the estimator."""
from __future__ import annotations

import math
from fractions import Fraction

from .maxplus import NEG_INF, POS_INF, to_ext


def check_weight_matrix(W, *, allow_empty: bool = False) -> tuple:
    """Validate a square weight matrix and return it as a tuple of tuples.

    Entries are coerced with :func:`~kassign.maxplus.to_ext`; ``+inf`` is
    rejected because it has no meaning for a maximization.
    """
    if hasattr(W, "tolist"):
        W = W.tolist()
    try:
        rows = [list(r) for r in W]
    except TypeError:
        raise ValueError("expected a 2-d array-like weight matrix") from None
    n = len(rows)
    if n == 0 and not allow_empty:
        raise ValueError("weight matrix is empty")
    for r in rows:
        if len(r) != n:
            raise ValueError(f"weight matrix must be square, got a row of length {len(r)} for n={n}")
    out = []
    for r in rows:
        row = tuple(to_ext(v) for v in r)
        if any(v == POS_INF for v in row):
            raise ValueError("+inf entries are not allowed; use -inf for absent edges")
        out.append(row)
    return tuple(out)


def integer_scaled(W: tuple):
    """Scale a checked matrix to integers.

    Returns ``(rows, den)`` where ``rows[i][j]`` is ``None`` for an absent
    edge and otherwise the integer ``w_ij * den``.
    """
    den = 1
    for row in W:
        for v in row:
            if v != NEG_INF and not isinstance(v, int):
                den = math.lcm(den, Fraction(v).denominator)
    scaled = [
        [None if v == NEG_INF else int(v * den) for v in row]
        for row in W
    ]
    return scaled, den


def unscale(value, den: int):
    if value is None or value == NEG_INF:
        return NEG_INF
    return to_ext(Fraction(value, den))


def check_matching(pairs, n: int) -> frozenset:
    pairs = frozenset((int(i), int(j)) for i, j in pairs)
    rows = [i for i, _ in pairs]
    cols = [j for _, j in pairs]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("matching reuses a row or a column")
    if any(not (0 <= i < n and 0 <= j < n) for i, j in pairs):
        raise ValueError("matching index out of range")
    return pairs


def matching_weight(W: tuple, pairs):
    total = 0
    for i, j in pairs:
        w = W[i][j]
        if w == NEG_INF:
            return NEG_INF
        total += w
    return to_ext(total)

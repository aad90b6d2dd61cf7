"""Semi-essential assignments between two adjacent terms.

Given optimal matchings ``M_k`` and ``M_{k+d}`` at adjacent terms of the full
characteristic maxpolynomial, their union splits into vertex-disjoint
components.  Exactly ``d`` more of them augment ``M_k`` than ``M_{k+d}``,
and every augmenting component gains the same ``G/d``.  Applying them one at
a time yields every intermediate assignment in ``O(d n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .maxplus import NEG_INF, ext_sub, to_ext
from .ssp import AssignmentSequence
from .validation import check_matching, check_weight_matrix, matching_weight


class NotAdjacent(ValueError):
    """The two matchings do not bound a run of semi-essential terms."""


@dataclass(frozen=True)
class PathDecomposition:
    """Components of ``M_a`` union ``M_b``.

    Paths are tuples of ``(row, col)`` edges in walking order.  Augmenting
    paths (both kinds) start at their row endpoint; ``gains[t]`` belongs to
    ``augmenting_fwd[t]`` and is empty when no weights were supplied.
    """

    shared: frozenset
    alternating_even: list
    augmenting_fwd: list
    augmenting_bwd: list
    gains: list = field(default_factory=list)


@dataclass(frozen=True)
class GapRecord:
    """One filled gap: anchors ``k`` and ``k + d``, total gain and path gains."""

    k: int
    d: int
    total: object
    gains: tuple


def _walk(start, nxt):
    """Follow alternating edges from ``start``; returns vertices and closure flag."""
    order = [start]
    seen = {start}
    x = start
    while True:
        y = nxt(x, order)
        if y is None:
            return order, False
        if y in seen:
            return order, True
        order.append(y)
        seen.add(y)
        x = y


def decompose(M_a, M_b, W=None) -> PathDecomposition:
    """Split ``M_a`` union ``M_b`` into shared edges, even components and augmenting paths.

    With ``W`` the gain ``w(p & M_b) - w(p & M_a)`` of every path that
    augments ``M_a`` is computed exactly.
    """
    return _decompose(M_a, M_b, None if W is None else check_weight_matrix(W))


def _decompose(M_a, M_b, W):
    M_a, M_b = frozenset(M_a), frozenset(M_b)
    shared = M_a & M_b
    only_a, only_b = M_a - shared, M_b - shared
    # each vertex has at most one edge of either side
    adj_a: dict = {}
    adj_b: dict = {}
    for i, j in only_a:
        adj_a[("u", i)] = ("v", j)
        adj_a[("v", j)] = ("u", i)
    for i, j in only_b:
        adj_b[("u", i)] = ("v", j)
        adj_b[("v", j)] = ("u", i)
    vertices = set(adj_a) | set(adj_b)
    visited: set = set()
    even, fwd, bwd = [], [], []

    def edge(x, y):
        return (x[1], y[1]) if x[0] == "u" else (y[1], x[1])

    for start in sorted(vertices):
        if start in visited:
            continue
        # an endpoint has exactly one incident edge; cycles have none
        if start in adj_a and start in adj_b:
            continue
        first_side = adj_a if start in adj_a else adj_b

        def nxt(x, order, first_side=first_side):
            side = first_side if len(order) % 2 == 1 else (adj_b if first_side is adj_a else adj_a)
            return side.get(x)

        order, _ = _walk(start, nxt)
        visited.update(order)
        edges = tuple(edge(x, y) for x, y in zip(order, order[1:]))
        n_a = sum(e in only_a for e in edges)
        n_b = len(edges) - n_a
        if order[0][0] == "v":
            edges = edges[::-1]
        if n_b == n_a + 1:
            fwd.append(edges)
        elif n_a == n_b + 1:
            bwd.append(edges)
        else:
            even.append(edges)
    # what is left are closed alternating cycles
    for start in sorted(vertices - visited):
        if start in visited:
            continue

        def nxt(x, order):
            return (adj_a if len(order) % 2 == 1 else adj_b).get(x)

        order, _ = _walk(start, nxt)
        visited.update(order)
        ring = order + [order[0]]
        even.append(tuple(edge(x, y) for x, y in zip(ring, ring[1:])))
    gains = []
    if W is not None:
        for p in fwd:
            gains.append(ext_sub(matching_weight(W, [e for e in p if e in only_b]),
                                 matching_weight(W, [e for e in p if e in only_a])))
    return PathDecomposition(shared, even, fwd, bwd, gains)


def fill_in(W, M_k, M_kd, *, record: list | None = None, k: int | None = None) -> list:
    """Matchings of cardinality ``|M_k| + 1 .. |M_kd| - 1`` between two adjacent terms.

    Raises :class:`NotAdjacent` unless every path augmenting ``M_k`` gains
    exactly ``G/d``.  When ``record`` is a list a :class:`GapRecord` is
    appended to it.
    """
    return _fill_in(check_weight_matrix(W), M_k, M_kd, record, k)


def _fill_in(W, M_k, M_kd, record, k):
    n = len(W)
    M_k, M_kd = check_matching(M_k, n), check_matching(M_kd, n)
    d = len(M_kd) - len(M_k)
    if d < 1:
        raise ValueError("the second matching must be strictly larger")
    lo, hi = matching_weight(W, M_k), matching_weight(W, M_kd)
    if NEG_INF in (lo, hi):
        raise NotAdjacent("anchor matchings must have finite weight")
    total = to_ext(hi - lo)
    dec = _decompose(M_k, M_kd, W)
    if len(dec.augmenting_fwd) - len(dec.augmenting_bwd) != d:
        raise NotAdjacent("path counts do not match the cardinality gap")
    share = to_ext(Fraction(total) / d)
    bad = [g for g in dec.gains if g != share]
    if bad:
        raise NotAdjacent(f"augmenting path gain {bad[0]} differs from G/d = {share}")
    if record is not None:
        record.append(GapRecord(len(M_k) if k is None else k, d, total, tuple(dec.gains)))
    order = sorted(range(len(dec.augmenting_fwd)),
                   key=lambda t: (-Fraction(dec.gains[t]), dec.augmenting_fwd[t][0][0]))
    current = set(M_k)
    out = []
    for t in order[: d - 1]:
        for e in dec.augmenting_fwd[t]:
            if e in current:
                current.remove(e)
            else:
                current.add(e)
        out.append(frozenset(current))
    return out


def complete_sequence(W, gk) -> AssignmentSequence:
    """Every ``k``-assignment from the essential ones reported by a parametric run.

    Gaps between consecutive reported cardinalities, including the one above
    the empty matching, are filled with :func:`fill_in`.  Cardinalities
    beyond the last report are infeasible.  The filled gaps are kept on the
    returned sequence as ``gaps``.
    """
    W = check_weight_matrix(W)
    n = len(W)
    if gk.n != n:
        raise ValueError("parametric result does not belong to this matrix")
    omegas = [0] + [NEG_INF] * n
    matchings: list = [frozenset()] + [None] * n
    for k, (omega, m) in gk.essential.items():
        omegas[k], matchings[k] = omega, frozenset(m)
    gaps: list = []
    ks = [0] + sorted(gk.essential)
    for k, k2 in zip(ks, ks[1:]):
        if k2 - k < 2:
            continue
        between = _fill_in(W, matchings[k], matchings[k2], gaps, k)
        step = Fraction(ext_sub(omegas[k2], omegas[k])) / (k2 - k)
        for i, m in enumerate(between, start=1):
            omegas[k + i] = to_ext(omegas[k] + i * step)
            matchings[k + i] = m
    return AssignmentSequence(omegas, matchings, "gk-fill", gaps=gaps)

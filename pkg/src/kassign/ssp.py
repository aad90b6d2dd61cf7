"""Successive longest augmenting paths for the whole k-assignment sequence.

Each iteration grows the matching by one edge along a best augmenting path,
so the matchings it reports are nested.  Internally the weights are negated
into costs and a Dijkstra-type label-setting search runs on reduced costs
kept non-negative by row and column potentials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .maxplus import NEG_INF, MaxPolynomial, ext_sub, term_classes
from .validation import check_weight_matrix, integer_scaled, matching_weight, unscale

_INF = float("inf")


@dataclass
class AssignmentSequence:
    """Optimal weights ``omegas[k]`` for ``k = 0..n`` with optional witnesses.

    ``omegas[0]`` is always 0 (the empty matching).  ``matchings[k]`` is a
    frozenset of 0-based ``(row, col)`` pairs or ``None`` when unavailable.
    ``gaps`` lists the filled gaps when the sequence was completed from
    essential assignments.
    """

    omegas: list
    matchings: list
    source: str
    term_class: list = field(default_factory=list)
    gaps: list = field(default_factory=list)

    def __post_init__(self):
        if not self.term_class:
            self.term_class = term_classes(self.polynomial())

    @property
    def n(self) -> int:
        return len(self.omegas) - 1

    def polynomial(self) -> MaxPolynomial:
        return MaxPolynomial(self.omegas[::-1])

    def gains(self) -> list:
        return [ext_sub(self.omegas[k], self.omegas[k - 1]) for k in range(1, len(self.omegas))]


@dataclass
class Potentials:
    row: list
    col: list


def _longest_augmenting_path(cost, n, match_row, match_col, pot_u, pot_v):
    """One label-setting search from all free rows.

    Returns ``(free_col, pred, dist, settled_cols)`` or ``None`` when no free
    column is reachable.  Columns are settled in order of distance, ties by
    lowest index.
    """
    dist = [_INF] * n
    pred = [-1] * n
    done = [False] * n
    order = []
    for i in range(n):
        if match_row[i] < 0:
            row = cost[i]
            pu = pot_u[i]
            for j in range(n):
                c = row[j]
                if c is not None:
                    d = c + pu - pot_v[j]
                    if d < dist[j]:
                        dist[j] = d
                        pred[j] = i
    rows_dist = {}
    while True:
        best, jbest = _INF, -1
        for j in range(n):
            if not done[j] and dist[j] < best:
                best, jbest = dist[j], j
        if jbest < 0:
            return None
        done[jbest] = True
        order.append(jbest)
        i = match_col[jbest]
        if i < 0:
            return jbest, pred, dist, order, rows_dist
        # matched edge (col -> row) is tight, so the row inherits the label
        rows_dist[i] = best
        row = cost[i]
        base = best + pot_u[i]
        for j in range(n):
            if done[j]:
                continue
            c = row[j]
            if c is not None:
                d = base + c - pot_v[j]
                if d < dist[j]:
                    dist[j] = d
                    pred[j] = i


def solve_sequence(W, want_matchings: bool = True) -> AssignmentSequence:
    """Exact ``k``-assignment weights for every ``k`` by successive augmentation.

    Once no augmenting path exists every larger ``k`` is infeasible and gets
    weight ``-inf``; matchings are reported up to the last finite ``k``.
    """
    W = check_weight_matrix(W)
    seq, _ = _run(W, want_matchings)
    return seq


def _run(W, want_matchings):
    n = len(W)
    scaled, den = integer_scaled(W)
    cost = [[None if w is None else -w for w in row] for row in scaled]
    finite = [c for row in cost for c in row if c is not None]
    cmin = min(finite) if finite else 0
    # free rows keep potential 0 and free columns keep a common potential
    pot_u = [0] * n
    pot_v = [cmin] * n
    match_row = [-1] * n
    match_col = [-1] * n
    omegas = [0] + [NEG_INF] * n
    matchings: list = [frozenset()] + [None] * n
    total = 0
    for k in range(1, n + 1):
        found = _longest_augmenting_path(cost, n, match_row, match_col, pot_u, pot_v)
        if found is None:
            break
        jfree, pred, dist, order, rows_dist = found
        dt = dist[jfree]
        for j in range(n):
            pot_v[j] += dist[j] if dist[j] < dt else dt
        for i in range(n):
            if match_row[i] < 0:
                continue
            pot_u[i] += rows_dist.get(i, dt)
        j = jfree
        while True:
            i = pred[j]
            prev = match_row[i]
            match_row[i] = j
            match_col[j] = i
            total -= cost[i][j]
            if prev < 0:
                break
            total += cost[i][prev]
            j = prev
        omegas[k] = unscale(total, den)
        if want_matchings:
            matchings[k] = frozenset((i, c) for i, c in enumerate(match_row) if c >= 0)
    seq = AssignmentSequence(omegas, matchings if want_matchings else [None] * (n + 1), "ssp")
    return seq, Potentials(pot_u, pot_v)


def audit_matchings(W, seq: AssignmentSequence) -> None:
    """Raise ``AssertionError`` if a reported matching has the wrong size or weight."""
    W = check_weight_matrix(W)
    for k, m in enumerate(seq.matchings):
        if m is None:
            continue
        assert len(m) == k, f"matching {k} has {len(m)} pairs"
        assert len({i for i, _ in m}) == k and len({j for _, j in m}) == k, f"matching {k} is not a matching"
        assert matching_weight(W, m) == seq.omegas[k], f"matching {k} weight mismatch"

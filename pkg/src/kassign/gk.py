"""Parametric assignment algorithm for the essential k-assignments.

The weight matrix is embedded in a residual digraph with a root ``r``,
row vertices ``u_i`` and column vertices ``v_j``.  Besides the constant edge
``u_i -> v_j`` of weight ``w_ij`` there is a parametric edge of weight ``x``
for every pair.  Starting from the all-parametric perfect matching, ``x`` is
lowered while a longest-path tree rooted at ``r`` is maintained.  Each pivot
either re-hangs a subtree or closes a cycle of positive weight; a cycle
trades ``d`` matched parametric edges for constant ones and reveals a
max-plus singular value of multiplicity ``d``.

Vertex weights are affine in ``x`` and stored as pairs ``(c, m)`` meaning
``c + m*x``.  Weights are scaled to integers, keys are fractions
``num/den`` with ``den > 0`` (``den == 0`` encodes ``-inf``) and every
comparison is an exact cross-multiplication.  The per-pivot key
maintenance is vectorized with numpy; when the scaled weights are too large
for int64 products the same code runs on object arrays of Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .maxplus import NEG_INF, fmt, to_ext
from .validation import check_weight_matrix, integer_scaled, unscale

CONST, PARAM = 0, 1

_INT64_SAFE = 2**62
_FLOAT_SAFE = 2**52


class InvariantBreach(AssertionError):
    """The longest-path tree or its keys failed an audit."""


class NonPositiveMultiplicity(AssertionError):
    """A cycle with a non-positive multiplicity was found."""


@dataclass(frozen=True)
class ParametricWeight:
    c: object
    m: int

    def at(self, x):
        return self.c + self.m * x


@dataclass(frozen=True)
class SingularValue:
    value: object
    multiplicity: int


@dataclass
class TreeUpdated:
    q: int
    edge: tuple
    key: Fraction


@dataclass
class CycleFound:
    q: int
    edge: tuple
    key: Fraction
    cycle: list


@dataclass
class GKResult:
    """Output of :func:`run`.

    ``essential`` maps each reported cardinality ``k`` to ``(omega_k,
    matching)``.  ``singular_values`` is sorted non-increasingly with equal
    values merged; its multiplicities sum to ``n``.  ``events`` lists the
    raw ``(b, d)`` pairs of the cycle events in order.
    """

    n: int
    essential: dict
    singular_values: list
    events: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    pivots: int = 0

    @property
    def reported(self) -> list:
        return sorted(self.essential)


def _greater(an, ad, bn, bd):
    """Elementwise ``a > b`` for fractions with ``den == 0`` meaning ``-inf``."""
    afin = ad > 0
    return afin & ((bd <= 0) | (an * bd > bn * ad))


def _equal(an, ad, bn, bd):
    afin, bfin = ad > 0, bd > 0
    return (afin & bfin & (an * bd == bn * ad)) | (~afin & ~bfin)


def _argmax_rows(num, den, fast=False):
    """Exact argmax along axis 0 with ties to the lowest index.

    Returns ``(index, finite)`` arrays, one entry per column.  With ``fast``
    the caller guarantees that float division is injective and monotone on
    every key that can occur, so the float argmax is already exact.
    """
    fin = den > 0
    approx = np.full(num.shape, -np.inf)
    if num.dtype == object:
        num, den = num.astype(float), den.astype(float)
    np.divide(num, den, out=approx, where=fin, dtype=float)
    top = approx.argmax(axis=0)
    if fast:
        return top, fin.any(axis=0)
    cols = np.arange(num.shape[1])
    tn, td = num[top, cols], den[top, cols]
    beaten = _greater(num, den, tn[None, :], td[None, :]).any(axis=0)
    # float ordering disagreed with the exact one; settle those columns exactly
    for c in np.flatnonzero(beaten):
        best = None
        for r in range(num.shape[0]):
            if den[r, c] > 0 and (best is None or num[r, c] * den[best, c] > num[best, c] * den[r, c]):
                best = r
        tn[c], td[c] = num[best, c], den[best, c]
    first = _equal(num, den, tn[None, :], td[None, :]).argmax(axis=0)
    return first, fin.any(axis=0)


class GKState:
    """Residual graph, longest-path tree and vertex keys of one run.

    Vertex ids: ``0`` is the root, ``1 + i`` is row ``u_i`` and
    ``1 + n + j`` is column ``v_j`` (0-based ``i``, ``j``).  The pivot is the
    vertex of largest key, ties to the lowest id; its pivot edge is the
    incoming edge of largest key, ties to the lowest tail, constant before
    parametric.
    """

    def __init__(self, W, *, audit: bool = False, trace: bool = False):
        W = check_weight_matrix(W)
        self.n = n = len(W)
        scaled, self.den = integer_scaled(W)
        self.audit = audit
        self.tracing = trace
        self.trace: list = []
        self.k = 0
        self.pivots = 0
        finite = [w for row in scaled for w in row if w is not None]
        wmax = max((abs(w) for w in finite), default=0)
        self.dtype = np.int64 if 16 * (n + 1) ** 2 * (wmax + 1) < _INT64_SAFE else object
        # distinct keys differ by at least 1/(2n+1)^2, so floats order them exactly
        self._fast = 32 * (n + 1) ** 3 * (wmax + 1) < _FLOAT_SAFE
        dt = self.dtype
        self.ok = np.array([[w is not None for w in row] for row in scaled], dtype=bool).reshape(n, n)
        self.Wv = np.array([[0 if w is None else w for w in row] for row in scaled], dtype=dt).reshape(n, n)
        # scaled starting bound, strictly above every entry
        self.b = Fraction(max(finite) + self.den) if finite else Fraction(0)
        # perfect matching of parametric diagonal edges
        self.mate_u = np.arange(n)
        self.kind_u = np.full(n, PARAM)
        self.mate_v = np.arange(n)
        self.kind_v = np.full(n, PARAM)
        # every u_i hangs off the root, v_1 off u_2 and the other v's off u_1
        self.u_root = np.ones(n, dtype=bool)
        self.par_i = np.zeros(n, dtype=np.int64)
        self.par_k = np.full(n, PARAM)
        self.children_u = [set() for _ in range(n)]
        self.cu = np.zeros(n, dtype=dt)
        self.mu = np.zeros(n, dtype=np.int64)
        self.cv = np.zeros(n, dtype=dt)
        self.mv = np.ones(n, dtype=np.int64)
        self.reachable_v = np.ones(n, dtype=bool)
        if n == 1:
            self.par_k[0] = CONST
            if self.ok[0, 0]:
                self.cv[0], self.mv[0] = self.Wv[0, 0], 0
                self.children_u[0].add(0)
            else:
                self.reachable_v[0] = False
        else:
            self.par_i[0] = 1
            self.children_u[1].add(0)
            for j in range(1, n):
                self.children_u[0].add(j)
        self._all = np.arange(n)
        self._pos = np.full(n, -1, dtype=np.int64)
        # parent vertex ids, -1 for none, mirrored for fast ancestor walks
        self.pv = [-1] * (2 * n + 1)
        for x in range(1, 2 * n + 1):
            p = self.parent(x)
            self.pv[x] = -1 if p is None else p
        self.ukn = np.zeros(n, dtype=dt)
        self.ukd = np.zeros(n, dtype=dt)
        self.vkn = np.zeros(n, dtype=dt)
        self.vkd = np.zeros(n, dtype=dt)
        self.vsrc = np.zeros(n, dtype=np.int64)  # 2*i + kind
        self._refresh_u_keys()
        self._recompute_columns(np.arange(n))

    # -- naming and views ---------------------------------------------
    def name(self, vid: int) -> str:
        if vid == 0:
            return "r"
        if vid <= self.n:
            return f"u{vid}"
        return f"v{vid - self.n}"

    def weight(self, vid: int) -> ParametricWeight:
        if vid == 0:
            return ParametricWeight(0, 0)
        if vid <= self.n:
            i = vid - 1
            return ParametricWeight(unscale(int(self.cu[i]), self.den), int(self.mu[i]))
        j = vid - 1 - self.n
        if not self.reachable_v[j]:
            return ParametricWeight(NEG_INF, 0)
        return ParametricWeight(unscale(int(self.cv[j]), self.den), int(self.mv[j]))

    def vertex_key(self, vid: int):
        """Current key in the original units; ``NEG_INF`` if none."""
        if vid <= self.n:
            num, den = self.ukn[vid - 1], self.ukd[vid - 1]
        else:
            num, den = self.vkn[vid - 1 - self.n], self.vkd[vid - 1 - self.n]
        if den <= 0:
            return NEG_INF
        return to_ext(Fraction(int(num), int(den) * self.den))

    def edge_key(self, tail: int, head: int, kind: Optional[int] = None):
        """Key of the non-tree edge ``tail -> head`` in original units.

        ``kind`` selects between the parallel constant and parametric
        ``u -> v`` edges.  Tree edges, absent edges and edges whose
        denominator is not positive have key ``NEG_INF``.
        """
        n = self.n
        if head <= n:
            i = head - 1
            if tail == 0:
                if self.u_root[i]:
                    return NEG_INF
                num, den = -self.cu[i], self.mu[i]
            else:
                j = tail - 1 - n
                if self.mate_u[i] != j or not self.u_root[i] or not self.reachable_v[j]:
                    return NEG_INF
                ce, me = self._back(i)
                num = self.cv[j] + ce - self.cu[i]
                den = self.mu[i] - self.mv[j] - me
        else:
            j, i = head - 1 - n, tail - 1
            if not self.reachable_v[j]:
                return NEG_INF
            if (self.par_i[j], self.par_k[j]) == (i, kind) or (self.mate_v[j], self.kind_v[j]) == (i, kind):
                return NEG_INF
            if kind == CONST:
                if not self.ok[i, j]:
                    return NEG_INF
                ce, me = self.Wv[i, j], 0
            else:
                ce, me = 0, 1
            num = self.cu[i] + ce - self.cv[j]
            den = self.mv[j] - self.mu[i] - me
        if den <= 0:
            return NEG_INF
        return to_ext(Fraction(int(num), int(den) * self.den))

    # -- edges --------------------------------------------------------
    def _back(self, i):
        """Constant part and slope of the matched edge ``v_{mate(i)} -> u_i``."""
        if self.kind_u[i] == CONST:
            return -self.Wv[i, self.mate_u[i]], 0
        return 0, -1

    def _fwd(self, i, j, kind):
        if kind == CONST:
            return self.Wv[i, j], 0
        return 0, 1

    # -- keys ---------------------------------------------------------
    def _refresh_u_keys(self):
        j = self.mate_u
        const = self.kind_u == CONST
        rows = np.arange(self.n)
        ce = np.where(const, -self.Wv[rows, j], 0)
        me = np.where(const, 0, -1)
        num = np.where(self.u_root, self.cv[j] + ce - self.cu, -self.cu)
        den = np.where(self.u_root, self.mu - self.mv[j] - me, self.mu)
        den = np.where(self.u_root & ~self.reachable_v[j], 0, den)
        den = np.where(den > 0, den, 0)
        self.ukn = num.astype(self.dtype)
        self.ukd = den.astype(self.dtype)

    def _block(self, rows, cols):
        """Keys of the edges from ``rows`` (``None`` for all) into ``cols``.

        Returns ``(num, den)`` of shape ``(2*len(rows), len(cols))`` where row
        ``2*t + kind`` holds the edge of that kind from ``rows[t]``.  Tree
        and matched edges are not candidates and get ``den == 0``.
        """
        if rows is None:
            rows = self._all
            w, ok = self.Wv[:, cols], self.ok[:, cols]
        else:
            w, ok = self.Wv[np.ix_(rows, cols)], self.ok[np.ix_(rows, cols)]
        R, C = len(rows), len(cols)
        cu = self.cu[rows][:, None]
        base = cu - self.cv[cols][None, :]
        dm = self.mv[cols][None, :] - self.mu[rows][:, None]
        num = np.empty((2 * R, C), dtype=self.dtype)
        den = np.empty((2 * R, C), dtype=self.dtype)
        num[0::2] = base + w
        num[1::2] = base
        den[0::2] = np.where(ok, dm, 0)
        den[1::2] = dm - 1
        pos = self._pos
        pos[rows] = np.arange(R)
        idx = np.arange(C)
        for ii, kk in ((self.par_i[cols], self.par_k[cols]), (self.mate_v[cols], self.kind_v[cols])):
            t = pos[ii]
            hit = t >= 0
            den[2 * t[hit] + kk[hit], idx[hit]] = 0
        pos[rows] = -1
        np.maximum(den, 0, out=den)
        return num, den

    def _recompute_columns(self, cols):
        cols = np.asarray(cols, dtype=np.int64)
        if cols.size == 0:
            return
        num, den = self._block(None, cols)
        best, fin = _argmax_rows(num, den, self._fast)
        idx = np.arange(cols.size)
        self.vkn[cols] = np.where(fin, num[best, idx], 0)
        self.vkd[cols] = np.where(fin, den[best, idx], 0)
        self.vsrc[cols] = best

    def _merge_rows(self, rows, cols):
        """Fold the edges from ``rows`` into the current keys of ``cols``."""
        rows = np.array(sorted(rows), dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.size == 0 or cols.size == 0:
            return
        num, den = self._block(rows, cols)
        best, fin = _argmax_rows(num, den, self._fast)
        idx = np.arange(cols.size)
        cn, cd = num[best, idx], den[best, idx]
        src = 2 * rows[best // 2] + best % 2
        bn, bd, bs = self.vkn[cols], self.vkd[cols], self.vsrc[cols]
        better = fin & (_greater(cn, cd, bn, bd) | (_equal(cn, cd, bn, bd) & (src < bs)))
        sel = cols[better]
        self.vkn[sel], self.vkd[sel], self.vsrc[sel] = cn[better], cd[better], src[better]

    def _refresh_keys(self, moved: list, *, monotone: bool) -> None:
        """Update keys after the weights of the subtree ``moved`` changed.

        Columns inside the subtree are recomputed.  Outside it only edges
        leaving the subtree changed.  After a plain re-hang those keys can
        only grow, so folding them in is exact; after a cycle, columns whose
        best edge left the subtree are recomputed too.
        """
        n = self.n
        self._refresh_u_keys()
        rows = [x - 1 for x in moved if x <= n]
        inside = np.zeros(n, dtype=bool)
        for x in moved:
            if x > n:
                inside[x - 1 - n] = True
        redo = inside.copy()
        if rows and not monotone:
            src_row = self.vsrc // 2
            redo |= np.isin(src_row, rows) & (self.vkd > 0)
        self._recompute_columns(np.flatnonzero(redo))
        if rows:
            self._merge_rows(rows, np.flatnonzero(~redo))

    # -- tree ---------------------------------------------------------
    def parent(self, vid: int) -> Optional[int]:
        n = self.n
        if vid == 0:
            return None
        if vid <= n:
            i = vid - 1
            return 0 if self.u_root[i] else 1 + n + int(self.mate_u[i])
        j = vid - 1 - n
        if not self.reachable_v[j]:
            return None
        return 1 + int(self.par_i[j])

    def children(self, vid: int) -> list:
        n = self.n
        if vid == 0:
            return [1 + i for i in range(n) if self.u_root[i]]
        if vid <= n:
            return [1 + n + j for j in sorted(self.children_u[vid - 1])]
        j = vid - 1 - n
        i = int(self.mate_v[j])
        if self.reachable_v[j] and not self.u_root[i]:
            return [1 + i]
        return []

    def subtree(self, vid: int) -> list:
        out, stack = [], [vid]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children(x))
        return out

    def _refresh_weights(self, top: int) -> list:
        """Recompute path weights below ``top`` (inclusive); returns the subtree."""
        n = self.n
        order = self.subtree(top)
        cu, mu, cv, mv = self.cu, self.mu, self.cv, self.mv
        for x in order:
            if x <= n:
                i = x - 1
                if self.u_root[i]:
                    cu[i], mu[i] = 0, 0
                else:
                    j = self.mate_u[i]
                    ce, me = self._back(i)
                    cu[i], mu[i] = cv[j] + ce, mv[j] + me
            else:
                j = x - 1 - n
                i, kind = self.par_i[j], self.par_k[j]
                ce, me = self._fwd(i, j, kind)
                cv[j], mv[j] = cu[i] + ce, mu[i] + me
        return order

    # -- pivoting -----------------------------------------------------
    def _pivot_vertex(self):
        num = np.concatenate([self.ukn, self.vkn])
        den = np.concatenate([self.ukd, self.vkd])
        best, fin = _argmax_rows(num[:, None], den[:, None], self._fast)
        if not fin[0]:
            return None, None
        t = int(best[0])
        return Fraction(int(num[t]), int(den[t])), t + 1

    def pivot_step(self):
        """Apply one pivot.

        Returns :class:`TreeUpdated` after a re-hang, :class:`CycleFound`
        (not yet applied, see :meth:`apply_cycle`) when the pivot edge closes
        a cycle, or ``None`` when no finite key is left.
        """
        key, q = self._pivot_vertex()
        if key is None:
            self.b = None
            return None
        self.b = key
        self.pivots += 1
        n = self.n
        if q <= n:
            i = q - 1
            if self.u_root[i]:
                tail, kind = 1 + n + int(self.mate_u[i]), int(self.kind_u[i])
            else:
                tail, kind = 0, None
        else:
            src = int(self.vsrc[q - 1 - n])
            tail, kind = 1 + src // 2, src % 2
        edge = (tail, q, kind)
        if self.tracing:
            self.trace.append(
                f"PIVOT q={self.name(q)} e={self.name(tail)}->{self.name(q)} "
                f"key={fmt(to_ext(key / self.den))}"
            )
        pv = self.pv
        x = tail
        while x >= 0 and x != q:
            x = pv[x]
        if x < 0:
            self._rehang(q, tail, kind)
            moved = self._refresh_weights(q)
            self._refresh_keys(moved, monotone=True)
            if self.audit:
                self.check()
            return TreeUpdated(q, edge, key)
        path = [tail]
        while path[-1] != q:
            path.append(pv[path[-1]])
        return CycleFound(q, edge, key, path[::-1])

    def _rehang(self, q, tail, kind):
        n = self.n
        self.pv[q] = tail
        if q <= n:
            self.u_root[q - 1] = tail == 0
            return
        j = q - 1 - n
        self.children_u[int(self.par_i[j])].discard(j)
        self.par_i[j], self.par_k[j] = tail - 1, kind
        self.children_u[tail - 1].add(j)

    def apply_cycle(self, found: CycleFound):
        """Exchange the matching along the cycle.

        Returns ``(SingularValue, k_new, matching)`` where ``matching`` holds
        the constant edges of the new perfect matching as 0-based pairs.
        """
        n = self.n
        cyc = found.cycle
        q, tail = cyc[0], cyc[-1]
        edges = []
        for a, b in zip(cyc, cyc[1:]):
            if a <= n:
                edges.append((a, b, int(self.par_k[b - 1 - n])))
            else:
                edges.append((a, b, int(self.kind_u[b - 1])))
        edges.append(found.edge)
        msum = 0
        fwd, back = [], {}
        for a, b, kind in edges:
            if a <= n:
                fwd.append((a - 1, b - 1 - n, kind))
                msum += kind == PARAM
            else:
                back[(b - 1, a - 1 - n)] = kind
                msum -= kind == PARAM
        d = -msum
        if d <= 0:
            raise NonPositiveMultiplicity(f"cycle through {self.name(q)} has multiplicity {d}")
        old_parent = {x: self.parent(x) for x in cyc[1:]}
        for i, j, kind in fwd:
            self.mate_u[i], self.kind_u[i] = j, kind
            self.mate_v[j], self.kind_v[j] = i, kind
        # new tree path q -> tail -> q_{t-1} -> ... -> q_1
        new_parent = {tail: q}
        for s in range(1, len(cyc) - 1):
            new_parent[cyc[s]] = cyc[s + 1]
        for x, p in new_parent.items():
            if x <= n:
                self.u_root[x - 1] = False
            else:
                j = x - 1 - n
                self.children_u[old_parent[x] - 1].discard(j)
                i = p - 1
                # the edge v_j -> u_i just left the matching and now points forward
                self.par_i[j], self.par_k[j] = i, back[(i, j)]
                self.children_u[i].add(j)
        for x in cyc[1:]:
            self.pv[x] = self.parent(x)
        self.k += d
        moved = self._refresh_weights(q)
        self._refresh_keys(moved, monotone=False)
        if self.audit:
            self.check()
        const = np.flatnonzero(self.kind_u == CONST)
        matching = frozenset((int(i), int(self.mate_u[i])) for i in const)
        if len(matching) != self.k:
            raise NonPositiveMultiplicity(f"matching has {len(matching)} constant edges, expected {self.k}")
        value = to_ext(found.key / self.den)
        if self.tracing:
            self.trace.append(f"CYCLE b={fmt(value)} d={d} k={self.k}")
        return SingularValue(value, d), self.k, matching

    # -- audits -------------------------------------------------------
    def _is_edge(self, tail, head, kind) -> bool:
        n = self.n
        if tail == 0:
            return 0 < head <= n and kind is None
        if tail <= n:
            return head > n and kind in (CONST, PARAM)
        return 0 < head <= n and kind is None

    def _is_nontree_edge(self, tail, head, kind) -> bool:
        n = self.n
        if head <= n:
            i = head - 1
            if tail == 0:
                return not self.u_root[i]
            return self.mate_u[i] == tail - 1 - n and self.u_root[i]
        i, j = tail - 1, head - 1 - n
        if kind == CONST and not self.ok[i, j]:
            return False
        if (self.mate_v[j], self.kind_v[j]) == (i, kind):
            return False
        return (self.par_i[j], self.par_k[j]) != (i, kind)

    def _edge_weight(self, tail, head, kind):
        n = self.n
        if tail == 0:
            return 0, 0
        if head <= n:
            ce, me = self._back(head - 1)
        else:
            ce, me = self._fwd(tail - 1, head - 1 - n, kind)
        return unscale(int(ce), self.den), int(me)

    def _incoming(self, head):
        for tail in range(0, 2 * self.n + 1):
            for kind in (None, CONST, PARAM):
                if self._is_edge(tail, head, kind) and self._is_nontree_edge(tail, head, kind):
                    yield tail, kind

    def check(self) -> None:
        """Audit weights, keys and the longest-path property by brute force."""
        n = self.n
        cu, mu, cv, mv = self.cu, self.mu, self.cv, self.mv
        for i in range(n):
            if self.u_root[i]:
                want = (0, 0)
            else:
                j = self.mate_u[i]
                ce, me = self._back(i)
                want = (cv[j] + ce, mv[j] + me)
            if (cu[i], mu[i]) != want:
                raise InvariantBreach(f"stale weight at u{i + 1}")
        for j in range(n):
            if not self.reachable_v[j]:
                continue
            i, kind = self.par_i[j], self.par_k[j]
            ce, me = self._fwd(i, j, kind)
            if (cv[j], mv[j]) != (cu[i] + ce, mu[i] + me):
                raise InvariantBreach(f"stale weight at v{j + 1}")
        # keys against a direct scan of every incoming edge, ties included
        for head in range(1, 2 * n + 1):
            best, arg = NEG_INF, None
            for tail, kind in self._incoming(head):
                key = self.edge_key(tail, head, kind)
                if key != NEG_INF and (best == NEG_INF or key > best):
                    best, arg = key, (tail, kind)
            if best != self.vertex_key(head):
                raise InvariantBreach(f"stale key at {self.name(head)}")
            if head > n and arg is not None and int(self.vsrc[head - 1 - n]) != 2 * (arg[0] - 1) + arg[1]:
                raise InvariantBreach(f"pivot edge tie-break broken at {self.name(head)}")
        if self.b is None:
            return
        b = self.b / self.den
        # no non-tree edge beats the tree path just below b, unless its head
        # is itself due for a pivot at b
        for head in range(1, 2 * n + 1):
            wq = self.weight(head)
            if wq.c == NEG_INF:
                continue
            for tail, kind in self._incoming(head):
                wp = self.weight(tail)
                ce, me = self._edge_weight(tail, head, kind)
                if wp.c == NEG_INF or ce == NEG_INF:
                    continue
                if kind == CONST and not self.ok[tail - 1, head - 1 - n]:
                    continue
                lhs, slope = wp.c + ce, wp.m + me
                at_b = (lhs + slope * b) - wq.at(b)
                if at_b > 0 or (at_b == 0 and slope < wq.m and self.vertex_key(head) != b):
                    raise InvariantBreach(
                        f"non-tree edge {self.name(tail)}->{self.name(head)} overtakes the tree at b"
                    )


def edge_key(cp, mp, ce, me, cq, mq):
    """Parameter value below which ``p -> q`` beats the tree path to ``q``.

    Arguments are the constant parts and slopes of the tail, the edge and the
    head.  Returns ``NEG_INF`` when the denominator is not positive or a
    constant part is ``-inf``.
    """
    if NEG_INF in (cp, ce, cq):
        return NEG_INF
    den = mq - mp - me
    if den <= 0:
        return NEG_INF
    return to_ext(Fraction(cp + ce - cq) / den)


def merge_singular_values(events) -> list:
    """Merge ``(value, d)`` events with equal values, sorted non-increasingly."""
    out: list = []
    for value, d in sorted(events, key=lambda e: e[0], reverse=True):
        if out and out[-1][0] == value:
            out[-1][1] += d
        else:
            out.append([value, d])
    return [SingularValue(v, d) for v, d in out]


def run(W, *, audit: bool = False, trace: bool = False) -> GKResult:
    """Essential k-assignments and max-plus singular values of ``W``.

    Pivots until all ``n`` matched edges are constant or no finite key is
    left; in the latter case a ``-inf`` singular value takes the missing
    multiplicity.
    """
    W = check_weight_matrix(W)
    state = GKState(W, audit=audit, trace=trace)
    n = state.n
    essential: dict = {}
    events: list = []
    while state.k < n and state.b is not None:
        outcome = state.pivot_step()
        if isinstance(outcome, CycleFound):
            sv, k, matching = state.apply_cycle(outcome)
            omega = 0
            for i, j in matching:
                omega += W[i][j]
            essential[k] = (to_ext(omega), matching)
            events.append((sv.value, sv.multiplicity))
    values = list(events)
    if state.k < n:
        values.append((NEG_INF, n - state.k))
    return GKResult(
        n=n,
        essential=essential,
        singular_values=merge_singular_values(values),
        events=events,
        trace=state.trace,
        pivots=state.pivots,
    )

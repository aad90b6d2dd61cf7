"""Estimator front end in the scikit-learn style."""
from __future__ import annotations

import time

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .completion import complete_sequence
from .gk import run as gk_run
from .instance import InstanceSpec, normalize
from .maxplus import DEFAULT_BRUTE_FORCE_BOUND, NEG_INF, POS_INF, TermClass, roots, to_ext
from .oracle import brute_force_k
from .ssp import AssignmentSequence, solve_sequence

ALGORITHMS = ("auto", "brute", "ssp", "gk", "gk-fill")


def omegas_from_singular_values(singular_values) -> list:
    """``omega_k`` is the sum of the ``k`` largest singular values."""
    out = [0]
    for sv in singular_values:
        for _ in range(sv.multiplicity):
            out.append(NEG_INF if NEG_INF in (out[-1], sv.value) else to_ext(out[-1] + sv.value))
    return out


def solve(W, algorithm: str, *, brute_force_bound: int = DEFAULT_BRUTE_FORCE_BOUND,
          audit: bool = False, trace: bool = False):
    """Run one pipeline on a square max matrix.

    Returns ``(sequence, gk_result_or_None, timings)``; ``timings`` maps a
    phase name to seconds.
    """
    n = len(W)
    if algorithm == "auto":
        algorithm = "brute" if n <= brute_force_bound else "gk-fill"
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    timings: dict = {}
    gk = None
    t0 = time.perf_counter()
    if algorithm == "brute":
        results = [brute_force_k(W, k, brute_force_bound) for k in range(n + 1)]
        omegas = [w for w, _ in results]
        matchings = [m if w != NEG_INF else None for w, m in results]
        seq = AssignmentSequence(omegas, matchings, "brute")
        timings["brute"] = time.perf_counter() - t0
    elif algorithm == "ssp":
        seq = solve_sequence(W)
        timings["ssp"] = time.perf_counter() - t0
    else:
        gk = gk_run(W, audit=audit, trace=trace)
        timings["gk"] = time.perf_counter() - t0
        if algorithm == "gk":
            matchings = [frozenset()] + [None] * n
            for k, (_, m) in gk.essential.items():
                matchings[k] = m
            seq = AssignmentSequence(omegas_from_singular_values(gk.singular_values), matchings, "gk")
        else:
            t1 = time.perf_counter()
            seq = complete_sequence(W, gk)
            timings["fill_in"] = time.perf_counter() - t1
    return seq, gk, timings


class KAssignment(BaseEstimator):
    """Optimal assignments of every cardinality for one weight matrix.

    Parameters
    ----------
    algorithm : {"auto", "brute", "ssp", "gk", "gk-fill"}
        ``auto`` uses the exhaustive oracle up to ``brute_force_bound`` rows
        and the parametric pipeline with completion above it.  ``gk`` alone
        yields all weights but matchings only for the reported cardinalities.
    objective : {"max", "min"}
        Direction of optimization.  Rectangular inputs are padded with
        infeasible dummies.
    brute_force_bound : int
        Largest size the oracle accepts.
    audit : bool
        Run the parametric invariant checks after every pivot (slow).
    trace : bool
        Keep the parametric event trace in ``trace_``.

    Attributes
    ----------
    omegas_ : list
        ``omegas_[k]`` is the optimal weight of a ``k``-matching in the
        original objective; infeasible ``k`` get ``-inf`` (max) or ``inf``
        (min).
    matchings_ : list
        0-based ``(row, col)`` frozensets, ``None`` where unavailable.
    polynomial_ : MaxPolynomial
        Full characteristic maxpolynomial of the normalized max matrix.
    singular_values_ : list of (value, multiplicity)
    term_classes_ : list
        Class of the ``omega_k`` term, indexed by ``k``.
    essential_ : list
        Cardinalities whose term is essential.
    reported_ : list or None
        Cardinalities reported by the parametric run, if one was made.
    timings_ : dict
        Seconds per phase.
    """

    def __init__(self, algorithm="auto", objective="max", brute_force_bound=DEFAULT_BRUTE_FORCE_BOUND,
                 audit=False, trace=False):
        self.algorithm = algorithm
        self.objective = objective
        self.brute_force_bound = brute_force_bound
        self.audit = audit
        self.trace = trace

    def fit(self, X, y=None):
        if self.objective not in ("max", "min"):
            raise ValueError(f"objective must be 'max' or 'min', got {self.objective!r}")
        if hasattr(X, "tolist"):
            X = X.tolist()
        rows = [[to_ext(v) for v in r] for r in X]
        if not rows or not rows[0]:
            raise ValueError("weight matrix is empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("weight matrix rows differ in length")
        absent = POS_INF if self.objective == "min" else NEG_INF
        forbidden = NEG_INF if self.objective == "min" else POS_INF
        if any(v == forbidden for r in rows for v in r):
            raise ValueError(f"{forbidden} is not an infeasible marker for a {self.objective} instance")
        spec = InstanceSpec(len(rows), len(rows[0]), self.objective,
                            tuple(tuple(absent if v == absent else v for v in r) for r in rows))
        W, transform = normalize(spec)
        seq, gk, timings = solve(W, self.algorithm, brute_force_bound=self.brute_force_bound,
                                 audit=self.audit, trace=self.trace)
        n = seq.n
        self.sequence_ = seq
        self.omegas_ = [transform.weight(w) for w in seq.omegas]
        self.matchings_ = [None if m is None else transform.matching(m) for m in seq.matchings]
        self.polynomial_ = seq.polynomial()
        if gk is not None:
            self.singular_values_ = [(sv.value, sv.multiplicity) for sv in gk.singular_values]
            self.reported_ = gk.reported
            self.trace_ = gk.trace
        else:
            self.singular_values_ = roots(self.polynomial_)[::-1]
            self.reported_ = None
            self.trace_ = []
        self.term_classes_ = [seq.term_class[n - k] for k in range(n + 1)]
        self.essential_ = [k for k in range(1, n + 1) if self.term_classes_[k] == TermClass.ESSENTIAL]
        self.timings_ = timings
        self.transform_ = transform
        return self

    def predict(self, K):
        """Optimal weights for the cardinalities in ``K``."""
        check_is_fitted(self, "omegas_")
        if isinstance(K, int):
            return self.omegas_[K]
        return [self.omegas_[int(k)] for k in K]

    def fit_predict(self, X, K=None):
        self.fit(X)
        return list(self.omegas_) if K is None else self.predict(K)

    def matching(self, k: int):
        check_is_fitted(self, "matchings_")
        return self.matchings_[k]

    def gains(self) -> list:
        """Marginal gains ``omega_k - omega_{k-1}`` of the normalized max problem."""
        check_is_fitted(self, "sequence_")
        return self.sequence_.gains()

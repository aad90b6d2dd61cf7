"""Instance files, rectangular padding, min/max transform and generation.

File format::

    # comment lines start with '#'
    max 2 3
    0 1.5 -inf
    4 -2 7

The header names the objective (``max`` or ``min``) and the row and column
counts.  Each body row holds ``cols`` tokens: a decimal, ``-inf`` (an absent
edge in a ``max`` instance) or ``inf`` (an absent edge in a ``min``
instance).  ``p/q`` rationals are accepted as well so that any exact matrix
round-trips.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .maxplus import NEG_INF, POS_INF, ExtReal, fmt, to_ext

GENERATOR_ID = "numpy.PCG64"

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, reason: str):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"line {line}, column {column}: {reason}")


@dataclass(frozen=True)
class InstanceSpec:
    rows: int
    cols: int
    objective: str
    entries: tuple

    def __post_init__(self):
        if self.objective not in ("max", "min"):
            raise ValueError(f"objective must be 'max' or 'min', got {self.objective!r}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("an instance needs at least one row and one column")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")


@dataclass(frozen=True)
class Transform:
    """Records how an :class:`InstanceSpec` was turned into a square max matrix."""

    objective: str = "max"
    rows: int = 0
    cols: int = 0

    @property
    def negated(self) -> bool:
        return self.objective == "min"

    def weight(self, value: ExtReal) -> ExtReal:
        """Map a weight of the normalized max instance back to the original objective."""
        if not self.negated:
            return value
        return POS_INF if value == NEG_INF else to_ext(-value)

    def matching(self, pairs) -> frozenset:
        """Drop pairs that touch padding rows or columns."""
        return frozenset((i, j) for i, j in pairs if i < self.rows and j < self.cols)


def _token(tok: str, objective: str, line: int, col: int) -> ExtReal:
    low = tok.lower()
    if low in ("-inf", "inf", "+inf"):
        neg = low == "-inf"
        if neg != (objective == "max"):
            raise ParseError(line, col, f"'{tok}' is not an infeasible marker for a {objective} instance")
        return NEG_INF if neg else POS_INF
    if not _NUMBER.match(tok):
        raise ParseError(line, col, f"malformed number {tok!r}")
    try:
        return to_ext(Fraction(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(line, col, str(exc)) from None


def _split(raw: str):
    # yields (column, token) with 1-based columns
    for m in re.finditer(r"\S+", raw):
        yield m.start() + 1, m.group()


def parse(text) -> InstanceSpec:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    header = None
    body: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_split(raw))
        if header is None:
            if len(toks) != 3:
                raise ParseError(lineno, 1, "header must be '<max|min> <rows> <cols>'")
            (c0, obj), (c1, r), (c2, c) = toks
            obj = obj.lower()
            if obj not in ("max", "min"):
                raise ParseError(lineno, c0, f"unknown objective {obj!r}")
            for col, val in ((c1, r), (c2, c)):
                if not val.isdigit() or int(val) < 1:
                    raise ParseError(lineno, col, f"dimension must be a positive integer, got {val!r}")
            header = (obj, int(r), int(c))
            continue
        obj, rows, cols = header
        if len(body) == rows:
            raise ParseError(lineno, 1, f"more than {rows} data rows")
        if len(toks) != cols:
            col = toks[cols][0] if len(toks) > cols else len(raw) + 1
            raise ParseError(lineno, col, f"expected {cols} entries, found {len(toks)}")
        body.append(tuple(_token(t, obj, lineno, col) for col, t in toks))
    if header is None:
        raise ParseError(1, 1, "missing header")
    obj, rows, cols = header
    if len(body) != rows:
        raise ParseError(lineno + 1 if text else 1, 1, f"expected {rows} data rows, found {len(body)}")
    return InstanceSpec(rows, cols, obj, tuple(body))


def serialize(spec: InstanceSpec, comments: Optional[list] = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    lines.append(f"{spec.objective} {spec.rows} {spec.cols}")
    for row in spec.entries:
        lines.append(" ".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def normalize(spec: InstanceSpec):
    """Square max-objective matrix plus the :class:`Transform` that undoes it.

    Rectangular instances are padded with infeasible dummy rows or columns;
    min instances are negated so that every solver maximizes.
    """
    n = max(spec.rows, spec.cols)
    neg = spec.objective == "min"
    W = [[NEG_INF] * n for _ in range(n)]
    for i, row in enumerate(spec.entries):
        for j, v in enumerate(row):
            if v in (NEG_INF, POS_INF):
                continue
            W[i][j] = to_ext(-v) if neg else v
    return tuple(tuple(r) for r in W), Transform(spec.objective, spec.rows, spec.cols)


def generate(n: int, lo: int, hi: int, neginf_density=0, seed: int = 0):
    """Random ``n x n`` integer matrix, deterministic in ``seed``.

    Uses numpy's PCG64 bit generator.  Each entry is ``-inf`` with
    probability ``neginf_density`` and otherwise uniform on ``[lo, hi]``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    density = float(Fraction(neginf_density))
    if not 0 <= density <= 1:
        raise ValueError("neginf_density must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    absent = rng.random((n, n)) < density
    values = rng.integers(lo, hi, size=(n, n), endpoint=True)
    return tuple(
        tuple(NEG_INF if absent[i, j] else int(values[i, j]) for j in range(n))
        for i in range(n)
    )

"""Max-plus scalars and univariate maxpolynomials.

Finite scalars are exact rationals (``int`` or :class:`fractions.Fraction`);
the additive identity of the semifield is ``NEG_INF = float('-inf')``.  The
float is only ever used as the infinity marker, so arithmetic on finite values
stays exact.

Coefficients of a :class:`MaxPolynomial` are stored by ascending power:
``coeffs[k]`` is the coefficient of ``x**k``.  For the full characteristic
maxpolynomial of an ``n x n`` matrix this means ``coeffs[n - k]`` holds the
optimal ``k``-assignment weight.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

ExtReal = Union[int, Fraction, float]

NEG_INF = float("-inf")
POS_INF = float("inf")

DEFAULT_BRUTE_FORCE_BOUND = 9


class SizeBound(ValueError):
    """Raised when an exponential-time routine is asked for a too large input."""


class DegenerateAllNegInf(ValueError):
    """Raised when roots are requested for the identically ``-inf`` polynomial."""


def is_neg_inf(x: ExtReal) -> bool:
    return x == NEG_INF


def to_ext(x) -> ExtReal:
    """Coerce ``x`` to an exact extended real.

    Accepts ints, Fractions, decimal strings, ``'-inf'`` and floats.  Finite
    floats are read through their shortest ``repr`` so that ``0.1`` becomes
    ``1/10`` rather than its binary expansion.
    """
    if type(x) is int:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not max-plus scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return to_ext(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("-inf", "-infinity"):
            return NEG_INF
        if s in ("inf", "+inf", "infinity"):
            return POS_INF
        return to_ext(Fraction(s))
    f = float(x)
    if math.isnan(f):
        raise ValueError("NaN is not a max-plus scalar")
    if math.isinf(f):
        return NEG_INF if f < 0 else POS_INF
    return to_ext(Fraction(repr(f)))


def ext_sub(a: ExtReal, b: ExtReal) -> ExtReal:
    """``a - b`` with the convention ``-inf - (-inf) = -inf``."""
    if is_neg_inf(a):
        return NEG_INF
    if is_neg_inf(b):
        raise ValueError("finite minus -inf is +inf, which is not in R_max")
    return to_ext(a - b)


def fmt(x: ExtReal) -> str:
    """Render a scalar as ``p``, ``p/q``, ``-inf`` or ``inf``."""
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class TermClass(enum.Enum):
    ESSENTIAL = "essential"
    SEMI_ESSENTIAL = "semi-essential"
    INESSENTIAL = "inessential"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MaxPolynomial:
    """Formal maxpolynomial ``max_k (coeffs[k] + k*x)``.

    The degree is ``len(coeffs) - 1`` and is kept formally, even when the
    leading coefficient is ``-inf``.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(to_ext(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a maxpolynomial needs at least one coefficient")
        if any(c == POS_INF for c in coeffs):
            raise ValueError("+inf is not a max-plus coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_descending(cls, coeffs: Iterable) -> "MaxPolynomial":
        """Build from coefficients listed by descending power (``x^d`` first)."""
        return cls(tuple(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def descending(self) -> tuple:
        return self.coeffs[::-1]

    def __call__(self, x: ExtReal) -> ExtReal:
        return evaluate(self, x)

    def __str__(self) -> str:
        return format_polynomial(self)


def evaluate(p: MaxPolynomial, x: ExtReal) -> ExtReal:
    x = to_ext(x)
    if is_neg_inf(x):
        return p.coeffs[0]
    best = NEG_INF
    for k, a in enumerate(p.coeffs):
        if not is_neg_inf(a):
            v = a + k * x
            if v > best:
                best = v
    return best if is_neg_inf(best) else to_ext(best)


def is_fcf(p: MaxPolynomial) -> bool:
    """True iff ``2*a_k >= a_{k-1} + a_{k+1}`` for every interior ``k``."""
    a = p.coeffs
    for k in range(1, len(a) - 1):
        if is_neg_inf(a[k - 1]) or is_neg_inf(a[k + 1]):
            continue
        if is_neg_inf(a[k]) or 2 * a[k] < a[k - 1] + a[k + 1]:
            return False
    return True


def _upper_hull(points: Sequence[tuple]) -> list:
    # Monotone chain; points sorted by abscissa, collinear points dropped.
    hull: list = []
    for px, py in points:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) >= 0:
                hull.pop()
            else:
                break
        hull.append((px, py))
    return hull


def canonicalize(p: MaxPolynomial) -> MaxPolynomial:
    """Full canonical form: the upper concave majorant of the coefficients.

    Leading and trailing runs of ``-inf`` coefficients are kept; interior
    ``-inf`` entries are lifted onto the hull.
    """
    finite = [(k, a) for k, a in enumerate(p.coeffs) if not is_neg_inf(a)]
    if len(finite) <= 1:
        return p
    hull = _upper_hull(finite)
    out = list(p.coeffs)
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slope = Fraction(y1 - y0, x1 - x0)
        for k in range(x0, x1 + 1):
            out[k] = to_ext(y0 + slope * (k - x0))
    return MaxPolynomial(out)


def roots(p: MaxPolynomial) -> list:
    """Tropical roots as ``[(root, multiplicity), ...]`` sorted ascending.

    A leading run of ``d'`` ``-inf`` coefficients yields the root ``-inf``
    with multiplicity ``d'``.
    """
    a = p.coeffs
    if all(is_neg_inf(c) for c in a):
        raise DegenerateAllNegInf("every coefficient is -inf")
    if is_neg_inf(a[-1]):
        raise ValueError("leading coefficient is -inf; roots are undefined")
    a = canonicalize(p).coeffs
    out: list = []
    lead = 0
    while is_neg_inf(a[lead]):
        lead += 1
    if lead:
        out.append([NEG_INF, lead])
    for k in range(lead + 1, len(a)):
        lam = to_ext(a[k - 1] - a[k])
        if out and out[-1][0] == lam:
            out[-1][1] += 1
        else:
            out.append([lam, 1])
    return [tuple(r) for r in out]


def _classify(a: tuple, c: tuple, finite: list, k: int) -> TermClass:
    if is_neg_inf(a[k]) or a[k] != c[k]:
        return TermClass.INESSENTIAL
    if k == finite[0] or k == finite[-1]:
        return TermClass.ESSENTIAL
    # term k is the envelope on [a_{k-1}-a_k, a_k-a_{k+1}]
    if c[k - 1] - c[k] < c[k] - c[k + 1]:
        return TermClass.ESSENTIAL
    return TermClass.SEMI_ESSENTIAL


def classify_term(p: MaxPolynomial, k: int) -> TermClass:
    if not 0 <= k < len(p.coeffs):
        raise IndexError(f"term index {k} outside 0..{p.degree}")
    if is_neg_inf(p.coeffs[k]):
        return TermClass.INESSENTIAL
    c = canonicalize(p).coeffs
    finite = [i for i, v in enumerate(c) if not is_neg_inf(v)]
    return _classify(p.coeffs, c, finite, k)


def term_classes(p: MaxPolynomial) -> list:
    """Classes of all terms, indexed by power; canonicalizes only once."""
    c = canonicalize(p).coeffs
    finite = [i for i, v in enumerate(c) if not is_neg_inf(v)]
    return [_classify(p.coeffs, c, finite, k) for k in range(len(c))]


def maxperm(A, bound: int = DEFAULT_BRUTE_FORCE_BOUND) -> ExtReal:
    """Max-plus permanent by enumeration of all ``n!`` permutations."""
    rows = [[to_ext(v) for v in row] for row in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("maxperm needs a square matrix")
    if n > bound:
        raise SizeBound(f"n={n} exceeds the brute-force bound {bound}")
    best = NEG_INF
    for perm in itertools.permutations(range(n)):
        total = 0
        for i, j in enumerate(perm):
            total = total + rows[i][j]
            if is_neg_inf(total):
                break
        if total > best:
            best = total
    return best if is_neg_inf(best) else to_ext(best)


def format_polynomial(p: MaxPolynomial, var: str = "x") -> str:
    """Descending-power text form, e.g. ``x^4 (+) 10x^3 (+) 23``."""
    terms = []
    for k in range(p.degree, -1, -1):
        a = p.coeffs[k]
        if is_neg_inf(a):
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            terms.append(fmt(a))
        elif a == 0:
            terms.append(mono)
        else:
            terms.append(fmt(a) + mono)
    return " (+) ".join(terms) if terms else "-inf"

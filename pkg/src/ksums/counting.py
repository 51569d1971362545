"""Exact generating functions for string masses and integer counts per length.

Masses are taken with respect to the weight ``b**-len(X)`` on strings ``X``.
``W`` tracks strings with no occurrence of the pattern, ``Z`` strings with
exactly one; the per-digit variants restrict the leading digit.  Replacing
``T`` by ``b*T`` turns a mass series into a count series.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Optional, Sequence

from .digits_core import PatternSpec


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs or [0]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> list:
    return _trim(x + y for x, y in zip_longest(a, b, fillvalue=0))


@dataclass(frozen=True, eq=False)
class RationalGF:
    """``numerator(T) / denominator(T)`` with integer coefficients, lowest degree first."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(_trim(self.numerator)))
        object.__setattr__(self, "denominator", tuple(_trim(self.denominator)))
        if self.denominator[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")

    def __call__(self, t):
        t = Fraction(t)
        num = sum(Fraction(c) * t**i for i, c in enumerate(self.numerator))
        den = sum(Fraction(c) * t**i for i, c in enumerate(self.denominator))
        return num / den

    def __add__(self, other: "RationalGF") -> "RationalGF":
        if self.denominator == other.denominator:
            return RationalGF(poly_add(self.numerator, other.numerator), self.denominator)
        num = poly_add(poly_mul(self.numerator, other.denominator),
                       poly_mul(other.numerator, self.denominator))
        return RationalGF(num, poly_mul(self.denominator, other.denominator))

    def __mul__(self, other: "RationalGF") -> "RationalGF":
        return RationalGF(poly_mul(self.numerator, other.numerator),
                          poly_mul(self.denominator, other.denominator))

    def __eq__(self, other):
        # equality as rational functions, not as coefficient tuples
        if not isinstance(other, RationalGF):
            return NotImplemented
        return (poly_mul(self.numerator, other.denominator)
                == poly_mul(other.numerator, self.denominator))

    def scaled(self, c: int) -> "RationalGF":
        """Substitute ``T -> c*T``."""
        return RationalGF([x * c**i for i, x in enumerate(self.numerator)],
                          [x * c**i for i, x in enumerate(self.denominator)])

    def coefficients(self, n: int) -> list:
        """First ``n`` Taylor coefficients at T=0, via the denominator's linear recurrence."""
        num, den = self.numerator, self.denominator
        d0 = den[0]
        out = []
        for k in range(n):
            acc = Fraction(num[k]) if k < len(num) else Fraction(0)
            for i in range(1, min(k, len(den) - 1) + 1):
                acc -= den[i] * out[k - i]
            out.append(acc / d0)
        return out


def _denominators(p: PatternSpec):
    b = p.b
    if p.same:
        return (b * b, -b * (b - 1), -(b - 1))
    return (b * b, -b * b, 1)


def mass_gf(p: PatternSpec, which: str, digit: Optional[int] = None) -> RationalGF:
    """Closed-form mass generating function.

    ``which`` is ``"W"`` (no occurrence) or ``"Z"`` (exactly one occurrence).
    With ``digit`` given, only strings with that leading digit are counted;
    otherwise the total (for ``W`` including the empty string).
    """
    b = p.b
    den = _denominators(p)
    if digit is not None and not 0 <= digit < b:
        raise ValueError(f"{digit} is not a digit in base {b}")
    if which == "W":
        if digit is None:
            num = (b * b, b) if p.same else (b * b,)
        elif digit == p.alpha:
            num = (0, b) if p.same else (0, b, -1)
        else:
            num = (0, b, 1) if p.same else (0, b)
        return RationalGF(num, den)
    if which == "Z":
        den2 = poly_mul(den, den)
        if digit is None:
            num = (0, 0, b * b)
        elif digit == p.alpha:
            num = (0, 0, b * b, -b * (b - 1))
        else:
            num = (0, 0, 0, b)
        return RationalGF(num, den2)
    raise ValueError(f"which must be 'W' or 'Z', got {which!r}")


def _leading_gf(p: PatternSpec, occurrences: int, digits: Iterable[int]) -> RationalGF:
    if occurrences not in (0, 1):
        raise ValueError("occurrences must be 0 or 1")
    which = "W" if occurrences == 0 else "Z"
    gfs = [mass_gf(p, which, d) for d in sorted(set(digits))]
    if not gfs:
        return RationalGF((0,), (1,))
    total = gfs[0]
    for g in gfs[1:]:
        total = total + g
    return total


MASS_KINDS = ("mu_total", "mu_by_leading_digit", "nu_total", "nu_by_leading_digit",
              "integer_count")


@dataclass
class MassSequence:
    values: list
    kind: str
    digit: Optional[int] = None

    def __post_init__(self):
        if self.kind not in MASS_KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")


def mass_sequence(p: PatternSpec, kind: str, l_max: int,
                  digit: Optional[int] = None) -> MassSequence:
    which = "W" if kind.startswith("mu") else "Z"
    if kind.endswith("total"):
        digit = None
    elif digit is None:
        raise ValueError(f"{kind} needs a leading digit")
    values = mass_gf(p, which, digit).coefficients(l_max + 1)
    return MassSequence(values, kind, digit)


def count_per_length(p: PatternSpec, occurrences: int, leading_digits: Optional[Iterable[int]] = None,
                     l_max: int = 10) -> MassSequence:
    """Exact number of length-l strings with the occurrence count, l = 0..l_max.

    The default leading digits 1..b-1 count positive integers of each length.
    """
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    if leading_digits is None:
        leading_digits = range(1, p.b)
    gf = _leading_gf(p, occurrences, leading_digits).scaled(p.b)
    values = []
    for c in gf.coefficients(l_max + 1):
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral count {c}")
        values.append(int(c))
    return MassSequence(values, "integer_count")


def total_integer_mass(p: PatternSpec, occurrences: int) -> Fraction:
    """Sum over admissible positive integers m of b**-length(m)."""
    return _leading_gf(p, occurrences, range(1, p.b))(1)


def tail_mass(p: PatternSpec, occurrences: int, N: int) -> Fraction:
    """Sum of b**-length(m) over admissible integers m with more than N digits."""
    if N < 0:
        raise ValueError("N must be >= 0")
    gf = _leading_gf(p, occurrences, range(1, p.b))
    return gf(1) - sum(gf.coefficients(N + 1))


def dominant_tail_ratio(p: PatternSpec, occurrences: int) -> float:
    """Asymptotic ratio r_{l+1}/r_l of consecutive tail masses.

    This is the largest reciprocal root of the (unsquared) denominator; the
    ``Z`` series share these roots with multiplicity two.
    """
    if occurrences not in (0, 1):
        raise ValueError("occurrences must be 0 or 1")
    c0, c1, c2 = _denominators(p)
    # reciprocal roots x solve c0*x^2 + c1*x + c2 = 0
    disc = cmath.sqrt(c1 * c1 - 4 * c0 * c2)
    roots = ((-c1 + disc) / (2 * c0), (-c1 - disc) / (2 * c0))
    return max(abs(r) for r in roots)

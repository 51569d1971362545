"""Independent checks: brute-force partial sums with rigorous enclosures,
and explicit series for the base-2 cases that admit one.

Enumeration walks integers and scans their digit windows directly; it does
not use the generating functions except for the exact tail mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath
import numpy as np
from mpmath import mp

from .counting import tail_mass
from .digits_core import PatternSpec
from .stieltjes import SeriesValue

MAX_ENUMERATION = 2**34
EXACT_SUM_LIMIT = 10**4
CHUNK = 1 << 22


def occurrence_counts(start: int, stop: int, b: int, alpha: int, beta: int) -> np.ndarray:
    """Pattern occurrence count for every integer in [start, stop).

    All integers in the range must have the same number of digits.
    """
    n = np.arange(start, stop, dtype=np.int64)
    occ = np.zeros(n.shape, dtype=np.int8)
    rest = n // b
    low = n % b
    while True:
        high = rest % b
        # stop once every number has run out of digits
        alive = rest > 0
        if not alive.any():
            break
        occ += (alive & (high == alpha) & (low == beta)).astype(np.int8)
        low = high
        rest //= b
    return n, occ


def iter_length(b: int, l: int):
    lo, hi = b ** (l - 1), b**l
    for s in range(lo, hi, CHUNK):
        yield s, min(hi, s + CHUNK)


def enumerate_counts(p: PatternSpec, occurrences: int, l_max: int) -> list:
    """Number of positive integers of each length 0..l_max with the occurrence count."""
    if p.b**l_max > MAX_ENUMERATION:
        raise ValueError("enumeration range too large")
    counts = [0]
    for l in range(1, l_max + 1):
        c = 0
        for s, e in iter_length(p.b, l):
            _, occ = occurrence_counts(s, e, p.b, p.alpha, p.beta)
            c += int((occ == occurrences).sum())
        counts.append(c)
    return counts


@dataclass
class SandwichBound:
    """Rigorous enclosure ``lower < K < upper`` from a partial sum over lengths <= N."""

    p: PatternSpec
    occurrences: int
    N: int
    S_N: Union[Fraction, float]
    r_N: Fraction
    terms_counted: int
    counts: list = field(repr=False)
    s_err: float = 0.0

    @property
    def lower(self) -> float:
        return float(Fraction(self.S_N) + self.r_N) - self.s_err

    @property
    def upper(self) -> float:
        return float(Fraction(self.S_N) + self.p.b * self.r_N) + self.s_err

    @property
    def heuristic(self) -> float:
        """Point estimate S_N + r_N * b log b / (b - 1).  Not a bound."""
        b = self.p.b
        return float(self.S_N) + float(self.r_N) * b * math.log(b) / (b - 1)

    def contains(self, x) -> bool:
        # exact rational comparison when S_N is exact; padded floats otherwise
        if isinstance(self.S_N, Fraction):
            lo = self.S_N + self.r_N
            hi = self.S_N + self.p.b * self.r_N
            with mp.workdps(40):
                return mpmath.mpf(lo.numerator) / lo.denominator < x < mpmath.mpf(hi.numerator) / hi.denominator
        return self.lower < x < self.upper


def brute_partial(p: PatternSpec, occurrences: int, N: int) -> SandwichBound:
    """Sum 1/n over admissible n < b**N and enclose the full sum.

    An admissible integer with k digits satisfies b**-k < 1/n <= b * b**-k,
    so the unseen part lies between r_N and b*r_N, where r_N is the exact
    mass of admissible integers longer than N digits.
    """
    if occurrences not in (0, 1):
        raise ValueError("occurrences must be 0 or 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    if p.b**N > MAX_ENUMERATION:
        raise ValueError(f"b**N = {p.b}**{N} exceeds the enumeration guard")
    exact = p.b**N <= EXACT_SUM_LIMIT
    counts = [0]
    s_exact = Fraction(0)
    chunk_sums = []
    for l in range(1, N + 1):
        c = 0
        for s, e in iter_length(p.b, l):
            n, occ = occurrence_counts(s, e, p.b, p.alpha, p.beta)
            kept = n[occ == occurrences]
            c += kept.size
            if exact:
                s_exact += sum((Fraction(1, int(k)) for k in kept), Fraction(0))
            elif kept.size:
                chunk_sums.append(float(np.sum(1.0 / kept.astype(np.float64))))
        counts.append(c)
    terms = sum(counts)
    r = tail_mass(p, occurrences, N)
    if exact:
        return SandwichBound(p, occurrences, N, s_exact, r, terms, counts)
    S = math.fsum(chunk_sums)
    # each reciprocal and each pairwise addition is off by at most one ulp
    s_err = (terms + 2) * 2.0**-52 * S + 1e-300
    return SandwichBound(p, occurrences, N, S, r, terms, counts, s_err)


def _ratio_tail(first_term, ratio):
    return first_term / (1 - ratio)


def direct_series_b2(pattern: str, max_len: int = 80, dps: int = 30) -> SeriesValue:
    """K1 in base 2 for "10" or "01" by summing over the explicit digit shapes.

    "10": integers 1..1 0..0 1..1 of length n equal 2^n - 2^j2 + 2^j1 - 1
    with 0 <= j1 < j2 < n.  "01" adds trailing zeros to the odd shapes with
    0 < j1, which doubles their sum.
    """
    if pattern == "10":
        start, j1_min, factor = 2, 0, 1
    elif pattern == "01":
        start, j1_min, factor = 3, 1, 2
    else:
        raise ValueError("direct_series_b2 handles only '10' and '01'")
    if max_len < start + 2:
        raise ValueError(f"max_len must be at least {start + 2}")
    with mp.workdps(dps + 10):
        total = mpmath.mpf(0)
        for n in range(start, max_len + 1):
            top = 2**n - 1
            terms = [mpmath.mpf(1) / (top - 2**j2 + 2**j1)
                     for j2 in range(j1_min + 1, n) for j1 in range(j1_min, j2)]
            total += mpmath.fsum(terms)
        total *= factor
        # length-n shapes number C(n - j1_min, 2), each at most 2^(1-n)
        n = max_len + 1
        first = factor * mpmath.mpf(math.comb(n - j1_min, 2)) / mpmath.mpf(2) ** (n - 1)
        ratio = mpmath.mpf(n + 1 - j1_min) / (2 * (n - 1 - j1_min))
        bound = _ratio_tail(first, ratio)
        count = max_len - start + 1
        return SeriesValue(+total, bound, count, 10 * count**3 * mpmath.eps * total)


def erdos_borwein(dps: int = 60) -> mpmath.mpf:
    """Sum of 1/(2^n - 1), n >= 1, truncated below 10**-dps."""
    with mp.workdps(dps + 10):
        N = int((dps + 5) * math.log2(10)) + 2
        return +mpmath.fsum(mpmath.mpf(1) / (2**n - 1) for n in range(1, N + 1))


def clausen_series(dps: int = 60) -> mpmath.mpf:
    """Sum of 2^(-n^2) (1 + 2^-n) / (1 - 2^-n), n >= 1."""
    with mp.workdps(dps + 10):
        N = int(math.isqrt(int((dps + 5) * math.log2(10)))) + 3
        terms = []
        for n in range(1, N + 1):
            q = mpmath.mpf(2) ** (-n)
            terms.append(mpmath.mpf(2) ** (-n * n) * (1 + q) / (1 - q))
        return +mpmath.fsum(terms)

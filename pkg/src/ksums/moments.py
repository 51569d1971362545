"""Moment sequences of the digit-string measures, via exact-coefficient recurrences.

For ``alpha != beta`` the sequences are the moments of the measures carried by
strings with zero (``u``) or one (``v``) occurrence of the pattern.  For
``alpha == beta`` they are the moments of the same measures with the strings
led by ``alpha`` removed.  Each recurrence is multiplied through by a power of
``b`` so that all coefficients are integers; the single rounding per index
is the final division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp

from .digits_core import PatternSpec

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int


class MomentPrecisionError(ArithmeticError):
    """A computed moment was not positive and strictly decreasing."""


@dataclass(frozen=True)
class PowerSums:
    gamma: tuple
    gamma_prime: tuple
    theta_prime: tuple
    kappa_prime: tuple


def compute_power_sums(p: PatternSpec, M: int) -> PowerSums:
    if M < 0:
        raise ValueError("M must be >= 0")
    b, a = p.b, p.alpha
    others = [d for d in range(b) if d != a]
    rng = range(M + 1)
    return PowerSums(
        gamma=tuple(sum(d**j for d in range(b)) for j in rng),
        gamma_prime=tuple(sum(d**j for d in others) for j in rng),
        theta_prime=tuple(sum((d * b + a) ** j for d in others) for j in rng),
        kappa_prime=tuple(sum((d * b * b + a * b + a) ** j for d in others) for j in rng),
    )


@dataclass
class MomentTable:
    """u_0..u_M and v_0..v_M at ``dps`` decimal digits.

    ``u_err``/``v_err`` are absolute error bounds on each entry.
    """

    p: PatternSpec
    M: int
    dps: int
    u: list
    v: list
    u_err: list = field(repr=False)
    v_err: list = field(repr=False)
    branch: str = ""
    max_cancellation: float = 1.0


def guard_digits(M: int) -> int:
    return 10 + math.ceil(math.log10(M + 2))


def working_dps(target_digits: int, M: int, int_digits: int = 0) -> int:
    """Decimal working precision for ``target_digits`` after the point."""
    return target_digits + int_digits + guard_digits(M)


def _binomial_rows(M: int):
    row = [1]
    yield row
    for _ in range(M):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        yield row


def _check_monotone(name, seq, err, m):
    """Raise unless seq[m] can be positive and below seq[m-1] within the error bounds.

    Moments of a measure on [0, 1) are positive and strictly decreasing; in
    fixed point a moment can fall below the resolution, so only a violation
    that survives the error bounds signals a real loss of precision.
    """
    if seq[m] + err[m] <= 0:
        raise MomentPrecisionError(f"{name}_{m} is not positive; precision too low")
    if m and seq[m] - err[m] >= seq[m - 1] + err[m - 1]:
        raise MomentPrecisionError(f"{name}_{m} >= {name}_{m - 1}; precision too low")


def _cdiv(a, b):
    return -((-a) // b)


def compute_moments(p: PatternSpec, M: int, dps: int) -> MomentTable:
    """Moments u_0..u_M, v_0..v_M of the pattern's measures at ``dps`` digits.

    The recurrences run in fixed point: every moment is an integer multiple
    of 2**-P, the weighted sums are exact and each index rounds once (the
    final division).  Error bounds are propagated alongside in units of 2**-P.
    """
    if M < 0:
        raise ValueError("M must be >= 0")
    P = math.ceil(dps * math.log2(10)) + 16
    if p.same:
        U, V, Eu, Ev, worst = _fixed_same(p, M, P)
    else:
        U, V, Eu, Ev, worst = _fixed_distinct(p, M, P)
    for m in range(M + 1):
        _check_monotone("v", V, Ev, m)
    with mp.workprec(P + 16):
        scale = mpmath.ldexp(1, -P)
        u = [mpmath.ldexp(mpmath.mpf(int(x)), -P) for x in U]
        v = [mpmath.ldexp(mpmath.mpf(int(x)), -P) for x in V]
        u_err = [(int(e) + 1) * scale for e in Eu]
        v_err = [(int(e) + 1) * scale for e in Ev]
    branch = "same" if p.same else "distinct"
    return MomentTable(p, M, dps, u, v, u_err, v_err, branch, worst)


def _ratio(mag, num) -> float:
    return int(mag * 1000 // num) / 1000.0


def _fixed_distinct(p: PatternSpec, M: int, P: int):
    b, c = p.b, p.pair_value
    gam = [mpz(g) for g in compute_power_sums(p, M).gamma]
    cpow = [mpz(c) ** j for j in range(M + 1)]
    one = mpz(1) << P
    U, V = [b * b * one], []
    Eu, Ev = [mpz(0)], []
    worst = 1.0
    for m, row in enumerate(_binomial_rows(M)):
        bm = mpz(b) ** (m + 1)
        lhs = bm * bm - b * bm + 1
        if m:
            cg = [mpz(row[j]) * gam[j] for j in range(1, m + 1)]
            cc = [mpz(row[j]) * cpow[j] for j in range(1, m + 1)]
            a_u = sum(x * U[m - j] for j, x in enumerate(cg, 1))
            b_u = sum(x * U[m - j] for j, x in enumerate(cc, 1))
            weight = bm * sum(cg) + sum(cc)
            num = bm * a_u - b_u
            err = weight * max(Eu)
            if num + err <= 0:
                raise MomentPrecisionError(f"u_{m} recurrence lost all significance")
            worst = max(worst, _ratio(bm * a_u + b_u, max(num, 1)))
            # the true moment is positive, so clamping at zero only helps
            U.append(max(num, 0) // lhs)
            Eu.append(_cdiv(err, lhs) + 1)
            _check_monotone("u", U, Eu, m)
            a_v = sum(x * V[m - j] for j, x in enumerate(cg, 1))
            b_v = sum(x * V[m - j] for j, x in enumerate(cc, 1))
            num = bm * a_v - b_v + b_u + U[m]
            mag = bm * a_v + b_v + b_u + U[m]
            worst = max(worst, _ratio(mag, max(num, 1)))
            err = weight * max(Ev) + sum(cc) * max(Eu) + Eu[m]
        else:
            num, err = U[0], Eu[0]
        V.append(max(num, 0) // lhs)
        Ev.append(_cdiv(err, lhs) + 1)
    return U, V, Eu, Ev, worst


def _fixed_same(p: PatternSpec, M: int, P: int):
    b = p.b
    ps = compute_power_sums(p, M)
    gp = [mpz(x) for x in ps.gamma_prime]
    tp = [mpz(x) for x in ps.theta_prime]
    kp = [mpz(x) for x in ps.kappa_prime]
    one = mpz(1) << P
    U, V = [b * b * one], []
    Eu, Ev = [mpz(0)], []
    for m, row in enumerate(_binomial_rows(M)):
        bm = mpz(b) ** (m + 1)
        if m:
            cg = [mpz(row[j]) * gp[j] for j in range(1, m + 1)]
            ct = [mpz(row[j]) * tp[j] for j in range(1, m + 1)]
            ck = [mpz(row[j]) * kp[j] for j in range(1, m + 1)]
            lhs = bm * bm - (b - 1) * bm - (b - 1)
            num = (bm * sum(x * U[m - j] for j, x in enumerate(cg, 1))
                   + sum(x * U[m - j] for j, x in enumerate(ct, 1)))
            U.append(num // lhs)
            Eu.append(_cdiv((bm * sum(cg) + sum(ct)) * max(Eu), lhs) + 1)
            _check_monotone("u", U, Eu, m)
            num = (bm * bm * sum(x * V[m - j] for j, x in enumerate(cg, 1))
                   + bm * sum(x * V[m - j] for j, x in enumerate(ct, 1))
                   + sum(x * U[m - j] for j, x in enumerate(ck, 1)))
            err = (bm * bm * sum(cg) + bm * sum(ct)) * max(Ev) + sum(ck) * max(Eu)
        else:
            num, err = mpz(0), mpz(0)
        # all coefficients are positive here, so no cancellation
        lhs = bm * bm * bm - (b - 1) * bm * bm - (b - 1) * bm
        V.append((num + (b - 1) * U[m]) // lhs)
        Ev.append(_cdiv(err + (b - 1) * Eu[m], lhs) + 1)
    return U, V, Eu, Ev, 1.0


@lru_cache(maxsize=8)
def _admissible_positions(p: PatternSpec, L: int, which: str):
    """Positions x = n(X)/b^|X| of admissible strings, one array per length."""
    import numpy as np

    b, a, be = p.b, p.alpha, p.beta
    occ_wanted = 0 if which == "u" else 1
    out = []
    for l in range(1, L + 1):
        k = np.arange(b**l, dtype=np.int64)
        occ = np.zeros(k.shape, dtype=np.int64)
        rest = k.copy()
        low = rest % b
        rest //= b
        for _ in range(l - 1):
            high = rest % b
            occ += (high == a) & (low == be)
            low = high
            rest //= b
        keep = occ == occ_wanted
        if p.same:
            keep &= low != a  # low now holds the leading digit
        x = k[keep].astype(np.float64) / float(b**l)
        x.setflags(write=False)
        out.append(x)
    return tuple(out)


def moment_oracle(p: PatternSpec, m: int, L: int, which: str = "u"):
    """Moment by direct enumeration of strings of length <= L.

    Returns ``(value, bound)`` where ``bound`` covers both the mass of longer
    strings and float rounding.  Independent of the recurrences: it sums
    ``x(X)**m * b**-len(X)`` over admissible strings ``X`` one length at a time.
    """
    b = p.b
    if which not in ("u", "v"):
        raise ValueError("which must be 'u' or 'v'")
    if b**L > 2**24:
        raise ValueError(f"b**L = {b}**{L} is too large to enumerate")
    occ_wanted = 0 if which == "u" else 1
    # the empty string carries mass 1 at x=0 for the no-occurrence measure only
    value = 1.0 if (occ_wanted == 0 and m == 0) else 0.0
    mass = Fraction(1 if occ_wanted == 0 else 0)
    for l, x in enumerate(_admissible_positions(p, L, which), 1):
        # numpy's pairwise summation keeps the relative error near log2(size) ulps
        value += float((x**m).sum()) / b**l
        mass += Fraction(x.size, b**l)
    if which == "u":
        total = b * b
    else:
        total = b * (b - 1) if p.same else b * b
    tail = total - mass
    if tail < 0:
        raise AssertionError("enumerated mass exceeds the total mass")
    return value, float(tail) + 1e-13 * max(value, 1.0)

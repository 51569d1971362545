"""K0 and K1 from finitely many U/V evaluations at integers with 2 to 4 digits.

The zeroth-moment contributions are collected into one exact rational; the
remaining moments are grouped so that each u_m and v_m is multiplied by a
single signed sum of reciprocal powers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath
from mpmath import mp

from .digits_core import PatternSpec
from .moments import MomentTable, compute_moments, working_dps
from .stieltjes import U, V

EXACT_HARMONIC_MAX_BASE = 16


@dataclass(frozen=True)
class KRequest:
    p: PatternSpec
    which: str
    target_digits: int

    def __post_init__(self):
        if self.which not in ("K0", "K1"):
            raise ValueError(f"which must be 'K0' or 'K1', got {self.which!r}")
        if self.target_digits < 1:
            raise ValueError("target_digits must be >= 1")


@dataclass
class KResult:
    request: KRequest
    value: mpmath.mpf
    error_bound: mpmath.mpf
    M_used: int
    precision_used: int
    trunc_bound: mpmath.mpf = field(repr=False, default=None)
    round_bound: mpmath.mpf = field(repr=False, default=None)

    def scaled_integer(self, digits: Optional[int] = None) -> int:
        """round(value * 10**digits), correct as long as digits <= precision."""
        digits = self.request.target_digits if digits is None else digits
        with mp.workdps(self.precision_used + 5):
            return int(mpmath.nint(self.value * mpmath.mpf(10) ** digits))

    def decimal_string(self, digits: Optional[int] = None) -> str:
        digits = self.request.target_digits if digits is None else digits
        n = self.scaled_integer(digits)
        sign = "-" if n < 0 else ""
        whole, frac = divmod(abs(n), 10**digits)
        return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class Evaluation:
    sign: int
    kind: str  # 'U' or 'V'
    n: int


def harmonic_prefix(p: PatternSpec, which: str) -> Fraction:
    """Contribution of the single-digit integers."""
    if which == "K1":
        return Fraction(0)
    return sum((Fraction(1, d) for d in range(1, p.b)), Fraction(0))


def evaluation_points(p: PatternSpec, which: str) -> list:
    """Signed U/V arguments whose sum (plus the single digits) gives K0 or K1."""
    b, a = p.b, p.alpha
    c = p.pair_value
    two_digit = [n for n in range(b, b * b) if n != c]
    lead = range(1, b)
    pts = []
    if not p.same:
        if which == "K0":
            pts += [Evaluation(1, "U", n) for n in two_digit]
            pts += [Evaluation(-1, "U", n1 * b * b + c) for n1 in lead]
        else:
            pts += [Evaluation(1, "V", n) for n in two_digit]
            pts += [Evaluation(-1, "V", n1 * b * b + c) for n1 in lead]
            if a:
                pts.append(Evaluation(1, "U", c))
            pts += [Evaluation(1, "U", n1 * b * b + c) for n1 in lead]
        return pts
    not_a = [d for d in range(b) if d != a]
    if which == "K0":
        pts += [Evaluation(1, "U", n) for n in two_digit]
        pts += [Evaluation(1, "U", n1 * b * b + n2 * b + a) for n1 in lead for n2 in not_a]
    else:
        if a:
            pts.append(Evaluation(1, "U", c))
        pts += [Evaluation(1, "V", n) for n in two_digit]
        pts += [Evaluation(1, "U", n1 * b * b + c) for n1 in lead if n1 != a]
        for n1 in lead:
            for n2 in not_a:
                pts.append(Evaluation(1, "V", n1 * b * b + n2 * b + a))
                pts.append(Evaluation(1, "U", n1 * b**3 + n2 * b * b + c))
    return pts


def _integer_digits(p: PatternSpec) -> int:
    # K1 sits near b^2 log b and K0 below it
    return len(str(math.ceil(p.b * p.b * math.log(p.b)) + 10))


def plan(req: KRequest) -> tuple:
    """(M, dps) such that the a priori truncation bound is below 10**-(D+2).

    Every moment is at most b**2 and every argument is at least b, so one
    evaluation truncated after m = M leaves at most b**-M.
    """
    p = req.p
    count = len(evaluation_points(p, req.which))
    M = math.ceil((req.target_digits + 2 + math.log10(count)) / math.log10(p.b))
    M = max(M, 1)
    return M, working_dps(req.target_digits, M, _integer_digits(p))


@lru_cache(maxsize=64)
def moment_table(p: PatternSpec, M: int, dps: int) -> MomentTable:
    return compute_moments(p, M, dps)


def zeroth_moment_block(p: PatternSpec, which: str, pts=None):
    """Single-digit harmonic part plus the m = 0 terms of every evaluation."""
    pts = evaluation_points(p, which) if pts is None else pts
    lead_u = p.b * p.b
    lead_v = p.b * (p.b - 1) if p.same else p.b * p.b
    if p.b <= EXACT_HARMONIC_MAX_BASE:
        total = harmonic_prefix(p, which)
        for e in pts:
            total += Fraction(e.sign * (lead_u if e.kind == "U" else lead_v), e.n)
        return total
    terms = [mpmath.mpf(1) / d for d in range(1, p.b)] if which == "K0" else []
    terms += [mpmath.mpf(e.sign * (lead_u if e.kind == "U" else lead_v)) / e.n for e in pts]
    return mpmath.fsum(terms)


def assemble(p: PatternSpec, which: str, table: MomentTable, M: int):
    """Value, truncation bound and rounding bound of the level-2 sum through m = M."""
    if M >= table.M:
        raise ValueError("moment table must extend one index past M")
    pts = evaluation_points(p, which)
    with mp.workdps(table.dps):
        eps = mpmath.eps
        zeroth = zeroth_moment_block(p, which, pts)
        if isinstance(zeroth, Fraction):
            total = mpmath.mpf(zeroth.numerator) / zeroth.denominator
            rerr = 3 * eps * abs(total)
        else:
            total = zeroth
            rerr = (len(pts) + p.b) * 3 * eps * abs(total)
        groups = {"U": [e for e in pts if e.kind == "U"], "V": [e for e in pts if e.kind == "V"]}
        seqs = {"U": (table.u, table.u_err), "V": (table.v, table.v_err)}
        trunc = mpmath.mpf(0)
        for kind, evs in groups.items():
            if not evs:
                continue
            seq, errs = seqs[kind]
            invs = [mpmath.mpf(1) / e.n for e in evs]
            pows = list(invs)  # n^-(m+1), one rounding per update
            signs = [e.sign for e in evs]
            for m in range(1, M + 1):
                pows = [x * y for x, y in zip(pows, invs)]
                coef = mpmath.fdot(signs, pows)
                mag = mpmath.fsum(pows)
                term = seq[m] * coef
                total += -term if m % 2 else term
                rerr += mag * (errs[m] + seq[m] * (m + len(evs) + 6) * eps)
            pows = [x * y for x, y in zip(pows, invs)]
            trunc += (seq[M + 1] + errs[M + 1]) * mpmath.fsum(pows)
        rerr += 2 * M * eps * abs(total)
        return +total, trunc, rerr


def _compute(req: KRequest) -> KResult:
    if req.which == "K0":
        return k0(req)
    return k1(req)


def _solve(req: KRequest) -> KResult:
    p = req.p
    M, dps = plan(req)
    tol = mpmath.mpf(10) ** (-req.target_digits)
    for _ in range(6):
        table = moment_table(p, M + 1, dps)
        value, trunc, rerr = assemble(p, req.which, table, M)
        err = trunc + rerr
        if err < tol:
            return KResult(req, value, err, M, dps, trunc, rerr)
        # truncation is below tol by construction; only rounding can be short
        extra = int(mpmath.ceil(mpmath.log10(err / tol))) + 5
        dps += max(extra, 5)
    raise ArithmeticError(f"could not reach {req.target_digits} digits for {p}")


def k0(req: KRequest) -> KResult:
    """Sum of 1/n over integers whose base-b digits avoid the pattern."""
    if req.which != "K0":
        raise ValueError("k0 needs a K0 request")
    return _solve(req)


def k1(req: KRequest) -> KResult:
    """Sum of 1/n over integers containing the pattern exactly once."""
    if req.which != "K1":
        raise ValueError("k1 needs a K1 request")
    return _solve(req)


def evaluate(p: PatternSpec, which: str, target_digits: int) -> KResult:
    return _compute(KRequest(p, which, target_digits))


def assemble_by_evaluations(p: PatternSpec, which: str, table: MomentTable, M: int):
    """Same sum as :func:`assemble`, evaluating each U(n)/V(n) separately.

    Slower; kept as a cross-check on the grouped bookkeeping.
    """
    funcs = {"U": U, "V": V}
    with mp.workdps(table.dps):
        h = harmonic_prefix(p, which)
        total = mpmath.mpf(h.numerator) / h.denominator
        bound = 2 * mpmath.eps * abs(total)
        for e in evaluation_points(p, which):
            sv = funcs[e.kind](e.n, table, M)
            total += e.sign * sv.value
            bound += sv.error_bound
        return +total, bound


def k1_level1(table: MomentTable, M: int):
    """K1 for alpha != beta from the one-step identity.

    Uses V over the single digits and, when alpha > 0, subtracts V - U at
    the integer alpha*b + beta.  Returns ``(value, bound)``.
    """
    p = table.p
    if p.same:
        raise ValueError("the one-step form here is for alpha != beta")
    with mp.workdps(table.dps):
        total = mpmath.mpf(0)
        bound = mpmath.mpf(0)
        for n in range(1, p.b):
            sv = V(n, table, M)
            total += sv.value
            bound += sv.error_bound
        if p.alpha:
            for sign, sv in ((-1, V(p.pair_value, table, M)), (1, U(p.pair_value, table, M))):
                total += sign * sv.value
                bound += sv.error_bound
        return +total, bound


@dataclass
class K1Statistics:
    b: int
    reference: mpmath.mpf  # b^2 log b
    results: dict  # label -> KResult
    deviations: dict  # label -> float
    max_deviation: float
    max_deviation_distinct: float
    below_reference: list


def k1_statistics(b: int, target_digits: int = 12) -> K1Statistics:
    """K1 for all b^2 two-digit patterns compared with b^2 log b."""
    results, devs = {}, {}
    with mp.workdps(target_digits + 10):
        ref = b * b * mpmath.log(b)
        for a in range(b):
            for be in range(b):
                p = PatternSpec(b, a, be)
                res = k1(KRequest(p, "K1", target_digits))
                label = p.label()
                results[label] = res
                devs[label] = float(res.value - ref)
    distinct = [abs(devs[PatternSpec(b, a, be).label()])
                for a in range(b) for be in range(b) if a != be]
    below = [lab for lab, d in devs.items() if d < 0]
    return K1Statistics(
        b=b,
        reference=ref,
        results=results,
        deviations=devs,
        max_deviation=max(abs(d) for d in devs.values()),
        max_deviation_distinct=max(distinct) if distinct else 0.0,
        below_reference=below,
    )


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - t0) * 1000.0

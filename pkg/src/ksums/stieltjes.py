"""U(n) and V(n) as alternating moment series, with truncation and rounding bounds.

U(n) integrates 1/(n+x) against the no-occurrence measure and V(n) against
the one-occurrence measure (leading-alpha strings removed when alpha == beta).
Both expand as sum_m (-1)^m w_m / n^(m+1) with w the matching moment sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from .moments import MomentTable


@dataclass(frozen=True)
class SeriesValue:
    value: mpmath.mpf
    trunc_bound: mpmath.mpf
    terms_used: int
    round_bound: mpmath.mpf = mpmath.mpf(0)

    @property
    def error_bound(self):
        return self.trunc_bound + self.round_bound


def _series(n: int, seq, errs, M: int, dps: int) -> SeriesValue:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if M < 0 or M >= len(seq) - 1:
        raise ValueError(f"need M < {len(seq) - 1} so the first omitted term is known, got {M}")
    with mp.workdps(dps):
        eps = mpmath.eps
        inv = mpmath.mpf(1) / n
        pw = inv
        total = mpmath.mpf(0)
        rerr = mpmath.mpf(0)
        for m in range(M + 1):
            term = seq[m] * pw
            total += -term if m % 2 else term
            rerr += errs[m] * pw + term * (m + 4) * eps
            pw *= inv
        # the stored moment may sit below its true value by up to its error bound
        trunc = (seq[M + 1] + errs[M + 1]) * pw
        rerr += (M + 1) * eps * abs(total)
    return SeriesValue(+total, trunc, M + 1, rerr)


def U(n: int, table: MomentTable, M: int) -> SeriesValue:
    """Partial sum of U(n) through m = M; the bound is the first omitted term."""
    return _series(n, table.u, table.u_err, M, table.dps)


def V(n: int, table: MomentTable, M: int) -> SeriesValue:
    return _series(n, table.v, table.v_err, M, table.dps)


def U_beta(n: int, table: MomentTable, M: int) -> SeriesValue:
    """U restricted to trailing parts led by beta, i.e. U(n*b + beta)."""
    p = table.p
    if p.same:
        raise ValueError("U_beta is only defined for alpha != beta")
    return U(n * p.b + p.beta, table, M)


@dataclass(frozen=True)
class IdentityCheck:
    residual: mpmath.mpf
    bound: mpmath.mpf

    @property
    def ok(self) -> bool:
        return self.residual <= self.bound


def identity_terms(kind: str, n: int, table: MomentTable):
    """Right-hand side of the recursive identity for U(n) or V(n).

    Returns ``(constant, [(sign, 'U'|'V', argument), ...])``.
    """
    p = table.p
    b, a = p.b, p.alpha
    digits = [d for d in range(b) if d != a] if p.same else list(range(b))
    if kind == "U":
        const = mpmath.mpf(1) / n
        if p.same:
            terms = [(1, "U", n * b + d) for d in digits]
            terms += [(1, "U", n * b * b + d * b + a) for d in digits]
        else:
            terms = [(1, "U", n * b + d) for d in digits]
            terms.append((-1, "U", n * b * b + p.pair_value))
    elif kind == "V":
        const = mpmath.mpf(0)
        if p.same:
            terms = [(1, "V", n * b + d) for d in digits]
            terms += [(1, "V", n * b * b + d * b + a) for d in digits]
            terms += [(1, "U", n * b**3 + d * b * b + a * b + a) for d in digits]
        else:
            terms = [(1, "V", n * b + d) for d in digits]
            terms.append((-1, "V", n * b * b + p.pair_value))
            terms.append((1, "U", n * b * b + p.pair_value))
    else:
        raise ValueError("kind must be 'U' or 'V'")
    return const, terms


def check_functional_identity(kind: str, n: int, table: MomentTable, M: int) -> IdentityCheck:
    """|LHS - RHS| of the recursive identity, with the sum of all evaluation bounds."""
    funcs = {"U": U, "V": V}
    with mp.workdps(table.dps):
        lhs = funcs[kind](n, table, M)
        const, terms = identity_terms(kind, n, table)
        rhs = const
        bound = lhs.error_bound + 2 * mpmath.eps * abs(const)
        for sign, which, arg in terms:
            sv = funcs[which](arg, table, M)
            rhs += sign * sv.value
            bound += sv.error_bound
        residual = abs(lhs.value - rhs)
        bound += (len(terms) + 2) * mpmath.eps * (abs(rhs) + abs(lhs.value))
    return IdentityCheck(residual, bound)

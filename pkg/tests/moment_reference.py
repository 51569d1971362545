"""Exact moments from the self-similarity of the digit-string measures.

A string led by digit d is d followed by a shorter admissible string Y, placed
at x = (d + y)/b with weight b^-1 times the weight of Y.  Writing each measure
as the sum over its leading digit gives, for every m, a 2x2 linear system in
the total moment and the moment restricted to one leading digit ``e``
(e = beta when alpha != beta, e = alpha otherwise).  Nothing here shares code
with the package's recurrences.
"""

from fractions import Fraction
from math import comb


def _solve2(a11, a12, a21, a22, r1, r2):
    det = a11 * a22 - a12 * a21
    return (r1 * a22 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det


def _push(m, d, seq):
    """sum_{j<m} C(m,j) d^(m-j) seq[j] (the part with known moments)."""
    return sum(comb(m, j) * Fraction(d) ** (m - j) * seq[j] for j in range(m))


def exact_moments(b, alpha, beta, M):
    """(u, v) lists of Fractions for m = 0..M, with the package's conventions."""
    e = beta if alpha != beta else alpha
    mu, mue = [], []
    nu, nue = [], []
    for m in range(M + 1):
        s = Fraction(1, b ** (m + 1))
        # mu_m = [m=0] + s*(b*mu_m - mue_m + K), mue_m = s*(mu_m - [e=alpha]*mue_m + Ke)
        K = sum(_push(m, d, mu) for d in range(b)) - _push(m, alpha, mue)
        Ke = _push(m, e, mu) - (_push(m, e, mue) if e == alpha else 0)
        x, y = _solve2(1 - s * b, s, -s, 1 + (s if e == alpha else 0),
                       (1 if m == 0 else 0) + s * K, s * Ke)
        mu.append(x)
        mue.append(y)
        # nu restricted at alpha also gains the strings Y led by beta with no
        # occurrence: nu_d = s*int(nu - [d=alpha](nue - mue)).
        K = sum(_push(m, d, nu) for d in range(b)) - _push(m, alpha, nue) + _push(m, alpha, mue) + mue[m]
        Ke = _push(m, e, nu) + ((_push(m, e, mue) + mue[m] - _push(m, e, nue)) if e == alpha else 0)
        x, y = _solve2(1 - s * b, s, -s, 1 + (s if e == alpha else 0), s * K, s * Ke)
        nu.append(x)
        nue.append(y)
    if alpha == beta:
        return [a - c for a, c in zip(mu, mue)], [a - c for a, c in zip(nu, nue)]
    return mu, nu

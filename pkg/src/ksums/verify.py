"""Self-checks run by ``ksums verify``.  Each returns (name, passed, detail)."""

from __future__ import annotations

import mpmath

from .counting import count_per_length, mass_gf
from .digits_core import PatternSpec
from .moments import compute_moments
from .oracle import brute_partial, direct_series_b2, enumerate_counts, erdos_borwein
from .stieltjes import check_functional_identity
from .summation import KRequest, k0, k1


def _identities(b, pattern, ns, M=120, dps=50):
    p = PatternSpec.parse(b, pattern)
    table = compute_moments(p, M + 1, dps)
    worst = None
    for kind in ("U", "V"):
        for n in ns:
            chk = check_functional_identity(kind, n, table, M)
            if not chk.ok:
                return False, f"{kind}({n}) residual {mpmath.nstr(chk.residual, 3)} > {mpmath.nstr(chk.bound, 3)}"
            worst = chk.residual if worst is None else max(worst, chk.residual)
    return True, f"max residual {mpmath.nstr(worst, 3)}"


def _counts(b, pattern, l_max):
    p = PatternSpec.parse(b, pattern)
    for occ in (0, 1):
        if enumerate_counts(p, occ, l_max) != count_per_length(p, occ, None, l_max).values:
            return False, f"occurrences={occ} mismatch"
    return True, f"l <= {l_max}"


def _sandwich(b, pattern, N, digits=12):
    p = PatternSpec.parse(b, pattern)
    val = k1(KRequest(p, "K1", digits)).value
    sb = brute_partial(p, 1, N)
    return sb.contains(val), f"{sb.lower:.6f} < {mpmath.nstr(val, 10)} < {sb.upper:.6f}"


def _erdos_borwein(digits=40):
    res = k0(KRequest(PatternSpec(2, 1, 0), "K0", digits))
    with mpmath.mp.workdps(digits + 10):
        diff = abs(res.value - erdos_borwein(digits + 5))
    return diff < mpmath.mpf(10) ** -digits, f"|diff| = {mpmath.nstr(diff, 3)}"


def _direct_b2(pattern, digits=12):
    res = k1(KRequest(PatternSpec.parse(2, pattern), "K1", digits + 5))
    ref = direct_series_b2(pattern, 80, digits + 10)
    diff = abs(res.value - ref.value)
    return diff < mpmath.mpf(10) ** -digits, f"|diff| = {mpmath.nstr(diff, 3)}"


def _z_is_w_beta_squared(max_base=5):
    for b in range(2, max_base + 1):
        for a in range(b):
            for be in range(b):
                p = PatternSpec(b, a, be)
                wb = mass_gf(p, "W", be)
                if mass_gf(p, "Z") != wb * wb:
                    return False, f"fails for {p}"
    return True, f"all patterns with b <= {max_base}"


def run_checks(quick: bool = True) -> list:
    checks = [
        ("identities b=2 '00'", lambda: _identities(2, "00", range(1, 5))),
        ("identities b=2 '10'", lambda: _identities(2, "10", range(1, 5))),
        ("identities b=10 '42'", lambda: _identities(10, "42", (1, 7, 42, 100), M=60)),
        ("identities b=10 '77'", lambda: _identities(10, "77", (1, 7, 77, 100), M=60)),
        ("counts b=2 '11'", lambda: _counts(2, "11", 12 if quick else 14)),
        ("counts b=3 '20'", lambda: _counts(3, "20", 8 if quick else 14)),
        ("counts b=10 '42'", lambda: _counts(10, "42", 5 if quick else 6)),
        ("sandwich b=2 '00'", lambda: _sandwich(2, "00", 16 if quick else 24)),
        ("sandwich b=10 '42'", lambda: _sandwich(10, "42", 5 if quick else 7)),
        ("K0(2,'10') = Erdos-Borwein", _erdos_borwein),
        ("K1(2,'10') direct series", lambda: _direct_b2("10")),
        ("K1(2,'01') direct series", lambda: _direct_b2("01")),
        ("Z = W_beta^2", _z_is_w_beta_squared),
    ]
    out = []
    for name, fn in checks:
        try:
            passed, detail = fn()
        except ArithmeticError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(passed), detail))
    return out

import mpmath
import pytest
from mpmath import mp

from ksums.digits_core import PatternSpec
from ksums.moments import compute_moments
from ksums.oracle import erdos_borwein
from ksums.stieltjes import U, U_beta, V, check_functional_identity, identity_terms


@pytest.fixture(scope="module")
def t42():
    return compute_moments(PatternSpec(10, 4, 2), 80, 60)


@pytest.fixture(scope="module")
def t2_10():
    return compute_moments(PatternSpec(2, 1, 0), 220, 90)


@pytest.fixture(scope="module")
def t2_00():
    return compute_moments(PatternSpec(2, 0, 0), 220, 90)


def test_zero_term_values(t42, t2_00):
    with mp.workdps(60):
        sv = U(7, t42, 0)
        assert abs(sv.value - mpmath.mpf(100) / 7) <= sv.round_bound
        assert abs(sv.trunc_bound - t42.u[1] / 49) <= sv.round_bound + t42.u_err[1]
        sv = V(7, t42, 0)
        assert abs(sv.value - mpmath.mpf(100) / 7) <= sv.round_bound
    with mp.workdps(90):
        sv = V(5, t2_00, 0)
        assert abs(sv.value - mpmath.mpf(2) / 5) <= sv.round_bound


def test_rejects_missing_tail_moment(t42):
    with pytest.raises(ValueError):
        U(3, t42, t42.M)
    with pytest.raises(ValueError):
        U(0, t42, 5)


def test_erdos_borwein_from_two_evaluations(t2_10):
    # 1 + U(3) - U(6): the single digit 1, then strings after "11" and "1" minus those after "110"
    M = 200
    with mp.workdps(90):
        a, b = U(3, t2_10, M), U(6, t2_10, M)
        e = 1 + a.value - b.value
        err = a.error_bound + b.error_bound
        assert err < mpmath.mpf(10) ** -60
        assert abs(e - erdos_borwein(80)) <= err + mpmath.mpf(10) ** -75
    assert mpmath.nstr(e, 15) == "1.60669515241529"


def test_intro_display_matches_evaluations(t2_10):
    M = 200
    with mp.workdps(90):
        display = 1 + 4 * (mpmath.mpf(1) / 3 - mpmath.mpf(1) / 6)
        for m in range(1, M + 1):
            term = t2_10.u[m] * (mpmath.mpf(3) ** -(m + 1) - mpmath.mpf(6) ** -(m + 1))
            display += -term if m % 2 else term
        direct = 1 + U(3, t2_10, M).value - U(6, t2_10, M).value
        assert abs(display - direct) < mpmath.mpf(10) ** -80


@pytest.mark.parametrize("kind,n,fixture,M", [
    ("U", 1, "t42", 60), ("V", 1, "t42", 60), ("U", 7, "t42", 60),
    ("V", 3, "t2_10", 200), ("U", 1, "t2_10", 200),
    ("V", 1, "t2_00", 200), ("U", 2, "t2_00", 200),
])
def test_functional_identities(kind, n, fixture, M, request):
    chk = check_functional_identity(kind, n, request.getfixturevalue(fixture), M)
    assert chk.ok, (chk.residual, chk.bound)


def test_identity_detects_wrong_moments(t42):
    # perturbing one moment must break the identity (n = 5 keeps every bound tiny)
    import copy
    bad = copy.copy(t42)
    bad.u = list(t42.u)
    bad.u[3] *= 1 + mpmath.mpf(10) ** -20
    assert check_functional_identity("U", 5, t42, 60).ok
    assert not check_functional_identity("U", 5, bad, 60).ok


def test_identity_term_families():
    t = compute_moments(PatternSpec(2, 0, 0), 4, 20)
    const, terms = identity_terms("V", 1, t)
    assert const == 0
    # d != alpha in base 2 leaves only d = 1: V(3), V(1*4+2+0), U(8+4+0+0)
    assert sorted(terms) == [(1, "U", 12), (1, "V", 3), (1, "V", 6)]
    with pytest.raises(ValueError):
        identity_terms("W", 1, t)


def test_u_beta_alias(t42):
    assert U_beta(7, t42, 40).value == U(72, t42, 40).value
    t = compute_moments(PatternSpec(2, 1, 0), 10, 20)
    assert U_beta(1, t, 5).value == U(2, t, 5).value
    with pytest.raises(ValueError):
        U_beta(1, compute_moments(PatternSpec(10, 3, 3), 5, 20), 2)


@pytest.mark.parametrize("n", [1, 2, 10, 37])
def test_alternating_enclosure(t2_00, n):
    with mp.workdps(90):
        ref = U(n, t2_00, 200)
        slack = ref.error_bound
        for M in range(0, 30):
            # an even number of omitted-sign flips: partial sums through even M sit above
            hi, lo = U(n, t2_00, M), U(n, t2_00, M + 1)
            if M % 2:
                hi, lo = lo, hi
            assert lo.value - slack <= ref.value <= hi.value + slack
            cur = U(n, t2_00, M)
            assert abs(cur.value - ref.value) <= cur.error_bound + slack


def test_paired_terms_positive_and_decreasing():
    b = 10
    for a, be in ((4, 2), (1, 0), (9, 8)):
        for n1 in range(1, b):
            diffs = [mpmath.mpf(n1 * b + a) ** -(m + 1) - mpmath.mpf(n1 * b * b + a * b + be) ** -(m + 1)
                     for m in range(60)]
            assert all(d > 0 for d in diffs)
            assert all(x > y for x, y in zip(diffs, diffs[1:]))

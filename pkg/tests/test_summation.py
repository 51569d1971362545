import random

import mpmath
import pytest
from mpmath import mp

from ksums.digits_core import PatternSpec
from ksums.oracle import brute_partial
from ksums.summation import (
    KRequest,
    assemble,
    assemble_by_evaluations,
    evaluate,
    evaluation_points,
    harmonic_prefix,
    k0,
    k1,
    k1_level1,
    k1_statistics,
    moment_table,
    plan,
    zeroth_moment_block,
)
from published_values import K1_BASE2, as_scaled_int


def test_request_validation():
    p = PatternSpec(10, 4, 2)
    with pytest.raises(ValueError):
        KRequest(p, "K2", 10)
    with pytest.raises(ValueError):
        KRequest(p, "K1", 0)
    with pytest.raises(ValueError):
        k0(KRequest(p, "K1", 10))
    with pytest.raises(ValueError):
        k1(KRequest(p, "K0", 10))


@pytest.mark.parametrize("b,digits,lo,hi", [(10, 100, 105, 115), (2, 100, 340, 360), (10, 1, 1, 6)])
def test_plan_ranges(b, digits, lo, hi):
    M, dps = plan(KRequest(PatternSpec(b, 1, 0), "K1", digits))
    assert lo <= M <= hi
    assert dps > digits


def test_evaluation_point_families():
    b = 10
    pts = evaluation_points(PatternSpec(b, 4, 2), "K0")
    assert len(pts) == (b * b - b - 1) + (b - 1)
    assert min(e.n for e in pts) >= b
    pts = evaluation_points(PatternSpec(b, 0, 5), "K1")
    # alpha = 0: no U at the pattern itself, and 05 is not a two-digit integer
    assert all(e.n != 5 for e in pts)
    assert len([e for e in pts if e.kind == "V" and e.n < b * b]) == b * b - b
    pts = evaluation_points(PatternSpec(b, 3, 3), "K1")
    assert max(e.n for e in pts) < b**4
    assert min(e.n for e in pts) >= b


def test_harmonic_prefix():
    from fractions import Fraction
    assert harmonic_prefix(PatternSpec(3, 1, 0), "K0") == Fraction(3, 2)
    assert harmonic_prefix(PatternSpec(3, 1, 0), "K1") == 0


def test_zeroth_block_exact_below_17():
    from fractions import Fraction
    assert isinstance(zeroth_moment_block(PatternSpec(16, 1, 0), "K1"), Fraction)
    assert not isinstance(zeroth_moment_block(PatternSpec(17, 1, 0), "K1"), Fraction)


def test_erdos_borwein_as_k0():
    res = k0(KRequest(PatternSpec(2, 1, 0), "K0", 30))
    assert res.decimal_string(14) == "1.60669515241529"
    assert res.error_bound < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("pattern", ["10", "01", "00", "11"])
def test_base2_constants(pattern):
    ref, digits = as_scaled_int(K1_BASE2[pattern])
    res = k1(KRequest(PatternSpec.parse(2, pattern), "K1", digits + 5))
    assert abs(res.scaled_integer(digits) - ref) <= 1


@pytest.mark.parametrize("pat", [(10, 0, 4), (10, 0, 0), (10, 4, 0), (10, 1, 1)])
def test_zero_digit_bookkeeping_inside_sandwich(pat):
    p = PatternSpec(*pat)
    for which, occ in (("K0", 0), ("K1", 1)):
        res = evaluate(p, which, 15)
        assert brute_partial(p, occ, 6).contains(res.value)


def test_sandwich_b3_all_patterns():
    for a in range(3):
        for be in range(3):
            p = PatternSpec(3, a, be)
            for which, occ in (("K0", 0), ("K1", 1)):
                assert brute_partial(p, occ, 12).contains(evaluate(p, which, 12).value)


def test_escalation_consistency():
    for pat in [(10, 4, 2), (7, 3, 3), (2, 0, 1)]:
        p = PatternSpec(*pat)
        for which in ("K0", "K1"):
            lo, hi = evaluate(p, which, 40), evaluate(p, which, 60)
            with mp.workdps(80):
                assert abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound
            assert lo.scaled_integer(38) == hi.scaled_integer(38)


def test_level1_agrees_with_level2():
    for pat in [(10, 4, 2), (10, 0, 7), (2, 1, 0), (5, 3, 1)]:
        p = PatternSpec(*pat)
        res = evaluate(p, "K1", 30)
        M = 400 if p.b > 2 else 200
        # the one-step form evaluates at n = 1, so it needs far more moments
        table = moment_table(p, M + 1, 60)
        value, bound = k1_level1(table, M)
        with mp.workdps(60):
            assert abs(value - res.value) <= bound + res.error_bound


def test_grouped_and_per_evaluation_assembly_agree():
    for pat in [(10, 4, 2), (10, 5, 5), (3, 0, 0)]:
        p = PatternSpec(*pat)
        for which in ("K0", "K1"):
            M, dps = plan(KRequest(p, which, 40))
            table = moment_table(p, M + 1, dps)
            v1, trunc, rerr = assemble(p, which, table, M)
            v2, bound = assemble_by_evaluations(p, which, table, M)
            with mp.workdps(dps):
                assert abs(v1 - v2) <= trunc + rerr + bound


def test_assemble_needs_extra_moment():
    p = PatternSpec(10, 4, 2)
    with pytest.raises(ValueError):
        assemble(p, "K1", moment_table(p, 10, 30), 10)


def test_result_formatting():
    res = k1(KRequest(PatternSpec(10, 4, 2), "K1", 20))
    s = res.decimal_string()
    assert s.startswith("230.2588213214")
    assert len(s.split(".")[1]) == 20
    assert res.error_bound < mpmath.mpf(10) ** -20
    assert res.M_used >= 1 and res.precision_used > 20


def test_statistics_base2():
    st = k1_statistics(2, 25)
    for pat, text in K1_BASE2.items():
        ref, digits = as_scaled_int(text)
        assert abs(st.results[pat].scaled_integer(min(digits, 25)) - ref // 10 ** max(digits - 25, 0)) <= 1
    assert st.below_reference == ["00"]  # 4 log 2 is about 2.7726
    assert st.below_reference == [lab for lab, d in st.deviations.items() if d < 0]


def test_random_patterns_k0_k1_positive_and_ordered():
    rng = random.Random(11)
    for _ in range(6):
        b = rng.randint(2, 12)
        p = PatternSpec(b, rng.randrange(b), rng.randrange(b))
        r0, r1 = evaluate(p, "K0", 20), evaluate(p, "K1", 20)
        h = harmonic_prefix(p, "K0")
        assert r0.value > mpmath.mpf(h.numerator) / h.denominator
        assert r1.value > 0

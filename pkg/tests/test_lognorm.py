"""Exact norm-value arithmetic and interval-refined comparison."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nonarch import (Cmp, LogNorm, RadiusDecl, UndecidableAtDepth,
                     in_value_group_rational, ln_compare, ln_mul, ln_pow)
from nonarch.lognorm import log_q_interval, norm_exceeds

R1 = RadiusDecl.default("r1")             # log_q(1/r) = sqrt(2)/2
R06 = RadiusDecl.rational_stub("r06", Fraction(3, 5),
                               asserts_irrational=True)


def test_mul_examples():
    assert ln_mul(LogNorm.of(1, (0,)), LogNorm.of(0, (1,))) \
        == LogNorm.of(1, (1,))
    assert ln_mul(LogNorm.zero(1), LogNorm.of(5, (7,))).is_zero
    assert ln_mul(LogNorm.of(Fraction(1, 2), (3,)),
                  LogNorm.of(Fraction(1, 2), (-3,))) == LogNorm.of(1, (0,))


def test_pow_examples():
    assert ln_pow(LogNorm.of(2, (0,)), Fraction(1, 2)) == LogNorm.of(1, (0,))
    assert ln_pow(LogNorm.of(1, (1,)), 3) == LogNorm.of(3, (3,))
    assert ln_pow(LogNorm.zero(1), 2).is_zero
    with pytest.raises(ValueError):
        ln_pow(LogNorm.zero(1), 0)


def test_compare_examples():
    assert ln_compare(LogNorm.identity(1), LogNorm.identity(1)) is Cmp.EQ
    # q = 3, log(1/r) ~ 0.6: 3^-1 < 3^-0.6 and 3^-1 > 3^-1.2
    assert ln_compare(LogNorm.of(1, (0,)), LogNorm.of(0, (1,)),
                      (R06,)) is Cmp.LT
    assert ln_compare(LogNorm.of(1, (0,)), LogNorm.of(0, (2,)),
                      (R06,)) is Cmp.GT
    assert ln_compare(LogNorm.zero(1), LogNorm.identity(1)) is Cmp.LT


def test_value_group_membership():
    assert in_value_group_rational(LogNorm.of(Fraction(1, 2), (0,)))
    assert not in_value_group_rational(LogNorm.of(0, (1,)))
    assert not in_value_group_rational(LogNorm.of(2, (Fraction(3, 2),)))
    with pytest.raises(ValueError):
        in_value_group_rational(LogNorm.zero(1))


def test_undecidable_for_dependent_radii():
    # two generators declared with the same irrational stream: the log
    # difference of r_1 and r_2 is exactly zero, so refinement never decides
    a = RadiusDecl.default("a")
    b = RadiusDecl.default("b")
    with pytest.raises(UndecidableAtDepth):
        ln_compare(LogNorm.of(0, (1, 0)), LogNorm.of(0, (0, 1)), (a, b))


def test_never_eq_for_distinct_structures():
    # decidable distinct pair
    assert ln_compare(LogNorm.of(0, (1,)), LogNorm.of(0, (2,)),
                      (R1,)) is Cmp.GT


def test_declarations():
    assert R1.asserts_irrational and R1.check_declaration()
    assert not R06.check_declaration()     # stub cannot be verified
    sq9 = RadiusDecl.quadratic("bad", 0, 1, 1, 9)
    assert not sq9.asserts_irrational      # sqrt(9) = 3 is rational
    lo, hi = R1.interval(64)
    assert lo < hi and hi - lo <= Fraction(1, 2 ** 63)
    assert Fraction(7, 10) < lo < hi < Fraction(71, 100)


def test_pad_and_json():
    n = LogNorm.of(Fraction(1, 2))
    assert n.pad(2) == LogNorm.of(Fraction(1, 2), (0, 0))
    assert LogNorm.from_json(n.to_json()) == n
    z = LogNorm.zero(3)
    assert LogNorm.from_json(z.to_json()).is_zero
    assert RadiusDecl.from_json(R1.to_json()).interval(20) == R1.interval(20)


def test_norm_exceeds():
    ratio = LogNorm.of(0, (-37,))   # r^-37 = 3^(37 * 0.7071)
    assert norm_exceeds(ratio, (R1,), 3, Fraction(10) ** 6)
    assert not norm_exceeds(ratio, (R1,), 3, Fraction(10) ** 30)
    lo, hi = log_q_interval(ratio, (R1,))
    assert lo < hi and Fraction(26) < lo and hi < Fraction(27)


_exp = st.fractions(min_value=Fraction(-8), max_value=Fraction(8),
                    max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(_exp, _exp, _exp, _exp)
def test_pow_additivity(a, b, s, t):
    n = LogNorm.of(a, (b,))
    if s == 0 and t == 0:
        return
    assert ln_mul(ln_pow(n, s), ln_pow(n, t)) == ln_pow(n, s + t) \
        or (s + t == 0)


@settings(max_examples=60, deadline=None)
@given(_exp, _exp, _exp, _exp, _exp, _exp)
def test_order_respects_mul(a1, b1, a2, b2, a3, b3):
    x, y = LogNorm.of(a1, (b1,)), LogNorm.of(a2, (b2,))
    c = LogNorm.of(a3, (b3,))
    cmp_xy = ln_compare(x, y, (R1,))
    assert ln_compare(ln_mul(x, c), ln_mul(y, c), (R1,)) is cmp_xy

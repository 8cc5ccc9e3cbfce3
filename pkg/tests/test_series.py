"""Truncated series arithmetic, Gauss norms and the spectral formula."""

import random
from fractions import Fraction

import pytest

from nonarch import (Cmp, FieldSpec, IncompatibleContext, LogNorm,
                     PreconditionFailed, RadiusDecl, Scalar, TateSeries,
                     gauss_norm, ln_compare, ln_mul, spectral_power_estimate,
                     spectral_radius_laurent, truncate)
from nonarch.fields import FQ_LAURENT, PADIC
from nonarch.series import LAURENT, POWER

Q3 = FieldSpec(PADIC, 3, precision_cap=40)
F2T = FieldSpec(FQ_LAURENT, 2, field_size=2, precision_cap=64)
R1 = RadiusDecl.default("r1")


def mono(exp, coeff, kind=POWER, spec=Q3):
    return TateSeries.monomial(spec, (R1,), exp,
                               Scalar.from_fraction(spec, Fraction(coeff)),
                               kind)


def test_ring_examples():
    T = mono(1, 1)
    assert (T + (-T)).is_ring_zero()
    prod = mono(1, 3) * T
    assert prod.sorted_terms() == [((2,), Scalar.from_int(Q3, 3))]
    assert (T * TateSeries.zero(Q3, (R1,))).is_ring_zero()


def test_incompatible_contexts():
    other = RadiusDecl.default("r2")
    f = TateSeries.monomial(Q3, (other,), 1, Scalar.one(Q3))
    with pytest.raises(IncompatibleContext):
        mono(1, 1) + f
    with pytest.raises(IncompatibleContext):
        mono(1, 1, kind=LAURENT) + mono(1, 1, kind=POWER)


def test_power_series_reject_negative_exponents():
    with pytest.raises(ValueError):
        TateSeries.monomial(Q3, (R1,), -1, Scalar.one(Q3), POWER)


def test_gauss_norm_examples():
    z, exact = gauss_norm(TateSeries.zero(Q3, (R1,)))
    assert z.is_zero and exact
    f = mono(1, 3) + mono(2, 1)
    n, exact = gauss_norm(f)
    assert exact and n == LogNorm.of(0, (2,))
    c, exact = gauss_norm(TateSeries.constant(Q3, (R1,), Scalar.from_int(Q3, 3)))
    assert exact and c == LogNorm.of(1, (0,))


def test_gauss_norm_inexact_flag():
    f = TateSeries(Q3, POWER, (R1,), {(2,): Scalar.one(Q3)},
                   LogNorm.of(0, (1,)))
    n, exact = gauss_norm(f)
    assert n == LogNorm.of(0, (2,)) and not exact
    g = TateSeries(Q3, POWER, (R1,), {(1,): Scalar.one(Q3)},
                   LogNorm.of(0, (5,)))
    n2, exact2 = gauss_norm(g)
    assert n2 == LogNorm.of(0, (1,)) and exact2


def test_spectral_examples():
    aTi = mono((-2,), 3, kind=LAURENT)
    n, exact = spectral_radius_laurent(aTi)
    assert exact and n == LogNorm.of(1, (-2,))
    f = mono(1, 1, kind=LAURENT) + mono((-1,), 1, kind=LAURENT)
    n, exact = spectral_radius_laurent(f)
    assert exact and n == LogNorm.of(0, (-1,))
    one = TateSeries.one(Q3, (R1,), kind=LAURENT)
    n, _ = spectral_radius_laurent(one)
    assert n.is_identity()
    with pytest.raises(PreconditionFailed):
        spectral_radius_laurent(mono(1, 1, kind=POWER))


def test_spectral_power_estimates():
    f = mono(1, 3, kind=LAURENT)
    assert spectral_power_estimate(f, 4) == LogNorm.of(1, (1,))
    f2 = mono(1, 1, kind=LAURENT) + mono((-1,), 1, kind=LAURENT)
    assert spectral_power_estimate(f2, 2) == LogNorm.of(0, (-1,))
    one = TateSeries.one(Q3, (R1,), kind=LAURENT)
    for power in (1, 2, 5):
        assert spectral_power_estimate(one, power).is_identity()


def test_truncate_examples():
    f = mono(2, 1) + mono(4, 1) + mono(11, 1)
    head, tail = truncate(f, 4)
    assert sorted(e[0] for e in head.support) == [2, 4]
    n, exact = gauss_norm(tail)
    assert exact and n == LogNorm.of(0, (11,))
    full, rest = truncate(f, 10 ** 9)
    assert full.equals(f) and rest.is_ring_zero()


def test_pruning_folds_into_tail():
    f = mono(0, 1) + mono(1, 1) + mono(2, 1) + mono(3, 1)
    pr = f.pruned(2)
    assert len(pr.support) == 2
    # dropped terms have the smallest norms (largest exponents for r < 1)
    assert sorted(e[0] for e in pr.support) == [0, 1]
    assert pr.tail == LogNorm.of(0, (2,))
    n, exact = gauss_norm(pr)
    assert exact and n == LogNorm.identity(1)


def test_add_norm_bounded_by_max():
    rng = random.Random(5)
    for _ in range(60):
        f = _random_series(rng, Q3)
        g = _random_series(rng, Q3)
        nf, _ = gauss_norm(f)
        ng, _ = gauss_norm(g)
        ns, _ = gauss_norm(f + g)
        if ns.is_zero:
            continue
        bound = nf if (ng.is_zero or (not nf.is_zero and ln_compare(
            nf, ng, (R1,)) is Cmp.GT)) else ng
        assert ln_compare(ns, bound, (R1,)) is not Cmp.GT


def _random_series(rng, spec):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        if spec.kind == PADIC:
            c = Scalar.from_fraction(
                spec, Fraction(rng.randint(1, 9), rng.choice([1, 2, 3, 9])))
        else:
            c = Scalar.t_power(spec, rng.randint(-2, 4))
        terms[(rng.randint(-4, 5),)] = c
    return TateSeries(spec, LAURENT, (R1,), terms)


@pytest.mark.parametrize("spec", [Q3, F2T], ids=["Q3", "F2((t))"])
def test_gauss_multiplicative_random(spec):
    rng = random.Random(11)
    done = 0
    while done < 120:
        f = _random_series(rng, spec)
        g = _random_series(rng, spec)
        if f.is_ring_zero() or g.is_ring_zero():
            continue
        nf, _ = gauss_norm(f)
        ng, _ = gauss_norm(g)
        nfg, _ = gauss_norm(f * g)
        assert nfg == ln_mul(nf, ng)
        done += 1


def test_json_roundtrip():
    f = mono(1, 3, kind=LAURENT) + mono((-1,), 2, kind=LAURENT)
    obj = f.to_json()
    back = TateSeries.from_json(Q3, (R1,), obj)
    assert back.equals(f)
    assert obj["tail"] == {"zero": True}


def test_two_variable_series():
    # the multi-index model: same weighted-maximum formula in two radii
    r2 = RadiusDecl.quadratic("r2", 0, 1, 2, 3)   # log(1/r2) = sqrt(3)/2
    radii = (R1, r2)
    a = Scalar.from_int(Q3, 3)
    f = TateSeries.monomial(Q3, radii, (2, -1), a, kind=LAURENT)
    n, exact = spectral_radius_laurent(f)
    assert exact and n == LogNorm.of(1, (2, -1))
    for power in (1, 2, 3):
        assert spectral_power_estimate(f, power) == n
    g = TateSeries.monomial(Q3, radii, (0, 1), Scalar.one(Q3), kind=LAURENT)
    nf, _ = gauss_norm(f)
    ng, _ = gauss_norm(g)
    nfg, _ = gauss_norm(f * g)
    assert nfg == ln_mul(nf, ng) == LogNorm.of(1, (2, 0))
    s = f + g
    ns, exact_s = gauss_norm(s)
    # |g| = r2 = 3^(-0.866...) beats |f| = 3^(-1 - 2*0.707 + 0.866)
    assert exact_s and ns == LogNorm.of(0, (0, 1))

"""Gap series, relation certificates, the derivation and the divergence
table."""

import random
from fractions import Fraction

import pytest

from nonarch import (FieldSpec, LogNorm, MissingCertificate, PolyInTF,
                     PreconditionFailed, RadiusDecl, Scalar, TateSeries,
                     deriv_eval, nonintegral_certificate,
                     p_independence_certificate, pbasis_series, phi,
                     sparse_indices, sparse_series, unboundedness_table)
from nonarch.fields import PADIC, RATFUN_LAURENT

Q3 = FieldSpec(PADIC, 3, precision_cap=40)
RF2 = FieldSpec(RATFUN_LAURENT, 2, nvars=3, precision_cap=64)
R1 = RadiusDecl.default("r1")
R06 = RadiusDecl.rational_stub("r06", Fraction(3, 5), asserts_irrational=True)


def test_sparse_indices():
    assert sparse_indices(1) == [2]
    assert sparse_indices(4) == [2, 4, 11, 37]
    assert sparse_indices(5) == [2, 4, 11, 37, 153]


def test_sparse_series():
    sp = sparse_series(2, Q3, R1)
    assert sorted(e[0] for e in sp.series.support) == [2, 4]
    sp3 = sparse_series(3, Q3, R1)
    assert sorted(e[0] for e in sp3.series.support) == [2, 4, 11]
    n, exact = sp3.series.gauss_norm()
    assert exact and n == LogNorm.of(0, (2,))
    assert sp3.completion_tail == LogNorm.of(0, (37,))
    undeclared = RadiusDecl.rational_stub("raw", Fraction(1, 2))
    with pytest.raises(PreconditionFailed):
        sparse_series(2, Q3, undeclared)


def test_nonintegral_acceptance_case():
    sp = sparse_series(3, Q3, R1)
    cert = nonintegral_certificate(sp, 2, 3)
    assert cert.verdict == "NON_INTEGRAL"
    assert cert.witness["rank"] == cert.witness["unknowns"] == 12
    assert cert.params["degree_gap"]["holds"]


def test_nonintegral_controls():
    fT = TateSeries.monomial(Q3, (R1,), 1, Scalar.one(Q3))
    c = nonintegral_certificate(fT, 1, 1)
    assert c.verdict == "RELATION_FOUND"
    assert set(c.witness["relation"]) == {"h0[T^0]", "h1[T^1]"}
    fT2 = TateSeries.monomial(Q3, (R1,), 2, Scalar.one(Q3))
    c2 = nonintegral_certificate(fT2, 1, 2)
    assert c2.verdict == "RELATION_FOUND"


def test_degree_gap_precondition():
    sp = sparse_series(3, Q3, R1)
    with pytest.raises(PreconditionFailed):
        nonintegral_certificate(sp, 4, 3)    # 4*11 + 3 >= 37


def test_nonintegral_char_p_field():
    from nonarch.fields import FQ_LAURENT
    f2t = FieldSpec(FQ_LAURENT, 2, field_size=2, precision_cap=64)
    sp = sparse_series(3, f2t, R1)
    cert = nonintegral_certificate(sp, 2, 3)
    assert cert.verdict == "NON_INTEGRAL"
    assert cert.witness["rank"] == 12
    fT = TateSeries.monomial(f2t, (R1,), 1, Scalar.one(f2t))
    assert nonintegral_certificate(fT, 1, 1).verdict == "RELATION_FOUND"


def test_large_certificate_fast_path():
    sp = sparse_series(6, Q3, R1)
    cert = nonintegral_certificate(sp, 1, 153, sparse=sp)
    assert cert.verdict == "NON_INTEGRAL"
    assert cert.params["method"] == "sparse-rank-certificate"


def test_derivation_values():
    sp = sparse_series(3, Q3, R1)
    f = sp.series
    cert = nonintegral_certificate(sp, 2, 3)
    assert deriv_eval(PolyInTF.T(Q3, 3), f, cert).is_ring_zero()
    one_s = f.ring_one()
    assert deriv_eval(PolyInTF.F(Q3), f, cert).equals(one_s)
    P = PolyInTF.T(Q3) * PolyInTF.F(Q3, 2)
    expect = TateSeries.monomial(Q3, (R1,), 1,
                                 Scalar.from_int(Q3, 2)) * f
    assert deriv_eval(P, f, cert).equals(expect)


def test_phi_homomorphism():
    sp = sparse_series(3, Q3, R1)
    f, cert = sp.series, nonintegral_certificate(sp, 2, 3)
    F, T = PolyInTF.F(Q3), PolyInTF.T(Q3)
    assert phi(T, f, cert).b.is_ring_zero()
    img = phi(F, f, cert)
    assert img.a.equals(f) and img.b.equals(f.ring_one())
    # products need a wider certificate: deg_F <= 4, deg_T <= 6
    sp5 = sparse_series(5, Q3, R1)
    f, cert = sp5.series, nonintegral_certificate(sp5, 4, 6)
    rng = random.Random(2)
    from nonarch.squarezero import SquareZeroRing
    ring = SquareZeroRing(f.ring_one())
    for _ in range(25):
        P = _rand_poly(rng)
        Q = _rand_poly(rng)
        # ring homomorphism and the Leibniz rule, exercised through sz_mul
        assert phi(P * Q, f, cert, ring).equals(
            phi(P, f, cert, ring) * phi(Q, f, cert, ring))
        assert phi(P + Q, f, cert, ring).equals(
            phi(P, f, cert, ring) + phi(Q, f, cert, ring))


def _rand_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.randint(0, 3), rng.randint(0, 2))] = \
            Scalar.from_int(Q3, rng.randint(-4, 4))
    return PolyInTF(Q3, terms)


def test_deriv_requires_covering_certificate():
    sp = sparse_series(3, Q3, R1)
    f, cert = sp.series, nonintegral_certificate(sp, 2, 3)
    with pytest.raises(MissingCertificate):
        deriv_eval(PolyInTF.F(Q3, 3), f, cert)     # deg_F exceeds n_max
    with pytest.raises(MissingCertificate):
        deriv_eval(PolyInTF.T(Q3, 9), f, cert)     # deg_T exceeds d_max
    other = sparse_series(2, Q3, R1)
    with pytest.raises(MissingCertificate):
        deriv_eval(PolyInTF.F(Q3), other.series, cert)
    with pytest.raises(MissingCertificate):
        deriv_eval(PolyInTF.F(Q3), f, None)


def test_unbounded_table_test_radius():
    cert = unboundedness_table(4, Q3, R06, Fraction(10) ** 6)
    assert cert.verdict == "UNBOUNDED"
    rows = cert.witness["rows"]
    assert [r["tail_index"] for r in rows] == [4, 11, 37]
    assert rows[0]["ratio"] == {"e0": "0", "radius": ["-4"]}
    assert [r["exceeds_bound"] for r in rows] == [False, False, True]
    assert cert.witness["first_row_exceeding_bound"] == 3
    assert cert.witness["strictly_increasing"]


def test_unbounded_table_default_radius():
    cert = unboundedness_table(6, Q3, R1, Fraction(10) ** 30)
    rows = cert.witness["rows"]
    assert [r["tail_index"] for r in rows] == [4, 11, 37, 153, 771]
    for n, row in enumerate(rows, start=1):
        assert row["ratio"] == {"e0": "0",
                                "radius": [str(-sparse_indices(n + 1)[n])]}
    assert rows[4]["exceeds_bound"]
    assert cert.verdict == "UNBOUNDED"


def test_pbasis_series():
    f = pbasis_series(2, 3, 4, RF2, R1)
    assert f.to_json()["terms"] == [
        {"exp": [0], "coeff": "t"}, {"exp": [1], "coeff": "u1"},
        {"exp": [2], "coeff": "u2"}, {"exp": [3], "coeff": "u3"}]
    single = pbasis_series(2, 3, 1, RF2, R1)
    assert single.to_json()["terms"] == [{"exp": [0], "coeff": "t"}]
    # products extend the generator list beyond N + 1
    f6 = pbasis_series(2, 3, 6, RF2, R1)
    assert f6.to_json()["terms"][4]["coeff"] == "u1*t"
    with pytest.raises(PreconditionFailed):
        pbasis_series(2, 3, 20, RF2, R1)
    ident = LogNorm.identity(1)
    from nonarch import Cmp, ln_compare
    for _, c in f.sorted_terms():
        assert ln_compare(c.norm_ln(1), ident, (R1,)) is not Cmp.GT


def test_p_independence_acceptance():
    f = pbasis_series(2, 3, 4, RF2, R1)
    cert = p_independence_certificate(f, 4, 2)
    assert cert.verdict == "P_INDEPENDENT"
    assert len(cert.witness["obstructions"]) == 4
    for obs in cert.witness["obstructions"]:
        assert obs["span_parity_ok"]


def test_p_independence_controls():
    u1sq = TateSeries.monomial(RF2, (R1,), 2, Scalar.uvar(RF2, 0).pow_int(2))
    c = p_independence_certificate(u1sq, 4, 2)
    assert c.verdict == "RELATION_FOUND"
    rel = c.witness["relation"][0]
    assert rel["pth_power_monomial"] == {"T": 1, "exps": [0, 1, 0, 0]}
    fT = TateSeries.monomial(RF2, (R1,), 1, Scalar.one(RF2))
    c2 = p_independence_certificate(fT, 4, 2)
    assert c2.verdict == "RELATION_FOUND"
    assert c2.witness["relation"][0]["g_monomial"]["T"] == 1


def test_p_independence_mixed_dependent():
    # u1 T + u1^3 T^3 = (u1 T)(1 + u1 T)^2: genuinely dependent, found
    # only through the t-omitting span
    u1 = Scalar.uvar(RF2, 0)
    f = TateSeries.from_terms(RF2, (R1,), [((1,), u1),
                                           ((3,), u1.pow_int(3))])
    cert = p_independence_certificate(f, 4, 2)
    # u1 appears with odd exponent, so the u1-obstruction applies and the
    # series is certified independent of relations omitting u1
    assert cert.verdict == "P_INDEPENDENT"
    assert [o["lambda"] for o in cert.witness["obstructions"]] == ["u1"]

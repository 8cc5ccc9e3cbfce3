"""Explicit unbounded homomorphisms and their machine-checkable evidence.

Construction chain, all exactly computable:

* a sparse gap series f = sum T^(i_m) whose exponent gaps grow so fast
  that no bounded-degree algebraic relation over k(T) can hold
  (``nonintegral_certificate`` refutes relations by exact linear algebra);
* the derivation d/dF on the subring k[T][f], realised on bivariate
  polynomials P(T, F) (``deriv_eval``), with d(f) = 1;
* the dual-number homomorphism phi(P) = (P(T,f), dP/dF(T,f)) into the
  square-zero extension, whose norm-ratio table diverges
  (``unboundedness_table``);
* in characteristic p, a series with p-independent coefficients
  (``pbasis_series``) and an exhaustive-span certificate that no bounded
  relation f0^p g0 f = sum g_i f_i^p omitting a declared p-basis generator
  exists (``p_independence_certificate``).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import combinations, product as iproduct
from fractions import Fraction

from .errors import (MissingCertificate, PreconditionFailed)
from .fields import (PADIC, RATFUN_LAURENT, FieldSpec, Scalar)
from .lognorm import (Cmp, LogNorm, RadiusDecl, ln_compare, ln_mul, ln_pow,
                      log_q_interval, norm_exceeds)
from .linalg import (FractionField, PrimeField, nullspace, sparse_rank_mod_p)
from .series import POWER, TateSeries
from .squarezero import SquareZeroRing

MAX_SYSTEM_ENTRIES = 2_000_000
MAX_SPAN_PRODUCTS = 10_000_000
DENSE_ENTRY_LIMIT = 40_000


@dataclass
class Certificate:
    kind: str              # NON_INTEGRAL | P_INDEPENDENT | UNBOUNDED
    verdict: str           # certificate-specific verdict token
    params: dict
    witness: dict
    claim: str

    @property
    def positive(self) -> bool:
        return self.verdict in ("NON_INTEGRAL", "P_INDEPENDENT", "UNBOUNDED")

    def to_json(self):
        return {"kind": self.kind, "claim": self.claim,
                "verdict": self.verdict, "params": self.params,
                "witness": self.witness}


def series_fingerprint(f: TateSeries) -> str:
    blob = json.dumps(f.to_json(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Sparse gap series


def sparse_indices(m: int):
    """Exponent sequence with super-factorial gaps: 2, 4, 11, 37, 153, ..."""
    if m < 1:
        raise ValueError("need at least one term")
    seq = [2]
    for j in range(1, m):
        seq.append(j * (1 + seq[-1]) + 1)
    return seq


@dataclass
class SparseSeries:
    series: TateSeries
    indices: list
    next_index: int
    completion_tail: LogNorm   # bound r^(i_{m+1}) for the omitted ideal tail

    @property
    def terms(self) -> int:
        return len(self.indices)


def sparse_series(m: int, spec: FieldSpec, radius: RadiusDecl) -> SparseSeries:
    """First m terms of the gap series, exact, plus completion semantics."""
    if not radius.asserts_irrational:
        raise PreconditionFailed(
            f"radius {radius.gen_id} is not declared outside |k^x|^Q")
    idx = sparse_indices(m + 1)
    one = Scalar.one(spec)
    ser = TateSeries(spec, POWER, (radius,),
                     {(i,): one for i in idx[:m]})
    return SparseSeries(ser, idx[:m], idx[m],
                        LogNorm.of(0, (idx[m],)))


# ---------------------------------------------------------------------------
# Non-integrality certificate


def _prime_entry(c: Scalar):
    """Coefficient as an element of the prime field (Fraction or residue)."""
    if not c.exact:
        raise PreconditionFailed("certificates need exact coefficients")
    if c.kind == PADIC:
        return c._frac
    if c.is_ring_zero():
        return 0
    if c.valuation() != 0 or set(c._unit) != {0}:
        raise PreconditionFailed(
            "certificate coefficients must be residue-field constants")
    u = c._unit[0]
    if isinstance(u, tuple):
        if len(u) > 1:
            raise PreconditionFailed(
                "certificate coefficients must lie in the prime field")
        return u[0] if u else 0
    if not u.is_poly() or not u.num.is_const():
        raise PreconditionFailed(
            "certificate coefficients must lie in the prime field")
    return u.num.const_value()


def _series_prime_coeffs(f: TateSeries):
    out = {}
    for e, c in f.support.items():
        if len(e) != 1:
            raise PreconditionFailed(
                "relation certificates are single-variable")
        out[e[0]] = _prime_entry(c)
    return out


def _poly_mul1(a, b, char):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            v = out.get(k, 0) + x * y
            if char:
                v %= char
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def nonintegral_certificate(f, n_max: int, d_max: int,
                            sparse: SparseSeries = None) -> Certificate:
    """Brute-force refutation of algebraic relations of bounded degree.

    Searches for polynomials h_0..h_n over k with deg <= d_max satisfying
    h_0 f^n + h_1 f^(n-1) + ... + h_n = 0 (n = n_max).  The verdict is
    NON_INTEGRAL when the homogeneous system has only the trivial solution
    (or every solution forces h_0 = 0); a found relation with h_0 != 0 is
    returned as a witness.

    With sparse metadata the claim transfers to the completed gap series:
    the degree-gap condition n_max * i_m + d_max < i_{m+1} guarantees the
    truncation determines every compared coefficient.
    """
    if isinstance(f, SparseSeries):
        sparse = f
        f = f.series
    if n_max < 1 or d_max < 0:
        raise ValueError("need n_max >= 1 and d_max >= 0")
    params = {"n_max": n_max, "d_max": d_max,
              "series": series_fingerprint(f)}
    if sparse is not None:
        i_m = sparse.indices[-1]
        gap_ok = n_max * i_m + d_max < sparse.next_index
        params["faithful_degree"] = sparse.next_index - 1
        params["degree_gap"] = {
            "top_index": i_m, "next_index": sparse.next_index,
            "lhs": n_max * i_m + d_max, "holds": gap_ok}
        if not gap_ok:
            raise PreconditionFailed(
                f"degree gap fails: {n_max}*{i_m}+{d_max} >= "
                f"{sparse.next_index}; truncation is not faithful at these "
                "bounds")
    if not f.is_exact():
        raise PreconditionFailed("certificate needs an exact truncation")
    char = f.spec.char
    coeffs = _series_prime_coeffs(f)
    deg_f = max(coeffs, default=0)
    # powers of f as single-variable coefficient dicts over the prime field
    fpows = [{0: 1}]
    for _ in range(n_max):
        fpows.append(_poly_mul1(fpows[-1], coeffs, char))
    n_eqs = n_max * deg_f + d_max + 1
    unknowns = [(i, e) for i in range(n_max + 1) for e in range(d_max + 1)]
    n_unk = len(unknowns)
    if n_eqs * n_unk > MAX_SYSTEM_ENTRIES:
        raise PreconditionFailed("relation system exceeds the configured cap")
    params["system"] = {"equations": n_eqs, "unknowns": n_unk}

    def entry(k, i, e):
        return fpows[n_max - i].get(k - e, 0)

    # large rational systems: certify full column rank modulo a big prime
    # (a full-rank minor mod P is nonzero over Q)
    if char == 0 and n_eqs * n_unk > DENSE_ENTRY_LIMIT:
        intish = all(v.denominator == 1 for v in coeffs.values())
        if intish:
            rows = []
            for k in range(n_eqs):
                row = {}
                for col, (i, e) in enumerate(unknowns):
                    v = entry(k, i, e)
                    if v:
                        row[col] = int(v)
                if row:
                    rows.append(row)
            r = sparse_rank_mod_p(rows, n_unk)
            if r == n_unk:
                params["method"] = "sparse-rank-certificate"
                return Certificate(
                    "NON_INTEGRAL", "NON_INTEGRAL", params,
                    {"rank": r, "unknowns": n_unk, "nullity": 0},
                    "no-bounded-degree-algebraic-relation")
            # fall through to the exact dense path

    fld = FractionField() if char == 0 else PrimeField(char)
    rows = []
    for k in range(n_eqs):
        rows.append([entry(k, i, e) if char == 0 else entry(k, i, e) % char
                     for (i, e) in unknowns])
    basis = nullspace(rows, n_unk, fld)
    rank = n_unk - len(basis)
    params["method"] = "dense-nullspace"
    witness = {"rank": rank, "unknowns": n_unk, "nullity": len(basis)}
    if not basis:
        return Certificate("NON_INTEGRAL", "NON_INTEGRAL", params, witness,
                           "no-bounded-degree-algebraic-relation")
    h0_cols = [c for c, (i, _) in enumerate(unknowns) if i == 0]
    monic_vec = None
    for vec in basis:
        if any(not fld.is_zero(vec[c]) for c in h0_cols):
            monic_vec = vec
            break
    if monic_vec is None:
        witness["note"] = "solutions exist but all force h_0 = 0"
        return Certificate("NON_INTEGRAL", "NON_INTEGRAL", params, witness,
                           "no-bounded-degree-algebraic-relation")
    relation = {}
    for col, (i, e) in enumerate(unknowns):
        v = monic_vec[col]
        if not fld.is_zero(v):
            relation[f"h{i}[T^{e}]"] = str(v)
    witness["relation"] = relation
    return Certificate("NON_INTEGRAL", "RELATION_FOUND", params, witness,
                       "no-bounded-degree-algebraic-relation")


# ---------------------------------------------------------------------------
# The derivation d/dF on k[T][f]


class PolyInTF:
    """Bivariate polynomial P(T, F) with scalar coefficients, canonical."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms):
        self.spec = spec
        cleaned = {}
        for (dt, df), c in terms.items():
            if not isinstance(c, Scalar):
                c = Scalar.from_fraction(spec, c)
            if dt < 0 or df < 0:
                raise ValueError("polynomial degrees must be >= 0")
            if not c.is_ring_zero():
                cleaned[(dt, df)] = c
        self.terms = cleaned

    @classmethod
    def T(cls, spec, k: int = 1):
        return cls(spec, {(k, 0): Scalar.one(spec)})

    @classmethod
    def F(cls, spec, k: int = 1):
        return cls(spec, {(0, k): Scalar.one(spec)})

    @classmethod
    def const(cls, spec, c):
        return cls(spec, {(0, 0): c})

    def deg_T(self):
        return max((dt for dt, _ in self.terms), default=0)

    def deg_F(self):
        return max((df for _, df in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_ring_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return PolyInTF(self.spec, out)

    def __neg__(self):
        return PolyInTF(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                v = c1 * c2
                if k in out:
                    s = out[k] + v
                    if s.is_ring_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not v.is_ring_zero():
                    out[k] = v
        return PolyInTF(self.spec, out)

    def d_dF(self):
        out = {}
        for (dt, df), c in self.terms.items():
            if df == 0:
                continue
            scaled = c * Scalar.from_int(self.spec, df)
            if not scaled.is_ring_zero():
                out[(dt, df - 1)] = scaled
        return PolyInTF(self.spec, out)

    def eval_at(self, f: TateSeries) -> TateSeries:
        pows = {0: f.ring_one()}

        def fpow(k):
            if k not in pows:
                pows[k] = fpow(k - 1) * f
            return pows[k]

        acc = TateSeries.zero(f.spec, f.radii, f.kind)
        for (dt, df), c in sorted(self.terms.items()):
            term = fpow(df).scalar_mul(c)
            if dt:
                term = term * TateSeries.monomial(
                    f.spec, f.radii, (dt,) + (0,) * (f.nvars - 1),
                    Scalar.one(f.spec), f.kind)
            acc = acc + term
        return acc

    def to_json(self):
        return [{"T": dt, "F": df, "coeff": c.to_literal()}
                for (dt, df), c in sorted(self.terms.items())]

    def __repr__(self):
        return f"PolyInTF({self.to_json()})"


def _require_cover(cert: Certificate, P: PolyInTF, f: TateSeries):
    if cert is None:
        raise MissingCertificate("derivation needs a transcendence "
                                 "certificate for f")
    if cert.kind != "NON_INTEGRAL" or cert.verdict != "NON_INTEGRAL":
        raise MissingCertificate("certificate does not establish "
                                 "non-integrality")
    if cert.params.get("series") != series_fingerprint(f):
        raise MissingCertificate("certificate was issued for another series")
    if cert.params["n_max"] < P.deg_F() or cert.params["d_max"] < P.deg_T():
        raise MissingCertificate(
            f"certificate degrees (n_max={cert.params['n_max']}, "
            f"d_max={cert.params['d_max']}) do not cover P "
            f"(deg_F={P.deg_F()}, deg_T={P.deg_T()})")


def deriv_eval(P: PolyInTF, f: TateSeries, cert: Certificate) -> TateSeries:
    """(dP/dF)(T, f): the derivation vanishing on k[T] with value 1 on f."""
    _require_cover(cert, P, f)
    return P.d_dF().eval_at(f)


def phi(P: PolyInTF, f: TateSeries, cert: Certificate,
        ring: SquareZeroRing = None):
    """Dual-number homomorphism P -> (P(T,f), dP/dF(T,f))."""
    _require_cover(cert, P, f)
    if ring is None:
        ring = SquareZeroRing(f.ring_one())
    return ring.elem(P.eval_at(f), P.d_dF().eval_at(f))


# ---------------------------------------------------------------------------
# Divergence table


def unboundedness_table(terms: int, spec: FieldSpec, radius: RadiusDecl,
                        bound=Fraction(10) ** 6) -> Certificate:
    """Norm-ratio table ||phi(g_n)|| / ||g_n|| for tail slices g_n = f - f_n.

    Ratios equal r^(-i_{n+1}) exactly in exponent form and grow without
    bound; the verdict is UNBOUNDED once they are strictly increasing and
    certified to exceed ``bound``.
    """
    if terms < 2:
        raise ValueError("need at least two terms for one table row")
    sp = sparse_series(terms, spec, radius)
    f = sp.series
    radii = f.radii
    q = spec.residue_prime
    # r < 1 must be certified: log_q(1/r) > 0
    lo, _ = radius.interval(48)
    if lo <= 0:
        raise PreconditionFailed("table needs a radius r < 1")
    cert = nonintegral_certificate(f, 1, sp.indices[-2], sparse=sp)
    if not cert.positive:
        raise PreconditionFailed("transcendence certificate failed")
    ring = SquareZeroRing(f.ring_one())
    one_series = f.ring_one()
    rows = []
    ratios = []
    first_exceed = None
    bound = Fraction(bound)
    for n in range(1, terms):
        _, g_n = f.truncate(sp.indices[n - 1])
        P_n = PolyInTF.F(spec) - PolyInTF(
            spec, {(i, 0): Scalar.one(spec) for i in sp.indices[:n]})
        image = phi(P_n, f, cert, ring)
        if not image.a.equals(g_n) or not image.b.equals(one_series):
            raise AssertionError("dual-number image mismatch")
        g_norm, g_exact = g_n.gauss_norm()
        expect_g = LogNorm.of(0, (sp.indices[n],))
        if not g_exact or g_norm != expect_g:
            raise AssertionError("tail-slice norm mismatch")
        img_norm = image.norm_ln()
        ratio = ln_mul(img_norm, ln_pow(g_norm, -1))
        expect_ratio = LogNorm.of(0, (-sp.indices[n],))
        if ratio != expect_ratio:
            raise AssertionError("ratio is not r^(-i_{n+1})")
        exceeds = norm_exceeds(ratio, radii, q, bound)
        if exceeds and first_exceed is None:
            first_exceed = n
        loI, hiI = log_q_interval(ratio, radii)
        rows.append({
            "n": n,
            "tail_index": sp.indices[n],
            "tail_norm": g_norm.to_json(),
            "image_norm": img_norm.to_json(),
            "ratio": ratio.to_json(),
            "ratio_log_q": [str(loI), str(hiI)],
            "exceeds_bound": exceeds,
        })
        ratios.append(ratio)
    monotone = all(
        ln_compare(ratios[i + 1], ratios[i], radii) is Cmp.GT
        for i in range(len(ratios) - 1))
    verdict = "UNBOUNDED" if monotone and first_exceed is not None \
        else "NOT_CERTIFIED"
    params = {"terms": terms, "radius": radius.to_json(),
              "bound": str(bound), "field": spec.to_json(),
              "transcendence": cert.params}
    witness = {"rows": rows, "strictly_increasing": monotone,
               "first_row_exceeding_bound": first_exceed}
    return Certificate("UNBOUNDED", verdict, params, witness,
                       "norm-ratio-divergence-of-dual-number-map")


# ---------------------------------------------------------------------------
# Characteristic-p side: p-basis series and independence


def pbasis_generators(spec: FieldSpec):
    """Deterministic p-basis generator list: t, u1..uN, then squarefree
    products in graded lex order."""
    base = [("t", (1,) + (0,) * spec.nvars)]
    for i in range(spec.nvars):
        exp = [0] * (spec.nvars + 1)
        exp[i + 1] = 1
        base.append((f"u{i + 1}", tuple(exp)))
    singles = list(base)
    out = list(base)
    for size in range(2, spec.nvars + 2):
        for combo in combinations(range(len(singles)), size):
            name = "*".join(singles[i][0] for i in combo)
            exp = tuple(sum(x) for x in zip(*(singles[i][1] for i in combo)))
            out.append((name, exp))
    return out


def _gen_scalar(spec: FieldSpec, exp) -> Scalar:
    s = Scalar.one(spec)
    if exp[0]:
        s = s * Scalar.t_power(spec, exp[0])
    for i, k in enumerate(exp[1:]):
        if k:
            s = s * Scalar.uvar(spec, i).pow_int(k)
    return s


def pbasis_series(p: int, nvars: int, m: int, spec: FieldSpec = None,
                  radius: RadiusDecl = None) -> TateSeries:
    """f = x_{l_0} + x_{l_1} T + ... + x_{l_{m-1}} T^(m-1) with distinct
    p-basis coefficient monomials of norm <= 1 (x_{l_0} = t)."""
    if spec is None:
        spec = FieldSpec(RATFUN_LAURENT, p, nvars=nvars, precision_cap=64)
    if spec.kind != RATFUN_LAURENT:
        raise PreconditionFailed("p-basis series live over the "
                                 "rational-function Laurent field")
    if spec.residue_prime != p or spec.nvars != nvars:
        raise PreconditionFailed("field spec disagrees with (p, N)")
    gens = pbasis_generators(spec)
    if m > len(gens):
        raise PreconditionFailed(
            f"only {len(gens)} p-basis monomials declared; cannot build "
            f"{m} terms")
    if radius is None:
        radius = RadiusDecl.default("r1")
    support = {}
    for i in range(m):
        support[(i,)] = _gen_scalar(spec, gens[i][1])
    return TateSeries(spec, POWER, (radius,), support)


def _coefficient_monomials(f: TateSeries):
    """[(T_exp, exps, residue)] with exps = (t_deg, u1_deg, .., uN_deg)."""
    out = []
    for e, c in sorted(f.support.items()):
        if len(e) != 1:
            raise PreconditionFailed("independence check is single-variable")
        if not c.exact:
            raise PreconditionFailed("independence check needs exact "
                                     "coefficients")
        v = c.valuation()
        if v < 0:
            raise PreconditionFailed("coefficients must have norm <= 1")
        for off, rf in sorted(c._unit.items()):
            if not rf.is_poly():
                raise PreconditionFailed("coefficients must be polynomial "
                                         "in t and u")
            for ue, resid in sorted(rf.num.terms.items()):
                out.append((e[0], (v + off,) + tuple(ue), resid))
    return out


def p_independence_certificate(f: TateSeries, T_deg_max: int,
                               coeff_deg_max: int) -> Certificate:
    """Exhaustive-span refutation of bounded relations
    f0^p g0 f = g1 f1^p + ... + gn fn^p whose k(T)-coefficients omit a
    declared p-basis generator.

    For each generator x present in f with exponent not divisible by p:
    every product monomial m * m'^p with x-free m has x-degree = 0 mod p
    (verified by enumeration), while f contributes a monomial of x-degree
    != 0 mod p; multiplying by f0^p g0 preserves x-degrees mod p, so the
    obstruction coordinate of the left side vanishes only when f0^p g0
    does, i.e. only trivially (polynomial rings over a field are domains).

    A planted relation is instead *found* by decomposing every monomial of
    f as m * m'^p inside the bounds, and reported with the decomposition.
    """
    spec = f.spec
    if spec.kind != RATFUN_LAURENT:
        raise PreconditionFailed("independence certificate targets the "
                                 "rational-function Laurent field")
    p = spec.residue_prime
    nv = spec.nvars + 1   # coefficient variables: t, u1..uN
    monos = _coefficient_monomials(f)
    if not monos:
        raise PreconditionFailed("empty series has no independence content")
    names = ["t"] + [f"u{i + 1}" for i in range(spec.nvars)]
    params = {"p": p, "num_pbasis_vars": spec.nvars,
              "T_deg_max": T_deg_max, "coeff_deg_max": coeff_deg_max,
              "series": series_fingerprint(f)}
    m_side = (T_deg_max + 1) * (coeff_deg_max + 1) ** nv
    if m_side * m_side > MAX_SPAN_PRODUCTS:
        raise PreconditionFailed("span enumeration exceeds the configured "
                                 "cap")
    present = [i for i in range(nv)
               if any(exps[i] % p for _, exps, _ in monos)]
    witness = {"obstructions": [], "products_enumerated": 0}

    gen_ranges = [range(T_deg_max + 1)] + [range(coeff_deg_max + 1)] * nv

    def all_patterns(skip_var=None):
        """Achievable exponent patterns m * m'^p within bounds.

        skip_var: index into coefficient variables whose m-side exponent
        is pinned to 0 (the omitted generator)."""
        pats = set()
        count = 0
        for g in iproduct(*gen_ranges):
            if skip_var is not None and g[1 + skip_var] != 0:
                continue
            for h in iproduct(*gen_ranges):
                count += 1
                pats.add(tuple(a + p * b for a, b in zip(g, h)))
        return pats, count

    if present:
        for var in present:
            pats, count = all_patterns(skip_var=var)
            witness["products_enumerated"] += count
            bad = [pat for pat in pats if pat[1 + var] % p]
            if bad:
                # cannot happen arithmetically; keep the honest check
                witness["obstructions"].append(
                    {"lambda": names[var], "parity_violations": len(bad)})
                return Certificate(
                    "P_INDEPENDENT", "NOT_CERTIFIED", params, witness,
                    "p-basis-independence-of-series-coefficients")
            obs = next((T, exps, resid) for T, exps, resid in monos
                       if exps[var] % p)
            witness["obstructions"].append({
                "lambda": names[var],
                "span_products_checked": count,
                "span_parity_ok": True,
                "obstruction_monomial": {"T": obs[0],
                                         "exps": list(obs[1]),
                                         "coeff": obs[2]},
            })
        witness["conclusion"] = (
            "every generator-omitting relation forces f0^p*g0*f = 0; "
            "polynomial rings over a field have no zero divisors")
        return Certificate("P_INDEPENDENT", "P_INDEPENDENT", params, witness,
                           "p-basis-independence-of-series-coefficients")

    # no obstruction available: look for a planted decomposition
    pats, count = all_patterns()
    witness["products_enumerated"] = count
    def split_component(x, bound):
        for a in range(min(x, bound) + 1):
            if (x - a) % p == 0 and (x - a) // p <= bound:
                return a, (x - a) // p
        return None

    decomposition = []
    for T, exps, resid in monos:
        full = (T,) + exps
        bounds = (T_deg_max,) + (coeff_deg_max,) * nv
        parts = [split_component(x, b) for x, b in zip(full, bounds)]
        if full not in pats or any(s is None for s in parts):
            witness["missing_monomial"] = {"T": T, "exps": list(exps)}
            return Certificate(
                "P_INDEPENDENT", "NOT_CERTIFIED", params, witness,
                "p-basis-independence-of-series-coefficients")
        g = tuple(s[0] for s in parts)
        h = tuple(s[1] for s in parts)
        decomposition.append({
            "monomial": {"T": T, "exps": list(exps), "coeff": resid},
            "g_monomial": {"T": g[0], "exps": list(g[1:])},
            "pth_power_monomial": {"T": h[0], "exps": list(h[1:])},
        })
    witness["relation"] = decomposition
    return Certificate("P_INDEPENDENT", "RELATION_FOUND", params, witness,
                       "p-basis-independence-of-series-coefficients")

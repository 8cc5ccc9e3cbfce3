"""Concrete complete non-archimedean valued fields with exact valuations.

Three field kinds are supported:

* ``PADIC``          -- Q_q, elements held as exact rationals (a capped
                        representative is used once inexact data appears,
                        e.g. after root extraction);
* ``FQ_LAURENT``     -- F_{q^d}((t));
* ``RATFUN_LAURENT`` -- F_q(u1..uN)((t)).

A ``Scalar`` stores an exact representative plus an optional relative
precision: ``prec is None`` means the value is known exactly, ``prec = n``
means it is known modulo q^(v+n) (resp. t^(v+n)).  Valuations of nonzero
scalars are always exact; ultrametric precision propagation raises
``PrecisionExhausted`` rather than silently producing a fake zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import GF, MPoly, RatFun, is_prime
from .errors import (DivisionByZero, NoRootInField, PrecisionExhausted,
                     PreconditionFailed)
from .lognorm import LogNorm

PADIC = "PADIC"
FQ_LAURENT = "FQ_LAURENT"
RATFUN_LAURENT = "RATFUN_LAURENT"

_KINDS = (PADIC, FQ_LAURENT, RATFUN_LAURENT)


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    residue_prime: int
    field_size: int = 0
    nvars: int = 0
    precision_cap: int = 40

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if not is_prime(self.residue_prime):
            raise ValueError(f"{self.residue_prime} is not prime")
        if self.precision_cap < 1:
            raise ValueError("precision_cap must be >= 1")
        if self.kind == FQ_LAURENT:
            q, size = self.residue_prime, self.field_size
            d = 0
            s = size
            while s > 1 and s % q == 0:
                s //= q
                d += 1
            if s != 1 or d < 1:
                raise ValueError(
                    f"field_size {size} is not a power of {q}")
        if self.kind == RATFUN_LAURENT and self.nvars < 0:
            raise ValueError("nvars must be >= 0")

    @property
    def char(self) -> int:
        return 0 if self.kind == PADIC else self.residue_prime

    @property
    def ext_degree(self) -> int:
        if self.kind != FQ_LAURENT:
            return 1
        d, s = 0, self.field_size
        while s > 1:
            s //= self.residue_prime
            d += 1
        return d

    def domain(self):
        return _domain_for(self)

    def to_json(self):
        obj = {"kind": self.kind, "residue_prime": self.residue_prime,
               "precision_cap": self.precision_cap}
        if self.kind == FQ_LAURENT:
            obj["field_size"] = self.field_size
        if self.kind == RATFUN_LAURENT:
            obj["num_pbasis_vars"] = self.nvars
        return obj

    @classmethod
    def from_json(cls, obj):
        return cls(kind=obj["kind"], residue_prime=obj["residue_prime"],
                   field_size=obj.get("field_size", 0),
                   nvars=obj.get("num_pbasis_vars", obj.get("nvars", 0)),
                   precision_cap=obj.get("precision_cap", 40))

    def describe(self) -> str:
        if self.kind == PADIC:
            return f"Q_{self.residue_prime}"
        if self.kind == FQ_LAURENT:
            return f"F_{self.field_size}((t))"
        vs = ",".join(f"u{i + 1}" for i in range(self.nvars))
        return f"F_{self.residue_prime}({vs})((t))"


# coefficient-domain adapters, cached per spec signature


class _GFDomain:
    def __init__(self, gf: GF):
        self.gf = gf
        self.zero = gf.zero
        self.one = gf.one

    def from_int(self, n):
        # ring map Z -> F_{q^d}; the image lies in the prime field
        n %= self.gf.p
        return (n,) if n else ()

    def generator(self):
        if self.gf.d == 1:
            raise ValueError("prime fields have no extension generator")
        return (0, 1)

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        return self.gf.add(a, b)

    def neg(self, a):
        return self.gf.neg(a)

    def mul(self, a, b):
        return self.gf.mul(a, b)

    def inv(self, a):
        return self.gf.inv(a)

    def char_root(self, a):
        return self.gf.char_root(a)

    def aux_roots(self, a, p):
        return self.gf.nth_roots(a, p)

    def to_str(self, a):
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                w = "w" if i == 1 else f"w^{i}"
                parts.append(w if c == 1 else f"{c}*{w}")
        return " + ".join(parts)

    def atomic_str(self, a):
        return sum(1 for c in a if c) <= 1


class _RatFunDomain:
    def __init__(self, p, nvars):
        self.p = p
        self.nvars = nvars
        self.zero = RatFun.const(p, nvars, 0)
        self.one = RatFun.const(p, nvars, 1)

    def from_int(self, n):
        return RatFun.const(self.p, self.nvars, n)

    def var(self, i):
        return RatFun.var(self.p, self.nvars, i)

    def is_zero(self, a):
        return a.is_zero()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def char_root(self, a):
        return a.char_root()

    def aux_roots(self, a, p):
        # limited to constants and monomials; enough for units used in
        # root-tower demonstrations (residues congruent to 1).
        if a == self.one:
            return [self.one]
        if a.is_poly() and len(a.num.terms) == 1:
            (e, c), = a.num.terms.items()
            if all(k % p == 0 for k in e):
                roots = [x for x in range(1, self.p)
                         if pow(x, p, self.p) == c % self.p]
                if roots:
                    mono = MPoly(self.p, self.nvars,
                                 {tuple(k // p for k in e): min(roots)})
                    return [RatFun.from_poly(mono)]
        return []

    def to_str(self, a):
        return str(a)

    def atomic_str(self, a):
        return a.is_poly() and len(a.num.terms) <= 1


_DOMAINS = {}


def _domain_for(spec: FieldSpec):
    key = (spec.kind, spec.residue_prime, spec.field_size, spec.nvars)
    dom = _DOMAINS.get(key)
    if dom is None:
        if spec.kind == FQ_LAURENT:
            dom = _GFDomain(GF(spec.residue_prime, spec.ext_degree))
        elif spec.kind == RATFUN_LAURENT:
            dom = _RatFunDomain(spec.residue_prime, spec.nvars)
        else:
            dom = None
        _DOMAINS[key] = dom
    return dom


def _padic_val(fr: Fraction, q: int) -> int:
    if fr == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = fr.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = fr.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Scalar:
    """Capped-precision element of a concrete valued field."""

    __slots__ = ("spec", "_frac", "_val", "_unit", "_prec")

    def __init__(self, spec, frac=None, val=None, unit=None, prec=None):
        self.spec = spec
        self._frac = frac
        self._val = val
        self._unit = unit
        self._prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, spec):
        if spec.kind == PADIC:
            return cls(spec, frac=Fraction(0))
        return cls(spec, val=None, unit={})

    @classmethod
    def one(cls, spec):
        return cls.from_int(spec, 1)

    @classmethod
    def from_int(cls, spec, n: int):
        return cls.from_fraction(spec, Fraction(n))

    @classmethod
    def from_fraction(cls, spec, fr):
        fr = Fraction(fr)
        if spec.kind == PADIC:
            return cls(spec, frac=fr)
        dom = spec.domain()
        num = dom.from_int(fr.numerator)
        den = dom.from_int(fr.denominator)
        if dom.is_zero(den):
            raise DivisionByZero(
                f"denominator {fr.denominator} vanishes in characteristic "
                f"{spec.char}")
        if dom.is_zero(num):
            return cls.zero(spec)
        return cls(spec, val=0, unit={0: dom.mul(num, dom.inv(den))})

    @classmethod
    def t_power(cls, spec, k: int = 1):
        if spec.kind == PADIC:
            raise ValueError("t only exists in Laurent fields")
        return cls(spec, val=k, unit={0: spec.domain().one})

    @classmethod
    def uvar(cls, spec, i: int):
        if spec.kind != RATFUN_LAURENT:
            raise ValueError("u-variables only exist in the rational-function"
                             " field")
        if not 0 <= i < spec.nvars:
            raise ValueError(f"u{i + 1} is not declared (nvars={spec.nvars})")
        return cls(spec, val=0, unit={0: spec.domain().var(i)})

    @classmethod
    def _padic(cls, spec, frac, prec=None):
        return cls(spec, frac=Fraction(frac), prec=prec)

    @classmethod
    def _laurent(cls, spec, val, unit, prec=None):
        dom = spec.domain()
        unit = {k: c for k, c in unit.items() if not dom.is_zero(c)}
        if not unit:
            if prec is not None:
                raise PrecisionExhausted(
                    "value indistinguishable from zero at the cap")
            return cls.zero(spec)
        shift = min(unit)
        if shift:
            unit = {k - shift: c for k, c in unit.items()}
            val += shift
            if prec is not None:
                prec -= shift
        if prec is not None and prec <= 0:
            raise PrecisionExhausted(
                "value indistinguishable from zero at the cap")
        if prec is not None:
            unit = {k: c for k, c in unit.items() if k < prec}
        return cls(spec, val=val, unit=unit, prec=prec)

    # -- predicates / accessors ---------------------------------------

    @property
    def kind(self):
        return self.spec.kind

    @property
    def precision(self):
        return self._prec

    @property
    def exact(self) -> bool:
        return self._prec is None

    def is_ring_zero(self) -> bool:
        if self.kind == PADIC:
            return self._frac == 0 and self._prec is None
        return self._val is None

    def valuation(self):
        """Exact valuation; None encodes +infinity (the zero element)."""
        if self.kind == PADIC:
            if self._frac == 0:
                return None
            return _padic_val(self._frac, self.spec.residue_prime)
        return self._val

    def norm_ln(self, arity: int = 0) -> LogNorm:
        v = self.valuation()
        if v is None:
            return LogNorm.zero(arity)
        return LogNorm(Fraction(v), (Fraction(0),) * arity)

    def radius_ctx(self):
        return ()

    def unit_part(self):
        """Exact representative of the unit (value / q^v resp. t^v)."""
        if self.kind == PADIC:
            if self._frac == 0:
                raise ValueError("zero has no unit part")
            q = self.spec.residue_prime
            return self._frac / Fraction(q) ** _padic_val(self._frac, q)
        if self._val is None:
            raise ValueError("zero has no unit part")
        return dict(self._unit)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Scalar) or other.spec != self.spec:
            raise ValueError("scalars from different fields")

    def _known_abs(self):
        """Absolute precision: value known modulo q^known (None = exact)."""
        if self._prec is None:
            return None
        v = self.valuation()
        return v + self._prec

    def __add__(self, other):
        self._check(other)
        known = _pmin(self._known_abs(), other._known_abs())
        if self.kind == PADIC:
            rep = self._frac + other._frac
            if rep == 0:
                if known is None:
                    return Scalar.zero(self.spec)
                raise PrecisionExhausted(
                    "sum indistinguishable from zero at the cap")
            v = _padic_val(rep, self.spec.residue_prime)
            if known is not None and v >= known:
                raise PrecisionExhausted(
                    "sum indistinguishable from zero at the cap")
            prec = None if known is None else known - v
            return Scalar._padic(self.spec, rep, prec)
        dom = self.spec.domain()
        merged = {}
        for s in (self, other):
            if s._val is None:
                continue
            for k, c in s._unit.items():
                e = s._val + k
                acc = merged.get(e)
                merged[e] = c if acc is None else dom.add(acc, c)
        merged = {e: c for e, c in merged.items() if not dom.is_zero(c)}
        if known is not None:
            merged = {e: c for e, c in merged.items() if e < known}
        if not merged:
            if known is None:
                return Scalar.zero(self.spec)
            raise PrecisionExhausted(
                "sum indistinguishable from zero at the cap")
        v = min(merged)
        prec = None if known is None else known - v
        return Scalar._laurent(self.spec, v,
                               {e - v: c for e, c in merged.items()}, prec)

    def __neg__(self):
        if self.kind == PADIC:
            return Scalar._padic(self.spec, -self._frac, self._prec)
        if self._val is None:
            return self
        dom = self.spec.domain()
        return Scalar(self.spec, val=self._val,
                      unit={k: dom.neg(c) for k, c in self._unit.items()},
                      prec=self._prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        prec = _pmin(self._prec, other._prec)
        if self.kind == PADIC:
            return Scalar._padic(self.spec, self._frac * other._frac,
                                 None if self._frac * other._frac == 0
                                 else prec)
        if self._val is None or other._val is None:
            return Scalar.zero(self.spec)
        dom = self.spec.domain()
        unit = _su_mul(dom, self._unit, other._unit, prec)
        return Scalar._laurent(self.spec, self._val + other._val, unit, prec)

    def __truediv__(self, other):
        self._check(other)
        if other.is_ring_zero():
            raise DivisionByZero("scalar division by zero")
        if self.kind == PADIC:
            rep = self._frac / other._frac
            prec = _pmin(self._prec, other._prec)
            return Scalar._padic(self.spec, rep,
                                 None if rep == 0 else prec)
        if self._val is None:
            return self
        dom = self.spec.domain()
        prec = _pmin(self._prec, other._prec)
        unit, prec = _su_div(dom, self._unit, other._unit, prec,
                             self.spec.precision_cap)
        return Scalar._laurent(self.spec, self._val - other._val, unit, prec)

    def invert(self):
        return Scalar.one(self.spec) / self

    def pow_int(self, k: int):
        if k < 0:
            return self.invert().pow_int(-k)
        out = Scalar.one(self.spec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def div_int(self, n: int):
        return self / Scalar.from_int(self.spec, n)

    def ring_int(self, n: int):
        return Scalar.from_int(self.spec, n)

    def ring_one(self):
        return Scalar.one(self.spec)

    def equals(self, other) -> bool:
        """Equality to the available working precision."""
        self._check(other)
        if self.exact and other.exact:
            if self.kind == PADIC:
                return self._frac == other._frac
            return self._val == other._val and self._unit == other._unit
        try:
            return (self - other).is_ring_zero()
        except PrecisionExhausted:
            return True

    def rep_size(self) -> int:
        """Rough bit size of the stored representation."""
        if self.kind == PADIC:
            return (self._frac.numerator.bit_length()
                    + self._frac.denominator.bit_length())
        return 8 * (1 + len(self._unit or {}))

    def reduce_representative(self, depth: int):
        """Exact value with the same leading digits, small representation.

        Returns an exact scalar congruent to self modulo q^depth (resp.
        t^depth) whose representation size is O(depth).  Used to keep
        contractive iterations from accumulating exponentially large exact
        representatives; the returned value is still exact, it is simply a
        different point of the same ultrametric ball.
        """
        if self.is_ring_zero():
            return self
        if self.kind == PADIC:
            v = self.valuation()
            if self._prec is not None or v >= depth:
                return self
            q = self.spec.residue_prime
            rel = depth - v
            unit = self._frac / Fraction(q) ** v
            qm = q ** rel
            u = unit.numerator * pow(unit.denominator, -1, qm) % qm
            return Scalar._padic(self.spec, Fraction(u) * Fraction(q) ** v)
        if self._prec is not None or self._val >= depth:
            return self
        rel = depth - self._val
        return Scalar._laurent(self.spec, self._val,
                               {k: c for k, c in self._unit.items()
                                if k < rel})

    def cap(self):
        """Canonical representative truncated at the field's precision cap."""
        cap = self.spec.precision_cap
        if self.is_ring_zero():
            return self
        if self.kind == PADIC:
            q = self.spec.residue_prime
            v = self.valuation()
            prec = cap if self._prec is None else min(self._prec, cap)
            unit = self._frac / Fraction(q) ** v
            qm = q ** prec
            u = unit.numerator * pow(unit.denominator, -1, qm) % qm
            return Scalar._padic(self.spec, Fraction(u) * Fraction(q) ** v,
                                 prec)
        prec = cap if self._prec is None else min(self._prec, cap)
        return Scalar._laurent(self.spec, self._val,
                               {k: c for k, c in self._unit.items()
                                if k < prec}, prec)

    # -- display / serialisation ---------------------------------------

    def to_literal(self) -> str:
        if self.is_ring_zero():
            return "0"
        if self.kind == PADIC:
            q = self.spec.residue_prime
            v = self.valuation()
            unit = self._frac / Fraction(q) ** v
            if unit.denominator == 1:
                us = str(unit.numerator)
            else:
                us = f"{unit.numerator}/{unit.denominator}"
            if v == 0:
                return us
            return f"{us}*{q}^{v}"
        dom = self.spec.domain()
        parts = []
        for k in sorted(self._unit):
            c = self._unit[k]
            e = self._val + k
            cs = dom.to_str(c)
            if not dom.atomic_str(c):
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                tp = "t" if e == 1 else f"t^{e}"
                parts.append(tp if cs == "1" else f"{cs}*{tp}")
        return " + ".join(parts)

    def to_json(self):
        obj = {"value": self.to_literal()}
        if self._prec is not None:
            obj["prec"] = self._prec
        return obj

    def __repr__(self):
        tag = "" if self._prec is None else f" +O(^{self._prec})"
        return f"<{self.to_literal()}{tag} in {self.spec.describe()}>"

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.spec == other.spec and self._prec == other._prec
                and (self._frac == other._frac if self.kind == PADIC
                     else (self._val == other._val
                           and self._unit == other._unit)))

    def __hash__(self):
        if self.kind == PADIC:
            return hash((self.spec, self._frac, self._prec))
        unit = tuple(sorted(self._unit.items())) if self._unit else ()
        return hash((self.spec, self._val, unit, self._prec))


# -- truncated unit-series helpers (offset dicts over a domain) ----------


def _su_mul(dom, a, b, prec):
    out = {}
    for i, x in a.items():
        if prec is not None and i >= prec:
            continue
        for j, y in b.items():
            k = i + j
            if prec is not None and k >= prec:
                continue
            acc = out.get(k)
            v = dom.mul(x, y)
            out[k] = v if acc is None else dom.add(acc, v)
    return {k: c for k, c in out.items() if not dom.is_zero(c)}


def _su_div(dom, a, b, prec, cap):
    """Divide unit series a by b.  Returns (unit, prec)."""
    if len(b) == 1 and 0 in b:
        inv = dom.inv(b[0])
        return {k: dom.mul(c, inv) for k, c in a.items()}, prec
    if prec is None:
        q, r = _su_polydiv(dom, a, b)
        if r is None:
            return q, None
        prec = cap
    # power-series long division to relative length prec
    binv0 = dom.inv(b[0])
    out = {}
    rem = dict(a)
    for k in range(prec):
        c = rem.get(k)
        if c is None or dom.is_zero(c):
            continue
        qc = dom.mul(c, binv0)
        out[k] = qc
        for j, y in b.items():
            if k + j >= prec:
                continue
            t = dom.mul(qc, y)
            acc = rem.get(k + j)
            s = dom.add(acc, dom.neg(t)) if acc is not None else dom.neg(t)
            if dom.is_zero(s):
                rem.pop(k + j, None)
            else:
                rem[k + j] = s
    return out, prec


def _su_polydiv(dom, a, b):
    """Exact polynomial division of units; returns (quotient, None) or
    (None, remainder-marker) encoded as (quotient, leftovers)."""
    rem = dict(a)
    out = {}
    db = max(b)
    lead = b[db]
    lead_inv = dom.inv(lead)
    while rem:
        dr = max(rem)
        if dr < db:
            return None, rem
        c = dom.mul(rem[dr], lead_inv)
        off = dr - db
        out[off] = c
        for j, y in b.items():
            t = dom.mul(c, y)
            k = off + j
            acc = rem.get(k)
            s = dom.add(acc, dom.neg(t)) if acc is not None else dom.neg(t)
            if dom.is_zero(s):
                rem.pop(k, None)
            else:
                rem[k] = s
    return out, None


# ---------------------------------------------------------------------------
# Module-level operations (the field API surface)


def field_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def norm(x: Scalar) -> LogNorm:
    return x.norm_ln()


def check_aux_prime(spec: FieldSpec, p: int) -> bool:
    """True iff p maps to a norm-1 element of the field."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if spec.kind == PADIC:
        return p != spec.residue_prime
    return p % spec.char != 0


def scalar_pth_root(a: Scalar, p: int) -> Scalar:
    """Deterministic p-th root inside the field, capped at the precision cap.

    Root selection: the lift of residue 1 whenever the unit of ``a`` is
    congruent to 1 in the residue field (the branch with |root - 1| < 1);
    otherwise the lift of the smallest canonical residue root.
    """
    spec = a.spec
    if not check_aux_prime(spec, p):
        raise PreconditionFailed(
            f"auxiliary prime {p} does not have norm 1 in "
            f"{spec.describe()}")
    if a.is_ring_zero():
        return a
    v = a.valuation()
    if v % p != 0:
        raise NoRootInField(
            f"valuation {v} is not divisible by {p}")
    if spec.kind == PADIC:
        return _padic_root(a, p, v)
    return _laurent_root(a, p, v)


def _padic_root(a: Scalar, p: int, v: int) -> Scalar:
    spec = a.spec
    q = spec.residue_prime
    m = spec.precision_cap if a._prec is None else min(a._prec,
                                                       spec.precision_cap)
    qm = q ** m
    unit = a._frac / Fraction(q) ** v
    u = unit.numerator * pow(unit.denominator, -1, qm) % qm
    u0 = u % q
    roots = sorted(x for x in range(1, q) if pow(x, p, q) == u0)
    if not roots:
        raise NoRootInField(
            f"residue {u0} has no {p}-th root in F_{q}")
    r = 1 if u0 == 1 else roots[0]
    for _ in range(m.bit_length() + 2):
        fr = (pow(r, p, qm) - u) % qm
        if fr == 0:
            break
        dr = (p * pow(r, p - 1, qm)) % qm
        r = (r - fr * pow(dr, -1, qm)) % qm
    if (pow(r, p, qm) - u) % qm != 0:
        raise NoRootInField("Hensel lifting failed to converge")
    return Scalar._padic(spec, Fraction(r) * Fraction(q) ** (v // p), m)


def _laurent_root(a: Scalar, p: int, v: int) -> Scalar:
    spec = a.spec
    dom = spec.domain()
    L = spec.precision_cap if a._prec is None else min(a._prec,
                                                       spec.precision_cap)
    unit = a._unit
    c0 = unit[0]
    roots = dom.aux_roots(c0, p)
    if not roots:
        raise NoRootInField(
            f"residue coefficient has no {p}-th root in the residue field")
    r0 = dom.one if (c0 == dom.one and dom.one in roots) else roots[0]
    r = {0: r0}
    length = 1
    while length < L:
        length = min(2 * length, L)
        rp = _su_pow(dom, r, p, length)
        diff = _su_sub(dom, rp, unit, length)
        if not diff:
            continue
        dpow = _su_pow(dom, r, p - 1, length)
        deriv = {k: dom.mul(c, dom.from_int(p)) for k, c in dpow.items()}
        inv_deriv, _ = _su_div(dom, {0: dom.one}, deriv, length,
                               spec.precision_cap)
        corr = _su_mul(dom, diff, inv_deriv, length)
        r = _su_sub(dom, r, corr, length)
    rp = _su_pow(dom, r, p, L)
    if _su_sub(dom, rp, unit, L):
        raise NoRootInField("t-adic Newton lifting failed to converge")
    return Scalar._laurent(spec, v // p, r, L)


def _su_pow(dom, a, e, prec):
    out = {0: dom.one}
    base = dict(a)
    while e:
        if e & 1:
            out = _su_mul(dom, out, base, prec)
        e >>= 1
        if e:
            base = _su_mul(dom, base, base, prec)
    return out


def _su_sub(dom, a, b, prec):
    out = dict(a)
    for k, c in b.items():
        acc = out.get(k)
        s = dom.add(acc, dom.neg(c)) if acc is not None else dom.neg(c)
        if dom.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return {k: c for k, c in out.items() if prec is None or k < prec}


# ---------------------------------------------------------------------------
# Scalar literals


class _Tokenizer:
    def __init__(self, s: str):
        self.src = s
        self.pos = 0

    def peek(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.src):
            return None
        return self.src[self.pos]

    def next_token(self):
        ch = self.peek()
        if ch is None:
            return None
        if ch in "+-*/^()":
            self.pos += 1
            return ch
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isdigit():
                self.pos += 1
            return int(self.src[start:self.pos])
        if ch.isalpha():
            start = self.pos
            self.pos += 1
            while (self.pos < len(self.src)
                   and self.src[self.pos].isdigit()):
                self.pos += 1
            return self.src[start:self.pos]
        raise ValueError(f"bad character {ch!r} in scalar literal")


class _Parser:
    """Tiny recursive-descent evaluator for scalar literals."""

    def __init__(self, spec: FieldSpec, s: str):
        self.spec = spec
        self.toks = []
        tz = _Tokenizer(s)
        while True:
            t = tz.next_token()
            if t is None:
                break
            self.toks.append(t)
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _take(self):
        t = self._peek()
        self.i += 1
        return t

    def parse(self) -> Scalar:
        v = self.expr()
        if self._peek() is not None:
            raise ValueError(f"trailing input at token {self._peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self._peek() in ("+", "-"):
            op = self._take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self._peek() in ("*", "/"):
            op = self._take()
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        neg = False
        while self._peek() in ("+", "-"):
            if self._take() == "-":
                neg = not neg
        v = self.atom()
        if self._peek() == "^":
            self._take()
            esign = 1
            if self._peek() == "-":
                self._take()
                esign = -1
            e = self._take()
            if not isinstance(e, int):
                raise ValueError("exponent must be an integer")
            v = v.pow_int(esign * e)
        return -v if neg else v

    def atom(self):
        t = self._take()
        if t == "(":
            v = self.expr()
            if self._take() != ")":
                raise ValueError("unbalanced parenthesis")
            return v
        if isinstance(t, int):
            return Scalar.from_int(self.spec, t)
        if isinstance(t, str):
            if t == "t":
                return Scalar.t_power(self.spec, 1)
            if t == "w" and self.spec.kind == FQ_LAURENT:
                gen = self.spec.domain().generator()
                return Scalar(self.spec, val=0, unit={0: gen})
            if t.startswith("u") and t[1:].isdigit():
                return Scalar.uvar(self.spec, int(t[1:]) - 1)
        raise ValueError(f"unexpected token {t!r} in scalar literal")


def scalar_from_literal(spec: FieldSpec, s: str) -> Scalar:
    return _Parser(spec, s).parse()

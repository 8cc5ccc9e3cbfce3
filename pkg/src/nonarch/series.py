"""Truncated Tate and Laurent series with certified tail bounds.

A ``TateSeries`` is a finitely supported map from exponent multi-indices to
nonzero scalars, together with a ``LogNorm`` bound dominating every omitted
term.  Exact (polynomial) elements carry the ZERO tail; arithmetic
propagates tails ultrametrically, and pruning at the support cap folds the
dropped mass into the tail so that every norm claim stays honest.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (IncompatibleContext, PrecisionExhausted,
                     PreconditionFailed, SupportCapExceeded)
from .fields import Scalar, _pmin, scalar_from_literal
from .lognorm import Cmp, LogNorm, ln_compare, ln_mul, ln_pow

POWER = "power"
LAURENT = "laurent"

SUPPORT_CAP = 4096


class TateSeries:
    __slots__ = ("spec", "kind", "radii", "support", "tail")

    def __init__(self, spec, kind, radii, support, tail=None):
        if kind not in (POWER, LAURENT):
            raise ValueError(f"unknown series kind {kind!r}")
        self.spec = spec
        self.kind = kind
        self.radii = tuple(radii)
        n = len(self.radii)
        cleaned = {}
        for e, c in support.items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError("exponent arity mismatch")
            if kind == POWER and any(x < 0 for x in e):
                raise ValueError("power series admit only exponents >= 0")
            if not c.is_ring_zero():
                cleaned[e] = c
        self.support = cleaned
        self.tail = LogNorm.zero(n) if tail is None else tail
        if self.tail.arity != n:
            raise ValueError("tail norm arity mismatch")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, spec, radii, kind=POWER):
        return cls(spec, kind, radii, {})

    @classmethod
    def one(cls, spec, radii, kind=POWER):
        return cls.constant(spec, radii, Scalar.one(spec), kind)

    @classmethod
    def constant(cls, spec, radii, coeff: Scalar, kind=POWER):
        n = len(radii)
        return cls(spec, kind, radii, {(0,) * n: coeff})

    @classmethod
    def monomial(cls, spec, radii, exp, coeff: Scalar, kind=POWER):
        if isinstance(exp, int):
            exp = (exp,)
        return cls(spec, kind, radii, {tuple(exp): coeff})

    @classmethod
    def from_terms(cls, spec, radii, terms, kind=POWER, tail=None):
        """terms: iterable of (exp, coeff) with coeff a Scalar or literal."""
        support = {}
        for e, c in terms:
            if isinstance(e, int):
                e = (e,)
            if not isinstance(c, Scalar):
                c = scalar_from_literal(spec, str(c))
            if not c.is_ring_zero():
                support[tuple(e)] = c
        return cls(spec, kind, radii, support, tail)

    # -- basics -----------------------------------------------------------

    @property
    def nvars(self):
        return len(self.radii)

    def is_exact(self) -> bool:
        return self.tail.is_zero

    def is_ring_zero(self) -> bool:
        return not self.support and self.tail.is_zero

    def radius_ctx(self):
        return self.radii

    def _check(self, other):
        if not isinstance(other, TateSeries):
            raise IncompatibleContext("expected a series operand")
        if (self.spec != other.spec or self.kind != other.kind
                or tuple(d.gen_id for d in self.radii)
                != tuple(d.gen_id for d in other.radii)):
            raise IncompatibleContext(
                "series from different rings cannot be combined")

    def sorted_terms(self):
        return sorted(self.support.items(), key=lambda kv: kv[0])

    def term_norm(self, exp) -> LogNorm:
        """Norm of a single stored term: |a_e| * r^e."""
        c = self.support[exp]
        v = c.valuation()
        return LogNorm(Fraction(v), tuple(Fraction(x) for x in exp))

    def total_degree(self, exp):
        return sum(exp)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.support)
        lost = []
        for e, c in other.support.items():
            _accumulate(out, lost, e, c)
        tail = _ln_max2(self.tail, other.tail, self.radii)
        for b in lost:
            tail = _ln_max2(tail, b, self.radii)
        result = TateSeries(self.spec, self.kind, self.radii, out, tail)
        if len(result.support) > SUPPORT_CAP:
            result = result.pruned(SUPPORT_CAP)
        return result

    def __neg__(self):
        return TateSeries(self.spec, self.kind, self.radii,
                          {e: -c for e, c in self.support.items()}, self.tail)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        lost = []
        for e1, c1 in self.support.items():
            for e2, c2 in other.support.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                _accumulate(out, lost, e, c1 * c2)
        tail = LogNorm.zero(self.nvars)
        if not self.tail.is_zero or not other.tail.is_zero:
            mag_self = self._magnitude_bound()
            mag_other = other._magnitude_bound()
            cands = []
            if not self.tail.is_zero and not mag_other.is_zero:
                cands.append(ln_mul(self.tail, mag_other))
            if not other.tail.is_zero and not mag_self.is_zero:
                cands.append(ln_mul(other.tail, mag_self))
            if cands:
                tail = cands[0]
                for c in cands[1:]:
                    tail = _ln_max2(tail, c, self.radii)
        for b in lost:
            tail = _ln_max2(tail, b, self.radii)
        result = TateSeries(self.spec, self.kind, self.radii, out, tail)
        if len(result.support) > SUPPORT_CAP:
            result = result.pruned(SUPPORT_CAP)
        return result

    def scalar_mul(self, c: Scalar):
        if c.is_ring_zero():
            return TateSeries.zero(self.spec, self.radii, self.kind)
        tail = self.tail
        if not tail.is_zero:
            tail = ln_mul(tail, c.norm_ln(self.nvars))
        return TateSeries(self.spec, self.kind, self.radii,
                          {e: v * c for e, v in self.support.items()}, tail)

    def pow_int(self, k: int):
        if k < 0:
            return self.invert().pow_int(-k)
        out = TateSeries.one(self.spec, self.radii, self.kind)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def invert(self):
        """Inverse, available for single-term (monomial) series only."""
        if len(self.support) != 1 or not self.tail.is_zero:
            raise PreconditionFailed(
                "series inverse implemented for exact monomials only")
        (e, c), = self.support.items()
        if self.kind == POWER and any(x > 0 for x in e):
            raise PreconditionFailed(
                "monomial inverse needs the Laurent ring")
        inv_e = tuple(-x for x in e)
        return TateSeries(self.spec, self.kind, self.radii,
                          {inv_e: c.invert()})

    def div_int(self, n: int):
        return self.scalar_mul(Scalar.from_int(self.spec, n).invert())

    def rep_size(self) -> int:
        return sum(c.rep_size() for c in self.support.values())

    def reduce_representative(self, depth: int):
        """Coefficient-wise exact representative reduction (see Scalar)."""
        return TateSeries(self.spec, self.kind, self.radii,
                          {e: c.reduce_representative(depth)
                           for e, c in self.support.items()}, self.tail)

    def ring_int(self, n: int):
        return TateSeries.constant(self.spec, self.radii,
                                   Scalar.from_int(self.spec, n), self.kind)

    def ring_one(self):
        return TateSeries.one(self.spec, self.radii, self.kind)

    def equals(self, other) -> bool:
        self._check(other)
        if self.tail != other.tail:
            return False
        if set(self.support) != set(other.support):
            return False
        return all(c.equals(other.support[e])
                   for e, c in self.support.items())

    # -- norms -------------------------------------------------------------

    def _magnitude_bound(self) -> LogNorm:
        """Upper bound max(term norms, tail) for |f|."""
        best = self.tail
        for e in sorted(self.support):
            n = self.term_norm(e)
            if best.is_zero or ln_compare(n, best, self.radii) is Cmp.GT:
                best = n
        return best

    def gauss_norm(self):
        """(max over stored terms of |a_e| r^e, exactness flag).

        The flag is True when the stored maximum strictly dominates the
        tail bound, hence equals the Gauss norm of any completion.
        """
        mx = LogNorm.zero(self.nvars)
        for e in sorted(self.support):
            n = self.term_norm(e)
            if mx.is_zero or ln_compare(n, mx, self.radii) is Cmp.GT:
                mx = n
        if self.tail.is_zero:
            return mx, True
        exact = (not mx.is_zero
                 and ln_compare(mx, self.tail, self.radii) is Cmp.GT)
        return mx, exact

    def norm_ln(self) -> LogNorm:
        n, exact = self.gauss_norm()
        if not exact:
            raise PreconditionFailed(
                "norm of an inexact truncation is only bounded, not known")
        return n

    # -- truncation ---------------------------------------------------------

    def truncate(self, degree_bound):
        """Split into (head of total degree <= bound, exact tail series)."""
        if self.kind != POWER:
            raise PreconditionFailed("truncate applies to power series")
        head, rest = {}, {}
        for e, c in self.support.items():
            (head if sum(e) <= degree_bound else rest)[e] = c
        head_s = TateSeries(self.spec, POWER, self.radii, head)
        tail_s = TateSeries(self.spec, POWER, self.radii, rest, self.tail)
        return head_s, tail_s

    def pruned(self, cap: int):
        """Keep the `cap` largest-norm terms; fold the rest into the tail."""
        if len(self.support) <= cap:
            return self
        keyed = []
        for e in self.support:
            keyed.append((self.term_norm(e), e))
        # smallest norms first; lexicographic exponent order breaks ties
        order = sorted(keyed, key=lambda t: t[1])
        order.sort(key=_NormKey(self.radii))
        drop = len(self.support) - cap
        tail = self.tail
        support = dict(self.support)
        for n, e in order[:drop]:
            tail = _ln_max2(tail, n, self.radii)
            del support[e]
        return TateSeries(self.spec, self.kind, self.radii, support, tail)

    # -- calculus helpers ----------------------------------------------------

    def formal_derivative(self, var: int = 0):
        out = {}
        spec = self.spec
        for e, c in self.support.items():
            k = e[var]
            if k == 0:
                continue
            scaled = c * Scalar.from_int(spec, k)
            if scaled.is_ring_zero():
                continue
            ee = list(e)
            ee[var] = k - 1
            out[tuple(ee)] = scaled
        if not self.tail.is_zero:
            raise PreconditionFailed(
                "formal derivative requires an exact series")
        return TateSeries(self.spec, self.kind, self.radii, out)

    # -- serialisation ---------------------------------------------------------

    def to_json(self):
        return {
            "kind": self.kind,
            "radius": [d.gen_id for d in self.radii],
            "terms": [{"exp": list(e), "coeff": c.to_literal()}
                      for e, c in self.sorted_terms()],
            "tail": self.tail.to_json(),
        }

    @classmethod
    def from_json(cls, spec, radii, obj):
        terms = [(tuple(t["exp"]), scalar_from_literal(spec, t["coeff"]))
                 for t in obj.get("terms", [])]
        tail = LogNorm.from_json(obj["tail"]) if "tail" in obj else None
        if tail is not None and tail.is_zero:
            tail = LogNorm.zero(len(radii))
        kind = obj.get("kind", POWER)
        declared = obj.get("radius")
        if declared and list(declared) != [d.gen_id for d in radii]:
            raise IncompatibleContext("series declared for other radii")
        return cls(spec, kind, radii,
                   {e: c for e, c in terms}, tail)

    def __repr__(self):
        terms = ", ".join(f"{e}:{c.to_literal()}"
                          for e, c in self.sorted_terms())
        return f"<series [{terms}] tail={self.tail}>"


class _NormKey:
    """Sort adapter: orders LogNorms ascending via ln_compare."""

    def __init__(self, radii):
        self.radii = radii

    def __call__(self, item):
        return _Wrapped(item[0], self.radii)


class _Wrapped:
    __slots__ = ("n", "radii")

    def __init__(self, n, radii):
        self.n = n
        self.radii = radii

    def __lt__(self, other):
        return ln_compare(self.n, other.n, self.radii) is Cmp.LT


def _accumulate(out, lost, e, c):
    """Merge coefficient c at exponent e into out.

    A sum that becomes indistinguishable from zero at the working precision
    is removed from the support and its certified bound appended to `lost`,
    to be folded into the tail by the caller.
    """
    if c.is_ring_zero():
        return
    acc = out.get(e)
    if acc is None:
        out[e] = c
        return
    try:
        s = acc + c
    except PrecisionExhausted:
        known = _pmin(acc._known_abs(), c._known_abs())
        lost.append(LogNorm(Fraction(known),
                            tuple(Fraction(x) for x in e)))
        del out[e]
        return
    if s.is_ring_zero():
        del out[e]
    else:
        out[e] = s


def _ln_max2(a: LogNorm, b: LogNorm, radii) -> LogNorm:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    return a if ln_compare(a, b, radii) is not Cmp.LT else b


# ---------------------------------------------------------------------------
# Module-level operations (spec surface)


def ts_arith(f: TateSeries, g: TateSeries, op: str) -> TateSeries:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def gauss_norm(f: TateSeries):
    return f.gauss_norm()


def spectral_radius_laurent(f: TateSeries):
    """Spectral radius on the Laurent algebra: the closed-form term maximum.

    Over a field coefficient ring the spectral radius coincides with the
    Gauss norm, which is what the stored-term maximum computes.
    """
    if f.kind != LAURENT:
        raise PreconditionFailed("spectral radius formula targets the "
                                 "Laurent ring")
    return f.gauss_norm()


def spectral_power_estimate(f: TateSeries, power: int) -> LogNorm:
    """Oracle sequence ||f^l||^(1/l); equals the spectral radius for every
    l over a field, by multiplicativity of the Gauss norm."""
    if power < 1:
        raise ValueError("power must be >= 1")
    if not f.is_exact():
        raise PreconditionFailed("power estimate needs an exact series")
    fl = f.pow_int(power)
    if not fl.is_exact():
        raise SupportCapExceeded(
            f"support of f^{power} exceeded the cap; the estimate would "
            "not be exact")
    n, _ = fl.gauss_norm()
    if n.is_zero:
        return n
    return ln_pow(n, Fraction(1, power))


def truncate(f: TateSeries, degree_bound):
    return f.truncate(degree_bound)

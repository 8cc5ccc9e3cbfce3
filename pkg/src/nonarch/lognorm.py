"""Exact multiplicative norm values q^(-e0) * prod r_j^(e_j).

A ``LogNorm`` stores the exponent data exactly (Fractions).  Formal radii
r_j are declared once per session as ``RadiusDecl`` objects carrying a
refinable interval for log_q(1/r_j); comparison of two norm values refines
those intervals until the sign of the log-difference is decided, or gives
up with ``UndecidableAtDepth``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import UndecidableAtDepth

MAX_REFINE_DEPTH = 256


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class LogNorm:
    """Norm value q^(-base_exp) * prod_j r_j^(radius_exps[j]); ZERO is the
    norm of 0 and is absorbing/minimal."""

    base_exp: Fraction
    radius_exps: tuple
    is_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "base_exp", Fraction(self.base_exp))
        object.__setattr__(
            self, "radius_exps",
            tuple(Fraction(e) for e in self.radius_exps))
        if self.is_zero and (self.base_exp or any(self.radius_exps)):
            raise ValueError("ZERO norm must carry zero exponents")

    @classmethod
    def zero(cls, arity: int = 0):
        return cls(Fraction(0), (Fraction(0),) * arity, True)

    @classmethod
    def identity(cls, arity: int = 0):
        return cls(Fraction(0), (Fraction(0),) * arity)

    @classmethod
    def of(cls, base_exp, radius_exps=()):
        return cls(Fraction(base_exp), tuple(Fraction(e) for e in radius_exps))

    @property
    def arity(self) -> int:
        return len(self.radius_exps)

    def is_identity(self) -> bool:
        return (not self.is_zero and self.base_exp == 0
                and not any(self.radius_exps))

    def pad(self, arity: int) -> "LogNorm":
        """Embed a norm with no radius components into a wider context."""
        if self.arity == arity:
            return self
        if any(self.radius_exps):
            raise ValueError("cannot re-pad a norm with radius components")
        if self.is_zero:
            return LogNorm.zero(arity)
        return LogNorm(self.base_exp, (Fraction(0),) * arity)

    def to_json(self):
        if self.is_zero:
            return {"zero": True}
        return {"e0": str(self.base_exp),
                "radius": [str(e) for e in self.radius_exps]}

    @classmethod
    def from_json(cls, obj):
        if obj.get("zero"):
            return cls.zero()
        return cls(Fraction(obj["e0"]),
                   tuple(Fraction(s) for s in obj.get("radius", [])))

    def __str__(self):
        if self.is_zero:
            return "ZERO"
        rads = ";".join(str(e) for e in self.radius_exps)
        return f"({self.base_exp};{rads})" if rads else f"({self.base_exp})"


def ln_mul(a: LogNorm, b: LogNorm) -> LogNorm:
    if a.is_zero or b.is_zero:
        return LogNorm.zero(max(a.arity, b.arity))
    if a.arity != b.arity:
        raise ValueError("norms from different radius contexts")
    return LogNorm(a.base_exp + b.base_exp,
                   tuple(x + y for x, y in zip(a.radius_exps, b.radius_exps)))


def ln_pow(a: LogNorm, s) -> LogNorm:
    s = Fraction(s)
    if a.is_zero:
        if s <= 0:
            raise ValueError("ZERO norm cannot be raised to a power <= 0")
        return a
    return LogNorm(a.base_exp * s, tuple(e * s for e in a.radius_exps))


def in_value_group_rational(a: LogNorm) -> bool:
    """Membership of the value in |k^x|^Q: no formal-radius component."""
    if a.is_zero:
        raise ValueError("ZERO norm has no value-group class")
    return not any(a.radius_exps)


# ---------------------------------------------------------------------------
# Radius declarations


def _sqrt_interval(d: int, depth: int):
    """Dyadic interval of width 2^-depth around sqrt(d)."""
    scale = 1 << depth
    s = isqrt(d * scale * scale)
    return Fraction(s, scale), Fraction(s + 1, scale)


class RadiusDecl:
    """One declared formal radius r, described by log_q(1/r).

    The description is a shrinking-interval stream: ``interval(depth)``
    returns exact rational bounds [lo, hi] containing log_q(1/r), with
    width <= 2^-depth (plus stream constants).  Quadratic-irrational
    streams carry a constructive irrationality proof; other streams only
    *assert* irrationality.
    """

    def __init__(self, gen_id, stream, asserts_irrational, kind, params,
                 note=""):
        self.gen_id = gen_id
        self._stream = stream
        self.asserts_irrational = asserts_irrational
        self.kind = kind
        self.params = params
        self.note = note

    @classmethod
    def quadratic(cls, gen_id, a, b, c, d, note=""):
        """log_q(1/r) = (a + b*sqrt(d)) / c with integers a, b, c>0, d>0."""
        a, b, c, d = int(a), int(b), int(c), int(d)
        if c <= 0 or d <= 0:
            raise ValueError("need c > 0 and d > 0")

        def stream(depth):
            lo, hi = _sqrt_interval(d, depth)
            if b < 0:
                lo, hi = hi, lo
            return (Fraction(a) + b * lo) / c, (Fraction(a) + b * hi) / c

        irrational = b != 0 and isqrt(d) ** 2 != d
        return cls(gen_id, stream, irrational, "quadratic",
                   {"a": a, "b": b, "c": c, "d": d}, note)

    @classmethod
    def rational_stub(cls, gen_id, value, asserts_irrational=False, note=""):
        """Test stream pinned near a rational value.

        Useful for exercising numeric paths with hand-readable exponents;
        the irrationality assertion is the caller's responsibility and is
        never verifiable for this stream kind.
        """
        value = Fraction(value)

        def stream(depth):
            eps = Fraction(1, 1 << (depth + 2))
            return value - eps, value + eps

        return cls(gen_id, stream, asserts_irrational, "rational",
                   {"value": str(value)}, note)

    @classmethod
    def default(cls, gen_id="r1"):
        # log_q(1/r) = sqrt(2)/2 = 0.70710678...; guaranteed irrational.
        return cls.quadratic(gen_id, 0, 1, 2, 2,
                             note="log_q(1/r) = sqrt(2)/2")

    def interval(self, depth: int):
        lo, hi = self._stream(depth)
        if lo > hi:
            raise ValueError("stream produced an inverted interval")
        return lo, hi

    def check_declaration(self, depth: int = 32) -> bool:
        """True iff the irrationality assertion is constructively verified.

        Quadratic streams verify b != 0 and d not a perfect square; other
        stream kinds cannot be verified at finite depth and return False
        whenever they assert irrationality.
        """
        lo, hi = self.interval(depth)
        if not lo < hi:
            return False
        if not self.asserts_irrational:
            return True
        if self.kind == "quadratic":
            b, d = self.params["b"], self.params["d"]
            return b != 0 and isqrt(d) ** 2 != d
        return False

    def to_json(self):
        return {"gen_id": self.gen_id, "kind": self.kind,
                "params": self.params,
                "asserts_irrational": self.asserts_irrational,
                "note": self.note}

    @classmethod
    def from_json(cls, obj):
        kind = obj["kind"]
        if kind == "quadratic":
            p = obj["params"]
            decl = cls.quadratic(obj["gen_id"], p["a"], p["b"], p["c"],
                                 p["d"], obj.get("note", ""))
        elif kind == "rational":
            decl = cls.rational_stub(obj["gen_id"],
                                     Fraction(obj["params"]["value"]),
                                     obj.get("asserts_irrational", False),
                                     obj.get("note", ""))
        else:
            raise ValueError(f"unknown radius stream kind {kind!r}")
        return decl

    def __repr__(self):
        return f"RadiusDecl({self.gen_id}, {self.kind}, {self.params})"


# ---------------------------------------------------------------------------
# Comparison


def _log_interval(a: LogNorm, radii, depth: int):
    """Interval for log_q(1/value) = e0 + sum e_j * L_j."""
    lo = hi = a.base_exp
    for e, decl in zip(a.radius_exps, radii):
        if not e:
            continue
        llo, lhi = decl.interval(depth)
        if e > 0:
            lo, hi = lo + e * llo, hi + e * lhi
        else:
            lo, hi = lo + e * lhi, hi + e * llo
    return lo, hi


def ln_compare(a: LogNorm, b: LogNorm, radii=(),
               max_depth: int = MAX_REFINE_DEPTH) -> Cmp:
    """Total comparison of two norm values.

    EQ only for structurally equal inputs.  Otherwise the sign of the
    log-difference is determined by interval refinement; a difference
    whose radius components cancel exactly is decided rationally.
    """
    if a.is_zero and b.is_zero:
        return Cmp.EQ
    if a.is_zero:
        return Cmp.LT
    if b.is_zero:
        return Cmp.GT
    if a.arity != b.arity:
        raise ValueError("norms from different radius contexts")
    if a == b:
        return Cmp.EQ
    d_base = a.base_exp - b.base_exp
    d_rad = tuple(x - y for x, y in zip(a.radius_exps, b.radius_exps))
    if not any(d_rad):
        # purely rational difference in the logs; larger log = smaller norm
        return Cmp.LT if d_base > 0 else Cmp.GT
    if len(radii) < a.arity:
        raise ValueError("missing radius declarations for comparison")
    diff = LogNorm(d_base, d_rad)
    depth = 8
    while depth <= max_depth:
        lo, hi = _log_interval(diff, radii, depth)
        if lo > 0:
            return Cmp.LT
        if hi < 0:
            return Cmp.GT
        depth *= 2
    raise UndecidableAtDepth(
        f"norm comparison undecided after depth {max_depth}: {a} vs {b}")


def ln_le(a, b, radii=(), max_depth=MAX_REFINE_DEPTH) -> bool:
    return ln_compare(a, b, radii, max_depth) is not Cmp.GT


def ln_lt(a, b, radii=(), max_depth=MAX_REFINE_DEPTH) -> bool:
    return ln_compare(a, b, radii, max_depth) is Cmp.LT


def ln_max(norms, radii=(), max_depth=MAX_REFINE_DEPTH) -> LogNorm:
    best = None
    for n in norms:
        if best is None or ln_compare(n, best, radii, max_depth) is Cmp.GT:
            best = n
    if best is None:
        raise ValueError("ln_max of empty sequence")
    return best


def norm_exceeds(a: LogNorm, radii, q: int, bound: Fraction,
                 depth: int = 48) -> bool:
    """Certified check that value(a) > bound, by interval evaluation.

    Uses a dyadic lower bound for the value q^(-L): coarsen the upper end
    of the L-interval to denominator D and compare q and bound as exact
    integers.  A False return means "not certified at this depth", not a
    disproof.
    """
    if a.is_zero:
        return False
    bound = Fraction(bound)
    if bound <= 0:
        return True
    _, hi = _log_interval(a, radii, depth)
    # value >= q^(-hi); certify q^(-hi) > bound
    for denom_bits in (6, 12, 16):
        D = 1 << denom_bits
        neg_hi_floor = (-hi * D).__floor__()  # q^(neg/D) <= q^(-hi)
        if neg_hi_floor <= 0:
            return False
        lhs = q ** neg_hi_floor
        rhs_num = bound.numerator ** D
        rhs_den = bound.denominator ** D
        if lhs * rhs_den > rhs_num:
            return True
    return False


def log_q_interval(a: LogNorm, radii, depth: int = 48):
    """Interval [lo, hi] for log_q(value) = -(e0 + sum e_j L_j)."""
    lo, hi = _log_interval(a, radii, depth)
    return -hi, -lo

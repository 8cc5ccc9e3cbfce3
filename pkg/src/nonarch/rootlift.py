"""p-th root extraction by contractive iteration, with per-step certificates.

The iteration works in any multiplicatively normed carrier of this package
(exact ``Scalar`` values or exact ``TateSeries``): starting from a unit f
with |f - 1| < 1 and an auxiliary prime p of norm 1, set

    g_1 = (f - 1)/p,   g_{m+1} = -h_m/p,   h_m = (1 + g_1 + ... + g_m)^p - f.

Every step records (g_m, h_m) with their norms; the certified conditions are

    (1) (1 + g_1 + ... + g_m)^p = f + h_m     (exact identity),
    (2) |g_1| = |f - 1|,
    (3) |g_m| <= |g_1|^m,
    (4) |h_m| <= |g_1|^(m+1),

so the partial sums converge geometrically with contraction factor |g_1|.
Compatible towers stack roots: tower[e+1]^p = tower[e].
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (MaxStepsExceeded, NoRootInField, PreconditionFailed,
                     TowerObstruction)
from .fields import Scalar, check_aux_prime, scalar_pth_root
from .lognorm import Cmp, LogNorm, ln_compare, ln_le, ln_pow

DEFAULT_MAX_STEPS = 64
DEFAULT_TOL_EXPONENT = 40
# absolute digit depth kept in exact representatives between steps; must
# dominate tolerance exponent + step count so no certified valuation is
# disturbed (the exact p-adic iteration otherwise doubles its
# representation size at every step)
DEFAULT_WORK_DEPTH = 3 * DEFAULT_TOL_EXPONENT + 16
# exact representatives below this bit size are never rewritten, so small
# traces show the textbook rationals verbatim
REDUCE_THRESHOLD_BITS = 4096


def _tame(x, work_depth):
    if x.rep_size() <= REDUCE_THRESHOLD_BITS:
        return x
    return x.reduce_representative(work_depth)


@dataclass
class RootStep:
    index: int
    g: object
    h: object
    norm_g: LogNorm
    norm_h: LogNorm
    cond_contraction: bool   # |g_m| <= |g_1|^m
    cond_defect: bool        # |h_m| <= |g_1|^(m+1)


@dataclass
class RootTrace:
    prime: int
    target: object
    contraction: LogNorm          # |g_1| = |f - 1|
    steps: list = field(default_factory=list)
    result: object = None
    certified: bool = False
    reason: str = ""

    def to_json(self):
        return {
            "claim": "pth-root-iteration",
            "prime": self.prime,
            "target": _obj_json(self.target),
            "contraction": self.contraction.to_json(),
            "steps": [{
                "m": s.index,
                "g": _obj_json(s.g),
                "h": _obj_json(s.h),
                "norm_g": s.norm_g.to_json(),
                "norm_h": s.norm_h.to_json(),
                "contraction_ok": s.cond_contraction,
                "defect_ok": s.cond_defect,
            } for s in self.steps],
            "root": _obj_json(self.result),
            "certified": self.certified,
            "reason": self.reason,
        }


def _obj_json(x):
    if x is None:
        return None
    if isinstance(x, Scalar):
        return x.to_literal()
    return x.to_json()


def _norm_of(x) -> LogNorm:
    return x.norm_ln()


def _ctx(x):
    return x.radius_ctx()


def pth_root_near_one(f, p: int, max_steps: int = DEFAULT_MAX_STEPS,
                      tol: LogNorm = None,
                      work_depth: int = DEFAULT_WORK_DEPTH):
    """Root of f with |f - 1| < 1; returns (root, RootTrace).

    Runs on exact representations; the caller caps the output if a capped
    scalar is wanted.  Stops once |h_m| <= tol (default |g_1|^40).

    Each correction g_{m+1} = -h_m/p is replaced by an exact representative
    agreeing with it to absolute digit depth ``work_depth``; the recorded
    conditions (1)-(4) are exact identities of the stored values, and the
    perturbation (below digit ``work_depth``) is invisible at every
    certified valuation.
    """
    spec = f.spec
    if not check_aux_prime(spec, p):
        raise PreconditionFailed(
            f"prime {p} does not have norm 1 in {spec.describe()}")
    radii = _ctx(f)
    one = f.ring_one()
    diff = f - one
    if diff.is_ring_zero():
        trace = RootTrace(p, f, LogNorm.zero(len(radii)), [], one, True,
                          "target is 1; root is 1")
        return one, trace
    g1 = _tame(diff.div_int(p), work_depth)
    g1n = _norm_of(g1)
    diffn = _norm_of(diff)
    if g1n != diffn:
        raise PreconditionFailed("|p| = 1 failed to hold on this input")
    ident = LogNorm.identity(len(radii))
    if ln_compare(g1n, ident, radii) is not Cmp.LT:
        raise PreconditionFailed(
            f"|f - 1| = {g1n} is not < 1; the iteration does not contract")
    if tol is None:
        tol = ln_pow(g1n, DEFAULT_TOL_EXPONENT)
    trace = RootTrace(p, f, g1n)
    partial = one + g1
    g = g1
    for m in range(1, max_steps + 1):
        h = partial.pow_int(p) - f
        gn = _norm_of(g)
        hn = _norm_of(h) if not h.is_ring_zero() else LogNorm.zero(len(radii))
        ok_g = ln_le(gn, ln_pow(g1n, m), radii)
        ok_h = hn.is_zero or ln_le(hn, ln_pow(g1n, m + 1), radii)
        trace.steps.append(RootStep(m, g, h, gn, hn, ok_g, ok_h))
        if not (ok_g and ok_h):
            trace.certified = False
            trace.reason = f"contraction conditions failed at step {m}"
            trace.result = partial
            return partial, trace
        if hn.is_zero or ln_le(hn, tol, radii):
            trace.result = partial
            trace.certified = True
            trace.reason = f"|h_{m}| within tolerance after {m} steps"
            return partial, trace
        g = _tame((-h).div_int(p), work_depth)
        partial = partial + g
    trace.result = partial
    trace.reason = f"tolerance not reached in {max_steps} steps"
    raise MaxStepsExceeded(trace.reason, trace)


def verify_trace(trace: RootTrace) -> bool:
    """Exact replay of identity (1) and conditions (2)-(4) for every step."""
    f = trace.target
    one = f.ring_one()
    radii = _ctx(f)
    if not trace.steps:
        return trace.result is not None and trace.result.equals(one)
    partial = one
    g1n = trace.contraction
    diff = f - one
    if diff.is_ring_zero() or _norm_of(diff) != g1n:
        return False
    for s in trace.steps:
        partial = partial + s.g
        lhs = partial.pow_int(trace.prime)
        if not lhs.equals(f + s.h):
            return False
        gn = _norm_of(s.g)
        hn = _norm_of(s.h) if not s.h.is_ring_zero() \
            else LogNorm.zero(len(radii))
        if gn != s.norm_g or hn != s.norm_h:
            return False
        if not ln_le(gn, ln_pow(g1n, s.index), radii):
            return False
        if not (hn.is_zero or ln_le(hn, ln_pow(g1n, s.index + 1), radii)):
            return False
    return trace.result is None or trace.result.equals(partial)


@dataclass
class NearRootResult:
    root: object
    trace: RootTrace
    recentred: bool   # |root - g_root| < |root| verified


def pth_root_near(f, g, g_root, p: int, max_steps: int = DEFAULT_MAX_STEPS,
                  tol: LogNorm = None) -> NearRootResult:
    """Root of f from a known root of a nearby unit g (|f - g| < |f|)."""
    radii = _ctx(f)
    if not g_root.pow_int(p).equals(g):
        raise PreconditionFailed("g_root is not a p-th root of g")
    diff = f - g
    if diff.is_ring_zero():
        trace = RootTrace(p, f, LogNorm.zero(len(radii)), [], g_root, True,
                          "f = g; root reused")
        return NearRootResult(g_root, trace, True)
    fn = _norm_of(f)
    if ln_compare(_norm_of(diff), fn, radii) is not Cmp.LT:
        raise PreconditionFailed("|f - g| < |f| fails; cannot recentre")
    u = g.invert() * f
    unit_root, trace = pth_root_near_one(u, p, max_steps, tol)
    root = g_root * unit_root
    sep = root - g_root
    recentred = sep.is_ring_zero() or \
        ln_compare(_norm_of(sep), _norm_of(root), radii) is Cmp.LT
    return NearRootResult(root, trace, recentred)


@dataclass
class RootTower:
    prime: int
    elements: list   # [f, f^(1/p), f^(1/p^2), ...]

    @property
    def depth(self) -> int:
        return len(self.elements) - 1

    def to_json(self):
        return {
            "claim": "compatible-p-power-root-tower",
            "prime": self.prime,
            "depth": self.depth,
            "elements": [_obj_json(x) for x in self.elements],
        }


def build_tower(f, p: int, depth: int) -> RootTower:
    """Compatible p-power roots [f, f^(1/p), ..., f^(1/p^depth)] inside the
    field (scalars use the deterministic Hensel path; series the iteration).
    Raises TowerObstruction at the first level with no in-field root."""
    elements = [f]
    current = f
    for e in range(1, depth + 1):
        try:
            if isinstance(current, Scalar):
                current = scalar_pth_root(current, p)
            else:
                current, _ = pth_root_near_one(current, p)
        except (NoRootInField, PreconditionFailed) as exc:
            raise TowerObstruction(
                f"no in-field {p}-th root at tower level {e}: {exc}", e
            ) from exc
        elements.append(current)
    return RootTower(p, elements)


def verify_tower(tower: RootTower) -> bool:
    """Exact recomputation of every tower step at working precision."""
    els = tower.elements
    if not els:
        return False
    for e in range(len(els) - 1):
        if not els[e + 1].pow_int(tower.prime).equals(els[e]):
            return False
    return True


def tower_unit_certificate(tower: RootTower):
    """Consequence check: the tower's base has nonzero norm and an inverse.

    Returns (ok, inverse) where ok demands norm(f) != 0 and f * f^-1 = 1.
    """
    base = tower.elements[0]
    if base.is_ring_zero():
        return False, None
    if _norm_of(base).is_zero:
        return False, None
    inv = base.invert()
    ok = (base * inv).equals(base.ring_one())
    return ok, inv

"""Batch CLI: one subcommand per demonstration, JSON in / JSON out.

Every run writes a single artifact under the output directory and prints a
short human summary.  Artifacts embed their full parameters (field spec,
radius declarations, series data), so ``--check`` can replay the verdict
from the artifact alone and compare byte-for-byte.

Exit status: 0 verified/pass, 2 verdict-negative, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .derivlab import (nonintegral_certificate,
                       p_independence_certificate, pbasis_series,
                       sparse_series, unboundedness_table)
from .errors import NonarchError, TowerObstruction
from .fields import (FQ_LAURENT, PADIC, RATFUN_LAURENT, FieldSpec, Scalar,
                     scalar_from_literal)
from .frobenius import PBasis, decomposition_artifact, verify_norm_bound
from .lognorm import Cmp, RadiusDecl, ln_compare, ln_mul
from .rootlift import build_tower, pth_root_near_one, verify_tower, \
    verify_trace, tower_unit_certificate
from .series import LAURENT, TateSeries, spectral_power_estimate
from .squarezero import SquareZeroRing

SCHEMA = "nonarch-artifact/1"

DEFAULT_CONFIG = {
    "fields": {
        "q3": {"kind": PADIC, "residue_prime": 3, "precision_cap": 40},
        "q5": {"kind": PADIC, "residue_prime": 5, "precision_cap": 40},
        "f2t": {"kind": FQ_LAURENT, "residue_prime": 2, "field_size": 2,
                "precision_cap": 64},
        "f4t": {"kind": FQ_LAURENT, "residue_prime": 2, "field_size": 4,
                "precision_cap": 64},
        "ratfun2": {"kind": RATFUN_LAURENT, "residue_prime": 2,
                    "num_pbasis_vars": 3, "precision_cap": 64},
    },
    "radii": {
        "r1": {"gen_id": "r1", "kind": "quadratic",
               "params": {"a": 0, "b": 1, "c": 2, "d": 2},
               "asserts_irrational": True,
               "note": "log_q(1/r) = sqrt(2)/2 = 0.70710678..."},
        "r06": {"gen_id": "r06", "kind": "rational",
                "params": {"value": "3/5"},
                "asserts_irrational": True,
                "note": "test radius pinned near 0.6; the irrationality "
                        "assertion is a stub for readable exponents"},
    },
    "caps": {"support": 4096, "refine_depth": 256},
    "out": "out",
}


def load_config(path=None):
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))
    if path:
        with open(path) as fh:
            user = json.load(fh)
        for key in ("fields", "radii"):
            cfg[key].update(user.get(key, {}))
        cfg["caps"].update(user.get("caps", {}))
        if "out" in user:
            cfg["out"] = user["out"]
    return cfg


def _field_from_cfg(cfg, field_id):
    try:
        return cfg["fields"][field_id]
    except KeyError:
        raise NonarchError(f"field {field_id!r} is not declared; "
                           f"known: {sorted(cfg['fields'])}")


def _radius_from_cfg(cfg, radius_id):
    try:
        return cfg["radii"][radius_id]
    except KeyError:
        raise NonarchError(f"radius {radius_id!r} is not declared; "
                           f"known: {sorted(cfg['radii'])}")


def _series_from_params(params):
    spec = FieldSpec.from_json(params["field"])
    radii = tuple(RadiusDecl.from_json(r) for r in params["radii"])
    return TateSeries.from_json(spec, radii, params["series"]), spec, radii


def _load_series_arg(arg):
    """--series accepts a JSON file path or an inline JSON object."""
    text = arg
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    return json.loads(text)


# ---------------------------------------------------------------------------
# Runners: pure functions params -> (result dict, claim, verdict, exit code)


def run_gauss_norm(params):
    f, spec, radii = _series_from_params(params)
    n, exact = f.gauss_norm()
    result = {"norm": n.to_json(), "exact": exact}
    return result, "stored-term-maximum-is-gauss-norm", \
        "EXACT" if exact else "BOUND_ONLY", 0


def run_spectral_radius(params):
    f, spec, radii = _series_from_params(params)
    n, exact = f.gauss_norm()
    checks = []
    agree = True
    if f.is_exact() and not f.is_ring_zero():
        for power in range(1, params.get("powers", 6) + 1):
            est = spectral_power_estimate(f, power)
            ok = est == n
            agree = agree and ok
            checks.append({"l": power, "estimate": est.to_json(),
                           "matches": ok})
    result = {"spectral_radius": n.to_json(), "exact": exact,
              "power_estimates": checks, "all_match": agree}
    return result, "spectral-radius-equals-weighted-term-maximum", \
        ("VERIFIED" if agree else "MISMATCH"), (0 if agree else 2)


def run_pth_root(params):
    spec = FieldSpec.from_json(params["field"])
    target = scalar_from_literal(spec, params["target"])
    p = params["prime"]
    kwargs = {}
    if params.get("max_steps"):
        kwargs["max_steps"] = params["max_steps"]
    root, trace = pth_root_near_one(target, p, **kwargs)
    capped = root.cap()
    replay = verify_trace(trace)
    result = {"trace": trace.to_json(), "root_capped": capped.to_literal(),
              "replay_ok": replay}
    verdict = "CERTIFIED" if trace.certified and replay else "NOT_CERTIFIED"
    return result, "pth-root-iteration", verdict, 0 if verdict == "CERTIFIED" else 2


def run_tower(params):
    spec = FieldSpec.from_json(params["field"])
    target = scalar_from_literal(spec, params["target"])
    try:
        tower = build_tower(target, params["prime"], params["depth"])
    except TowerObstruction as exc:
        result = {"obstruction_depth": exc.depth, "message": str(exc)}
        return result, "compatible-p-power-root-tower", "OBSTRUCTED", 2
    ok = verify_tower(tower)
    unit_ok, inv = tower_unit_certificate(tower)
    result = {"tower": tower.to_json(), "verified": ok,
              "base_is_unit": unit_ok,
              "base_inverse": inv.cap().to_literal() if inv is not None
              else None}
    verdict = "VERIFIED" if ok and unit_ok else "FAILED"
    return result, "compatible-p-power-root-tower", verdict, \
        0 if verdict == "VERIFIED" else 2


def run_sparse_series(params):
    spec = FieldSpec.from_json(params["field"])
    radius = RadiusDecl.from_json(params["radius"])
    sp = sparse_series(params["terms"], spec, radius)
    n, exact = sp.series.gauss_norm()
    result = {"indices": sp.indices, "next_index": sp.next_index,
              "series": sp.series.to_json(),
              "completion_tail": sp.completion_tail.to_json(),
              "gauss_norm": n.to_json(), "gauss_exact": exact}
    return result, "sparse-gap-series", "BUILT", 0


def run_nonintegral_cert(params):
    spec = FieldSpec.from_json(params["field"])
    radius = RadiusDecl.from_json(params["radius"])
    if params.get("series") is not None:
        f = TateSeries.from_json(spec, (radius,), params["series"])
        cert = nonintegral_certificate(f, params["n_max"], params["d_max"])
    else:
        sp = sparse_series(params["terms"], spec, radius)
        cert = nonintegral_certificate(sp, params["n_max"], params["d_max"])
    result = cert.to_json()
    code = 0 if cert.verdict == "NON_INTEGRAL" else 2
    return result, cert.claim, cert.verdict, code


def run_unbounded_demo(params):
    spec = FieldSpec.from_json(params["field"])
    radius = RadiusDecl.from_json(params["radius"])
    cert = unboundedness_table(params["terms"], spec, radius,
                               Fraction(params["bound"]))
    code = 0 if cert.verdict == "UNBOUNDED" else 2
    return cert.to_json(), cert.claim, cert.verdict, code


def run_pbasis_cert(params):
    p, nvars = params["prime"], params["num_pbasis_vars"]
    spec = FieldSpec.from_json(params["field"])
    radius = RadiusDecl.from_json(params["radius"])
    if params.get("series") is not None:
        f = TateSeries.from_json(spec, (radius,), params["series"])
    else:
        f = pbasis_series(p, nvars, params["terms"], spec, radius)
    cert = p_independence_certificate(f, params["T_deg_max"],
                                      params["coeff_deg_max"])
    result = cert.to_json()
    result["series"] = f.to_json()
    code = 0 if cert.verdict == "P_INDEPENDENT" else 2
    return result, cert.claim, cert.verdict, code


def run_ffinite_decompose(params):
    f, spec, radii = _series_from_params(params)
    basis = PBasis(spec, spec.char)
    art = decomposition_artifact(f, basis)
    ratios = []
    for e, c in f.sorted_terms():
        ratio, ok = verify_norm_bound(c, basis)
        ratios.append({"exp": list(e), "ratio": ratio.to_json(), "pass": ok})
    art["norm_bounds"] = ratios
    ok = art["round_trip_exact"] and art["derivative_span"] \
        and all(r["pass"] for r in ratios)
    return art, art["claim"], "VERIFIED" if ok else "FAILED", 0 if ok else 2


def run_sz_check(params):
    spec = FieldSpec.from_json(params["field"])
    radius = RadiusDecl.from_json(params["radius"])
    rng = random.Random(params["seed"])
    count = params["count"]

    def rand_scalar():
        if spec.kind == PADIC:
            q = spec.residue_prime
            num = rng.randint(-30, 30)
            den = rng.choice([1, 1, 2, q, q * q])
            if num == 0:
                num = 1
            return Scalar.from_fraction(spec, Fraction(num, den))
        val = rng.randint(-3, 4)
        return Scalar.t_power(spec, val)

    def rand_series():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(-2, 3),)] = rand_scalar()
        return TateSeries(spec, LAURENT, (radius,), terms)

    failures = []
    scalar_ring = SquareZeroRing(Scalar.one(spec))
    series_ring = SquareZeroRing(
        TateSeries.one(spec, (radius,), kind=LAURENT))
    for trial in range(count):
        use_series = trial % 2 == 1
        ring = series_ring if use_series else scalar_ring
        rand = rand_series if use_series else rand_scalar
        x = ring.elem(rand(), rand())
        y = ring.elem(rand(), rand())
        z = ring.elem(rand(), rand())
        checks = {
            "assoc": ((x * y) * z).equals(x * (y * z)),
            "distrib": (x * (y + z)).equals(x * y + x * z),
            "square_zero": (ring.elem(ring.base_zero, x.b)
                            * ring.elem(ring.base_zero, x.b)).equals(
                                ring.zero()),
            "isometry": ring.embed(x.a).norm_ln()
            == x.a.norm_ln().pad(len(ring.radii)),
        }
        nxy = (x * y).norm_ln()
        nx, ny = x.norm_ln(), y.norm_ln()
        if nxy.is_zero:
            checks["submult"] = True
        elif nx.is_zero or ny.is_zero:
            checks["submult"] = False
        else:
            checks["submult"] = ln_compare(
                nxy, ln_mul(nx, ny), (radius,)) is not Cmp.GT
        bad = [k for k, v in checks.items() if not v]
        if bad:
            failures.append({"trial": trial, "failed": bad})
            if len(failures) >= 5:
                break
    result = {"trials": count, "failures": failures}
    verdict = "PASS" if not failures else "FAIL"
    return result, "square-zero-extension-ring-axioms", verdict, \
        0 if verdict == "PASS" else 2


RUNNERS = {
    "gauss-norm": run_gauss_norm,
    "spectral-radius": run_spectral_radius,
    "pth-root": run_pth_root,
    "tower": run_tower,
    "sparse-series": run_sparse_series,
    "nonintegral-cert": run_nonintegral_cert,
    "unbounded-demo": run_unbounded_demo,
    "pbasis-cert": run_pbasis_cert,
    "ffinite-decompose": run_ffinite_decompose,
    "sz-check": run_sz_check,
}


def _norm_str(obj):
    if obj.get("zero"):
        return "0"
    rad = obj.get("radius", [])
    parts = [f"q^-({obj['e0']})"]
    parts += [f"r{j + 1}^({e})" for j, e in enumerate(rad) if e != "0"]
    return " * ".join(parts)


def _summary_lines(command, result):
    if command in ("gauss-norm",):
        yield f"norm = {_norm_str(result['norm'])} " \
              f"({'exact' if result['exact'] else 'bound only'})"
    elif command == "spectral-radius":
        yield f"spectral radius = {_norm_str(result['spectral_radius'])}"
        yield f"power estimates l=1..{len(result['power_estimates'])} " \
              f"{'all match' if result['all_match'] else 'MISMATCH'}"
    elif command == "pth-root":
        steps = result["trace"]["steps"]
        yield f"{len(steps)} steps, root = {result['root_capped'][:48]}"
        if steps:
            yield f"contraction |g1| = " \
                  f"{_norm_str(result['trace']['contraction'])}"
    elif command == "tower" and "tower" in result:
        yield f"depth {result['tower']['depth']}, " \
              f"verified = {result['verified']}"
    elif command == "sparse-series":
        yield f"indices {result['indices']}, next {result['next_index']}"
    elif command == "nonintegral-cert":
        w = result["witness"]
        yield f"system rank {w.get('rank')}/{w.get('unknowns')} unknowns"
        if "relation" in w:
            yield f"relation: {w['relation']}"
    elif command == "unbounded-demo":
        for row in result["witness"]["rows"]:
            lo, hi = (float(Fraction(s)) for s in row["ratio_log_q"])
            yield (f"n={row['n']}: ratio = r^(-{row['tail_index']}) "
                   f"= q^{lo:.4f}..q^{hi:.4f}, "
                   f"exceeds bound: {row['exceeds_bound']}")
    elif command == "pbasis-cert":
        w = result["witness"]
        for obs in w.get("obstructions", []):
            yield (f"generator {obs['lambda']}: span parity verified over "
                   f"{obs['span_products_checked']} products")
        if "relation" in w:
            yield f"decomposed {len(w['relation'])} monomials as g * h^p"
    elif command == "ffinite-decompose":
        yield f"parts: {sorted(result['parts'])}"
        yield f"round trip exact: {result['round_trip_exact']}, " \
              f"derivative span: {result['derivative_span']}"
    elif command == "sz-check":
        yield f"{result['trials']} trials, {len(result['failures'])} failures"


def make_artifact(command, params, result, claim, verdict):
    return {"schema": SCHEMA, "command": command, "params": params,
            "claim": claim, "verdict": verdict, "result": result}


def write_artifact(artifact, out_dir, name):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name + ".json")
    with open(path, "w") as fh:
        json.dump(artifact, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def check_artifact(path):
    """Replay an artifact from its stored parameters; 0 iff it reproduces."""
    with open(path) as fh:
        stored = json.load(fh)
    command = stored.get("command")
    if command not in RUNNERS:
        print(f"unknown artifact command {command!r}", file=sys.stderr)
        return 1
    result, claim, verdict, _ = RUNNERS[command](stored["params"])
    fresh = make_artifact(command, stored["params"], result, claim, verdict)
    same = json.dumps(fresh, sort_keys=True) == \
        json.dumps(stored, sort_keys=True)
    print(f"{command}: replay {'matches' if same else 'DIFFERS'} "
          f"(verdict {verdict})")
    return 0 if same else 2


# ---------------------------------------------------------------------------
# Argument parsing


def _add_common(sp, field_default=None, radius_default="r1"):
    sp.add_argument("--field", default=field_default)
    sp.add_argument("--radius", default=radius_default)
    sp.add_argument("--precision", type=int, default=None,
                    help="override the field's precision cap")
    sp.add_argument("--check", metavar="ARTIFACT", default=None,
                    help="replay a stored artifact instead of running")
    sp.add_argument("--out", default=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nonarch",
        description="exact demonstrations in non-archimedean Banach rings")
    ap.add_argument("--config", default=None,
                    help="session config JSON (fields, radii, caps)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gauss-norm", help="Gauss norm of a series")
    _add_common(sp, "q3")
    sp.add_argument("--series", required=True,
                    help="series JSON (inline or file path)")

    sp = sub.add_parser("spectral-radius",
                        help="spectral radius with power-estimate oracle")
    _add_common(sp, "q3")
    sp.add_argument("--series", required=True)
    sp.add_argument("--powers", type=int, default=6)

    sp = sub.add_parser("pth-root", help="certified p-th root iteration")
    _add_common(sp, "q3")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--max-steps", type=int, default=None)

    sp = sub.add_parser("tower", help="compatible p-power root tower")
    _add_common(sp, "q3")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--depth", type=int, required=True)

    sp = sub.add_parser("sparse-series", help="gap series with certificates")
    _add_common(sp, "q3")
    sp.add_argument("--terms", type=int, required=True)

    sp = sub.add_parser("nonintegral-cert",
                        help="bounded-degree relation refutation")
    _add_common(sp, "q3")
    sp.add_argument("--terms", type=int, default=None,
                    help="build the gap series with this many terms")
    sp.add_argument("--series", default=None,
                    help="explicit series JSON (control cases)")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--dmax", type=int, required=True)

    sp = sub.add_parser("unbounded-demo",
                        help="norm-ratio divergence of the dual-number map")
    _add_common(sp, "q3")
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--bound", default="1e6")

    sp = sub.add_parser("pbasis-cert",
                        help="p-independence of series coefficients")
    _add_common(sp, "ratfun2")
    sp.add_argument("--prime", type=int, default=2)
    sp.add_argument("--nvars", type=int, default=3)
    sp.add_argument("--terms", type=int, default=4)
    sp.add_argument("--series", default=None,
                    help="explicit series JSON (control cases)")
    sp.add_argument("--tdeg", type=int, default=4)
    sp.add_argument("--cdeg", type=int, default=2)

    sp = sub.add_parser("ffinite-decompose",
                        help="p-th power basis decomposition")
    _add_common(sp, "f2t")
    sp.add_argument("--series", required=True)

    sp = sub.add_parser("sz-check",
                        help="randomized square-zero ring axioms")
    _add_common(sp, "q3")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=7)

    return ap


def _field_json(cfg, args):
    fj = dict(_field_from_cfg(cfg, args.field))
    if getattr(args, "precision", None):
        fj["precision_cap"] = args.precision
    return fj


def _params_for(args, cfg):
    cmd = args.command
    if cmd in ("gauss-norm", "spectral-radius", "ffinite-decompose"):
        series = _load_series_arg(args.series)
        radii_ids = series.get("radius", [args.radius])
        params = {"field": _field_json(cfg, args),
                  "radii": [_radius_from_cfg(cfg, r) for r in radii_ids],
                  "series": series}
        if cmd == "spectral-radius":
            params["powers"] = args.powers
        return params
    if cmd == "pth-root":
        return {"field": _field_json(cfg, args), "prime": args.prime,
                "target": args.target, "max_steps": args.max_steps}
    if cmd == "tower":
        return {"field": _field_json(cfg, args), "prime": args.prime,
                "target": args.target, "depth": args.depth}
    if cmd == "sparse-series":
        return {"field": _field_json(cfg, args), "terms": args.terms,
                "radius": _radius_from_cfg(cfg, args.radius)}
    if cmd == "nonintegral-cert":
        params = {"field": _field_json(cfg, args),
                  "radius": _radius_from_cfg(cfg, args.radius),
                  "n_max": args.nmax, "d_max": args.dmax,
                  "terms": args.terms, "series": None}
        if args.series is not None:
            params["series"] = _load_series_arg(args.series)
        elif args.terms is None:
            raise NonarchError("need --terms or --series")
        return params
    if cmd == "unbounded-demo":
        bound = args.bound
        if isinstance(bound, str) and ("e" in bound or "E" in bound):
            mant, _, exp = bound.lower().partition("e")
            bound = str(Fraction(mant) * Fraction(10) ** int(exp))
        return {"field": _field_json(cfg, args), "terms": args.terms,
                "radius": _radius_from_cfg(cfg, args.radius),
                "bound": str(bound)}
    if cmd == "pbasis-cert":
        fj = _field_json(cfg, args)
        fj["num_pbasis_vars"] = args.nvars
        params = {"field": fj, "prime": args.prime,
                  "num_pbasis_vars": args.nvars, "terms": args.terms,
                  "radius": _radius_from_cfg(cfg, args.radius),
                  "T_deg_max": args.tdeg, "coeff_deg_max": args.cdeg,
                  "series": None}
        if args.series is not None:
            params["series"] = _load_series_arg(args.series)
        return params
    if cmd == "sz-check":
        return {"field": _field_json(cfg, args),
                "radius": _radius_from_cfg(cfg, args.radius),
                "count": args.count, "seed": args.seed}
    raise NonarchError(f"unhandled command {cmd!r}")


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--check" in argv:
        i = argv.index("--check")
        if i + 1 >= len(argv):
            print("error: --check needs an artifact path", file=sys.stderr)
            return 1
        try:
            return check_artifact(argv[i + 1])
        except NonarchError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
        params = _params_for(args, cfg)
        result, claim, verdict, code = RUNNERS[args.command](params)
        artifact = make_artifact(args.command, params, result, claim,
                                 verdict)
        out_dir = args.out or cfg["out"]
        path = write_artifact(artifact, out_dir, args.command)
        for line in _summary_lines(args.command, result):
            print("  " + line)
        print(f"{args.command}: {verdict}  ->  {path}")
        return code
    except NonarchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

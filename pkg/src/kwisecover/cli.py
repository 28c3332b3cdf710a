"""Command-line front end.

    kwisecover delta-star --n 10:30 --k 1:4 --format csv
    kwisecover certify --n 2305843009213693952 --k 738
    kwisecover certify --sweep-m 40:70 --format json
    kwisecover construct --n 12 --k 2 --radius 3
    kwisecover constants
    kwisecover lebesgue --chebyshev 10
    kwisecover bounds 127 9

Every command accepts ``--format text|json|csv``, ``--seed`` and ``--jobs``.
JSON reports carry the keys ``config``, ``result``, ``conditions`` and
``timing``.  Exit status: 0 success / certified, 1 not certified or
infeasible, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import certify, lp, oracle, seq
from .binom import EXACT_MAX_N
from .poly import DomainError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

MAX_LP_N = 200

NU_ALIASES = {
    "exact": certify.EXACT_SUM,
    "logfloat": certify.LOGFLOAT_SUM,
    "lemma13": certify.LEMMA13,
    certify.EXACT_SUM: certify.EXACT_SUM,
    certify.LOGFLOAT_SUM: certify.LOGFLOAT_SUM,
    certify.LEMMA13: certify.LEMMA13,
}
LAMBDA_ALIASES = {
    "paper": certify.PAPER_BOUND,
    "measured": certify.MEASURED,
    certify.PAPER_BOUND: certify.PAPER_BOUND,
    certify.MEASURED: certify.MEASURED,
}


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output helpers


def _clean(obj):
    """JSON-safe copy: Fractions become strings, non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2**53:
        return str(obj)
    return obj


def dump_json(report: dict) -> str:
    """Canonical serialization; ``dump_json(json.loads(s)) == s`` for its own output."""
    return json.dumps(_clean(report), sort_keys=True, indent=2)


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0].keys())
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _clean(v) for k, v in r.items()})
    return buf.getvalue()


def _text(report: dict) -> str:
    lines = []
    for section in ("result", "conditions"):
        body = report.get(section) or {}
        for key, val in body.items():
            if isinstance(val, list) and val and isinstance(val[0], dict):
                for row in val:
                    lines.append(", ".join(f"{k}={_clean(v)}" for k, v in row.items()))
            elif isinstance(val, dict):
                lines += [f"{key}.{k}: {_clean(v)}" for k, v in _flatten(val).items()]
            elif isinstance(val, list):
                lines.append(f"{key}: " + " ".join(str(_clean(v)) for v in val))
            else:
                lines.append(f"{key}: {_clean(val)}")
    return "\n".join(lines)


def _emit(args, report: dict, rows=None) -> None:
    if args.format == "json":
        print(dump_json(report))
    elif args.format == "csv":
        rows = rows if rows is not None else [_flatten(report["result"])]
        sys.stdout.write(_csv(rows))
    else:
        print(_text(report))


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = " ".join(str(_clean(x)) for x in v)
        else:
            out[key] = v
    return out


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _report(args, result, conditions=None, started=None) -> dict:
    return {
        "config": _config(args),
        "result": result,
        "conditions": conditions or {},
        "timing": {"seconds": round(time.perf_counter() - started, 6) if started else 0.0},
    }


def _int_range(text: str) -> list[int]:
    """``"5"`` or ``"a:b"`` (inclusive)."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a:b, got {text!r}")


def _pool_map(fn, items, jobs: int):
    """Ordered map; results come back in input order regardless of completion order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# ------------------------------------------------------------------ commands


def _delta_row(nk):
    n, k = nk
    ds = lp.delta_star(n, k)
    rho = certify.tietavainen_radius_bound(n, k + 1)
    return {
        "n": n,
        "k": k,
        "delta_star_window": ds.delta,
        "tietavainen_lb": n / 2 - rho,
        "tietavainen_ub": rho,
        "attained": ds.attained,
    }


def cmd_delta_star(args) -> int:
    started = time.perf_counter()
    grid = [(n, k) for n in args.n for k in args.k]
    for n, k in grid:
        if k >= n or k < 1:
            raise UsageError(f"need 1 <= k < n (got n={n}, k={k})")
        if n > MAX_LP_N:
            raise UsageError(f"n={n} is beyond the exact LP (n <= {MAX_LP_N}); use 'certify' for large n")
    rows = _pool_map(_delta_row, grid, args.jobs)
    conds = {
        f"n={r['n']},k={r['k']}": {
            "above_lower_bound": r["delta_star_window"] > r["tietavainen_lb"]
            or (r["delta_star_window"] == r["tietavainen_lb"] and not r["attained"]),
            "radius_within_bound": r["n"] / 2 - r["delta_star_window"] <= r["tietavainen_ub"] + 1e-12,
        }
        for r in rows
    }
    _emit(args, _report(args, {"rows": rows}, conds, started), rows)
    return EXIT_OK


def _certify_one(job):
    n, k, kw, nodes, force = job
    params = certify.CertificateParams(n, k, **kw)
    if nodes == "equispaced":
        cert = certify.equally_spaced_variant(params, force=force)
    else:
        cert = certify.translated_certificate(params, force=force)
    return cert.to_dict()


def cmd_certify(args) -> int:
    started = time.perf_counter()
    kw = dict(
        alpha=args.alpha,
        beta=args.beta,
        epsilon=args.eps,
        nu_mode=NU_ALIASES[args.nu_mode],
        lambda_mode=LAMBDA_ALIASES[args.lambda_mode],
    )
    if args.sweep_m:
        pairs = []
        for m in args.sweep_m:
            n = 2**m
            ks = args.k if args.k else [certify.cube_root_k(n)]
            pairs += [(n, k) for k in ks if k >= 1]
    else:
        if args.n is None or args.k is None:
            raise UsageError("certify needs --n and --k, or --sweep-m")
        pairs = [(n, k) for n in args.n for k in args.k]
    if kw["nu_mode"] == certify.EXACT_SUM and not args.force:
        big = [n for n, _ in pairs if n > EXACT_MAX_N]
        if big:
            raise UsageError(f"--nu-mode exact refused for n={big[0]} > {EXACT_MAX_N}; pass --force to insist")
    try:
        for n, k in pairs:
            certify.CertificateParams(n, k, **kw)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc))
    jobs = [(n, k, kw, args.nodes, args.force) for n, k in pairs]
    certs = _pool_map(_certify_one, jobs, args.jobs)
    if args.sweep_m or len(certs) > 1:
        # one JSON line (or row) per (n, k)
        if args.format == "json":
            for c in certs:
                line = _report(args, c, c.pop("conditions"), started)
                print(json.dumps(_clean(line), sort_keys=True))
        elif args.format == "csv":
            sys.stdout.write(_csv([_summary_row(c) for c in certs]))
        else:
            for c in certs:
                print(" ".join(f"{k}={_clean(v)}" for k, v in _summary_row(c).items()))
        return EXIT_OK if any(c["verdict"] == certify.CERTIFIED for c in certs) else EXIT_FAIL
    c = certs[0]
    conds = c.pop("conditions")
    report = _report(args, c, conds, started)
    if args.format == "csv":
        _emit(args, report, [_summary_row(dict(c, conditions=conds))])
    else:
        _emit(args, report)
    return EXIT_OK if c["verdict"] == certify.CERTIFIED else EXIT_FAIL


def _summary_row(c: dict) -> dict:
    return {
        "n": c["n"],
        "k": c["k"],
        "delta": c["delta"],
        "t": c["t"],
        "p_offset": c["p_offset"],
        "R_W": c["R_W"],
        "lambda_W": c["lambda_W"],
        "log_nu": c["nu"].get("log"),
        "log_rhs": c["rhs"].get("log"),
        "verdict": c["verdict"],
        "reason": c["reason"],
    }


def cmd_construct(args) -> int:
    started = time.perf_counter()
    n, k = args.n, args.k
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n (got n={n}, k={k})")
    if n > MAX_LP_N:
        raise UsageError(f"n={n} is beyond the exact LP (n <= {MAX_LP_N})")
    if args.delta is not None:
        window = lp.WeightWindow.two_sided(n, Fraction(args.delta))
    else:
        window = lp.WeightWindow.one_sided(n, args.radius)
    result = {"n": n, "k": k, "window": {"kind": window.kind, "bound": window.bound}}
    try:
        wd = lp.witness_distribution(n, k, window)
    except lp.InfeasibleError as exc:
        result["status"] = "infeasible"
        result["impossibility_certificate"] = {
            "basis": "krawtchouk",
            "coeffs": [str(c) for c in exc.certificate.coeffs],
        }
        _emit(args, _report(args, result, {}, started))
        return EXIT_FAIL
    result["status"] = "feasible"
    result["distribution"] = {str(w): str(p) for w, p in enumerate(wd.probs) if p}
    conds = {"moments_vanish": wd.is_kwise(k), "is_probability": wd.is_probability()}
    if n <= 14:
        mu = oracle.lift(wd)
        ok, bad = oracle.kwise_check(mu, k)
        pts = mu.points()
        result["verification"] = {
            "kwise_check": ok,
            "first_violation": bad,
            "distance_from_origin": oracle.distance_from_origin(pts),
            "covering_radius": oracle.covering_radius(pts, n),
        }
        conds["character_sums_vanish"] = ok
        if window.kind == lp.ONE_SIDED:
            conds["distance_from_origin_at_least_R"] = result["verification"]["distance_from_origin"] >= window.bound
    rows = [{"w": w, "probability": str(p)} for w, p in enumerate(wd.probs) if p]
    _emit(args, _report(args, result, conds, started), rows)
    return EXIT_OK if all(conds.values()) else EXIT_FAIL


def cmd_constants(args) -> int:
    started = time.perf_counter()
    a_star, b_star, e_star = certify.optimize_alpha_star(args.grid_step, args.tol)
    a4, b4, e4 = certify.optimize_alpha_star(args.grid_step, args.tol, base=4.0)
    al, be, ep = certify.DEFAULT_ALPHA, certify.DEFAULT_BETA, certify.DEFAULT_EPSILON
    h = certify.h_function(be, ep)
    c = certify.c_coeff(al, be, ep)
    result = {
        "alpha_star": a_star,
        "argmin_beta": b_star,
        "argmin_epsilon": e_star,
        "h_default": h,
        "defaults": {"alpha": al, "beta": be, "epsilon": ep},
        "c_default": c,
        "equally_spaced_alpha_star": a4,
        "equally_spaced_argmin_beta": b4,
    }
    conds = {
        "c_positive": c > 0,
        "exponent_balance": 2 * (be + ep) ** 2 * al < c,
        "alpha_above_h": al > h,
        "equally_spaced_below_1.43": a4 < 1.43,
    }
    _emit(args, _report(args, result, conds, started))
    return EXIT_OK


def cmd_lebesgue(args) -> int:
    started = time.perf_counter()
    if args.nodes:
        try:
            s, n, k = seq.read_nodes(args.nodes)
        except seq.NodeFileError as exc:
            raise UsageError(f"{args.nodes}: line {exc.line}: {exc}")
        except OSError as exc:
            raise UsageError(str(exc))
        kind, bound = "file", seq.quantized_lebesgue_bound(k)
    elif args.chebyshev is not None:
        k, s, kind = args.chebyshev, seq.extended_chebyshev(args.chebyshev), "chebyshev"
        bound = seq.chebyshev_lebesgue_bound(k)
    else:
        k, s, kind = args.equispaced, seq.equally_spaced(args.equispaced), "equispaced"
        bound = seq.equally_spaced_lebesgue_bound(k)
    if k < 1:
        raise UsageError("need k >= 1")
    value, where, width = seq.lebesgue_maximize(s)
    result = {"kind": kind, "k": k, "lambda": value, "argmax": where, "bound": bound, "slack": bound - value}
    _emit(args, _report(args, result, {"below_bound": value < bound}, started))
    return EXIT_OK


def cmd_bounds(args) -> int:
    started = time.perf_counter()
    n, d = args.n, args.d
    try:
        rho = certify.tietavainen_radius_bound(n, d)
    except DomainError as exc:
        raise UsageError(str(exc))
    result = {"n": n, "d": d, "tietavainen_upper": rho, "delta_star_lower": n / 2 - rho}
    conds = {}
    m = (n + 1).bit_length() - 1
    if 2**m == n + 1 and d % 2 == 1:
        s = (d - 1) // 2
        try:
            bch = certify.bch_style_lower_bound(m, s)
            result["bch_style_lower"] = bch
            result["m"], result["s"] = m, s
            conds["lower_below_upper"] = bch < rho
        except DomainError as exc:
            result["bch_style_lower"] = None
            result["bch_note"] = str(exc)
    _emit(args, _report(args, result, conds, started))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for sweeps")

    ap = argparse.ArgumentParser(prog="kwisecover", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta-star", parents=[common], help="exact window thresholds from the LP")
    p.add_argument("--n", type=_int_range, required=True, help="n or a:b")
    p.add_argument("--k", type=_int_range, required=True, help="k or a:b")
    p.set_defaults(func=cmd_delta_star)

    p = sub.add_parser("certify", parents=[common], help="LP-free certificate at Delta = sqrt(alpha k n)")
    p.add_argument("--n", type=_int_range)
    p.add_argument("--k", type=_int_range)
    p.add_argument("--sweep-m", type=_int_range, help="sweep n = 2^m over m or a:b")
    p.add_argument("--alpha", type=float, default=certify.DEFAULT_ALPHA)
    p.add_argument("--beta", type=float, default=certify.DEFAULT_BETA)
    p.add_argument("--eps", type=float, default=certify.DEFAULT_EPSILON)
    p.add_argument("--nu-mode", choices=sorted(NU_ALIASES), default="logfloat")
    p.add_argument("--lambda-mode", choices=sorted(LAMBDA_ALIASES), default="paper")
    p.add_argument("--nodes", choices=("chebyshev", "equispaced"), default="chebyshev")
    p.add_argument("--force", action="store_true", help="allow exact summation for large n")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", parents=[common], help="k-wise independent witness on a window")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--radius", type=int, help="one-sided window w >= R")
    g.add_argument("--delta", type=str, help="central window |w - n/2| <= delta (e.g. 5/2)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("constants", parents=[common], help="alpha* and related constants")
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("lebesgue", parents=[common], help="Lebesgue constant of a node sequence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--nodes", help="node file ('# n=<n> k=<k>' header, one point per line)")
    g.add_argument("--chebyshev", type=int, metavar="K")
    g.add_argument("--equispaced", type=int, metavar="K")
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("bounds", parents=[common], help="covering-radius bounds side by side")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.jobs < 1:
        ap.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"kwisecover {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

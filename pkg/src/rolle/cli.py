"""Command-line front end.

Every subcommand builds a ``{manifest, payload}`` document. ``--out`` writes
it as JSON; stdout gets either a short text report or the same JSON. The
``manifest.runtime`` block (start time, worker count, output paths) is the
only part that may differ between reruns of the same command.
"""
import argparse
import csv
import json
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .combinatorics import MAX_ENUM_N, enumerate_periodic, enumerate_rolle_words, flat_count
from .errors import RolleError, SizeGuardError
from .kernels import SCHEMES
from .rolle3 import (
    Tuple3Arrangement,
    check_case_inequalities,
    check_inequalities,
    construct_3nice,
    evaluate,
    inequality_terms,
    recovered_arrangement,
)
from .search import SamplerConfig, anderson_random, anderson_scan, classify
from .trig import periodic_arrangement, real_rooted_trig_from_zeros, sample_zero_set
from .words import is_possible_periodic

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_INPUT = 2

# words that must never be observed at degree 4, and the degree-5 ceiling
FORBIDDEN_4 = ("0102310210", "0120132010")
CEILING_5 = 116
TUPLE_FIELDS = ("x1", "x2", "x3", "y1", "y2", "z1")


class ContractFailure(RolleError):
    """A result contradicts a known theorem."""


def diffable_body(doc):
    """Copy of a result document without the run-specific ``manifest.runtime``."""
    body = json.loads(json.dumps(doc))
    body["manifest"].pop("runtime", None)
    return body


def _manifest(args, params, started, outputs):
    return {
        "subcommand": args.command,
        "parameters": params,
        "version": __version__,
        "runtime": {"started": started, "workers": getattr(args, "workers", 1), "outputs": outputs},
    }


# ---------------------------------------------------------------- commands


def cmd_enumerate(args):
    ws = enumerate_rolle_words(args.n)
    flat = flat_count(args.n)
    payload = {"n": args.n, "count": len(ws), "flat_count": flat, "agree": len(ws) == flat, "words": ws.strings()}
    lines = payload["words"] + [f"count {payload['count']} (flat_count {flat}, {'agree' if payload['agree'] else 'MISMATCH'})"]
    if not payload["agree"]:
        raise ContractFailure("enumeration disagrees with the closed form")
    return {"n": args.n}, payload, lines


def cmd_count(args):
    rows = []
    for n in range(1, args.n + 1) if args.upto else [args.n]:
        row = {"n": n, "flat_count": flat_count(n)}
        if args.verify:
            if n > MAX_ENUM_N:
                raise SizeGuardError(f"verification enumerates words; n must be at most {MAX_ENUM_N}")
            row["enumerated"] = len(enumerate_rolle_words(n))
            if row["enumerated"] != row["flat_count"]:
                raise ContractFailure(f"enumeration disagrees with the closed form at n={n}")
        rows.append(row)
    lines = [" ".join(f"{k}={v}" for k, v in r.items()) for r in rows]
    return {"n": args.n, "upto": args.upto, "verify": args.verify}, {"counts": rows}, lines


def cmd_classify(args):
    cfg = SamplerConfig(args.n, args.seed, args.scheme, args.half_width)
    res = classify(cfg, args.samples, workers=args.workers).validate()
    payload = res.to_dict()
    flat = flat_count(args.n)
    payload["flat_count"] = flat
    payload["ratio_lower_bound"] = res.distinct / flat
    lines = [
        f"n={res.n} scheme={res.scheme} seed={res.seed} samples={res.samples_attempted} strict={res.samples_strict}",
        f"distinct {res.distinct} of {flat} admissible (ratio >= {res.distinct / flat:.6f})",
    ]
    lines += [f"  {k} {c}" for k, c in res.counts.items()]
    if args.n == 4 and any(w in res.counts for w in FORBIDDEN_4):
        raise ContractFailure("a non-realizable degree-4 word was observed")
    if args.n == 5 and res.distinct > CEILING_5:
        raise ContractFailure(f"{res.distinct} distinct degree-5 words exceed {CEILING_5}")
    params = {"n": args.n, "samples": args.samples, "seed": args.seed, "scheme": args.scheme, "half_width": args.half_width}
    return params, payload, lines


def _tuple(args):
    return Tuple3Arrangement(*args.tuple)


def cmd_check3(args):
    t = _tuple(args)
    failed = {v.line: v for v in check_inequalities(t)}
    exprs = inequality_terms(t)
    report = []
    for line in ("line 1", "line 2", "line 3", "line 4"):
        entry = {"line": line, "pass": line not in failed}
        if line in exprs:
            entry["lhs"], entry["rhs"] = (v if math.isfinite(v) else None for v in exprs[line])
        report.append(entry)
    case = check_case_inequalities(t)
    payload = {
        "tuple": dict(zip(TUPLE_FIELDS, t.as_tuple())),
        "admissible": not failed,
        "lines": report,
        "case": case.case,
        "case_violations": [v.line for v in case.violations],
    }
    lines = []
    for e in report:
        detail = f" ({e['lhs']:.6g} < {_fmt(e['rhs'])})" if "lhs" in e else ""
        lines.append(f"{e['line']}: {'pass' if e['pass'] else 'FAIL'}{detail}")
    lines.append(f"case {case.case}: " + ("pass" if not case.violations else "FAIL " + ", ".join(payload["case_violations"])))
    return {"tuple": list(t.as_tuple())}, payload, lines


def _fmt(x):
    return "undefined" if x is None else f"{x:.6g}"


def cmd_construct3(args):
    t = _tuple(args)
    s = construct_3nice(t)
    rec = recovered_arrangement(s)
    dev = max(abs(a - b) for a, b in zip(rec.as_tuple(), t.as_tuple())) / t.span
    outputs = []
    if args.spline_out:
        with open(args.spline_out, "w") as fh:
            json.dump(s.to_dict(), fh, indent=2)
            fh.write("\n")
        outputs.append(args.spline_out)
    if args.curve_out:
        lo, hi = s.domain
        xs = np.linspace(lo, hi, args.samples)
        cols = [xs, evaluate(s, xs, 0), evaluate(s, xs, 1), evaluate(s, xs, 2)]
        with open(args.curve_out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "f", "df", "d2f"])
            for row in zip(*cols):
                w.writerow([repr(float(v)) for v in row])
        outputs.append(args.curve_out)
    payload = {
        "tuple": dict(zip(TUPLE_FIELDS, t.as_tuple())),
        "recovered": dict(zip(TUPLE_FIELDS, rec.as_tuple())),
        "max_relative_deviation": dev,
        "fillet_radius": s.fillet_radius,
        "pieces": int(s.coeffs.shape[0]),
    }
    lines = ["recovered " + " ".join(f"{k}={v:.12g}" for k, v in payload["recovered"].items()), f"max deviation {dev:.3e}"]
    if not dev <= 1e-6:
        raise ContractFailure(f"recovered arrangement deviates by {dev:.3e}")
    params = {"tuple": list(t.as_tuple()), "samples": args.samples}
    args._outputs = outputs
    return params, payload, lines


def cmd_anderson(args):
    domain = ((args.u_min, args.u_max), (args.v_min, args.v_max))
    if args.grid is not None:
        rep = anderson_scan(args.grid, domain)
        params = {"mode": "grid", "grid": args.grid}
    else:
        rep = anderson_random(args.random, args.seed, domain)
        params = {"mode": "random", "samples": args.random, "seed": args.seed}
    params["domain"] = [list(domain[0]), list(domain[1])]
    payload = {
        "points": rep.points,
        "real_rooted": rep.real_rooted,
        "hypotheses_hold": rep.hypotheses,
        "counterexamples": rep.counterexamples,
    }
    lines = [
        f"points {rep.points}, real-rooted {rep.real_rooted}, hypotheses hold {rep.hypotheses}",
        f"counterexamples {rep.counterexamples}",
    ]
    if rep.counterexamples:
        raise ContractFailure(f"{rep.counterexamples} counterexamples found")
    return params, payload, lines


def cmd_trig(args):
    if not (1 <= args.n <= 3 and 1 <= args.k <= 3):
        raise SizeGuardError("trig supports 1 <= n <= 3 and 1 <= k <= 3")
    copies = 2 * args.n
    counts = {}
    for i in range(args.samples):
        p = real_rooted_trig_from_zeros(sample_zero_set(args.n, args.seed, i))
        w = str(periodic_arrangement(p, args.k))
        counts[w] = counts.get(w, 0) + 1
    counts = dict(sorted(counts.items()))
    try:
        universe = {str(w) for w in enumerate_periodic(copies, args.k)}
    except SizeGuardError:
        universe = None
    outside = [w for w in counts if not is_possible_periodic(w, copies, args.k) or (universe is not None and w not in universe)]
    payload = {
        "n": args.n,
        "k": args.k,
        "copies": copies,
        "samples": args.samples,
        "observed": counts,
        "distinct": len(counts),
        "universe_size": None if universe is None else len(universe),
    }
    lines = [f"{w} {c}" for w, c in counts.items()]
    size = "unknown" if universe is None else str(len(universe))
    lines.append(f"distinct {len(counts)} of {size} possible periodic words")
    if outside:
        raise ContractFailure("observed words outside the possible periodic set: " + ", ".join(outside))
    return {"n": args.n, "k": args.k, "samples": args.samples, "seed": args.seed}, payload, lines


# ------------------------------------------------------------------ parser


def _density(text):
    val = int(text)
    if val < 2:
        raise argparse.ArgumentTypeError("grid density must be at least 2")
    return val


def _positive(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return val


def _seed(text):
    val = int(text, 0)
    if not 0 <= val < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return val


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    common.add_argument("--out", metavar="PATH", help="write the result document (JSON) here")
    common.add_argument("--workers", type=_positive, default=1, help="worker processes (classify only)")

    parser = argparse.ArgumentParser(prog="rolle", description="Zero arrangements of functions and their derivatives.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list admissible words of degree n")
    p.add_argument("--n", type=_positive, required=True, help="degree")

    p = sub.add_parser("count", parents=[common], help="closed-form number of admissible words")
    p.add_argument("--n", type=_positive, required=True, help="degree")
    p.add_argument("--upto", action="store_true", help="report every degree from 1 to n")
    p.add_argument("--verify", action="store_true", help="cross-check by enumeration")

    p = sub.add_parser("classify", parents=[common], help="sample polynomials and tally their words")
    p.add_argument("--n", type=_positive, required=True, help="degree")
    p.add_argument("--samples", type=_positive, required=True, help="sampling budget")
    p.add_argument("--seed", type=_seed, required=True, help="64-bit RNG seed")
    p.add_argument("--scheme", choices=SCHEMES, default="gap-exponential", help="root sampler")
    p.add_argument("--half-width", type=float, default=5.0, help="roots lie in [-w, w]")

    for name, text in (("check3", "check the admissibility system"), ("construct3", "build a function with this arrangement")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("tuple", type=float, nargs=6, metavar="V", help="x1 x2 x3 y1 y2 z1")
    p.add_argument("--spline-out", metavar="PATH", help="write spline pieces (JSON)")
    p.add_argument("--curve-out", metavar="PATH", help="write x,f,df,d2f table (CSV)")
    p.add_argument("--samples", type=_density, default=1001, help="rows in the curve table")

    p = sub.add_parser("anderson", parents=[common], help="audit the degree-4 normal-form theorem")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--grid", type=_density, metavar="DENSITY", help="audit a DENSITY x DENSITY grid")
    mode.add_argument("--random", type=_positive, metavar="SAMPLES", help="audit random (u, v) points")
    p.add_argument("--seed", type=_seed, help="required with --random")
    p.add_argument("--u-min", type=float, default=-0.5)
    p.add_argument("--u-max", type=float, default=0.5)
    p.add_argument("--v-min", type=float, default=-0.5)
    p.add_argument("--v-max", type=float, default=0.5)

    p = sub.add_parser("trig", parents=[common], help="circular words of random trigonometric polynomials")
    p.add_argument("--n", type=_positive, required=True, help="degree")
    p.add_argument("--k", type=_positive, required=True, help="derivative depth")
    p.add_argument("--samples", type=_positive, required=True, help="number of polynomials")
    p.add_argument("--seed", type=_seed, required=True, help="64-bit RNG seed")
    return parser


COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "classify": cmd_classify,
    "check3": cmd_check3,
    "construct3": cmd_construct3,
    "anderson": cmd_anderson,
    "trig": cmd_trig,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "anderson" and args.random is not None and args.seed is None:
        parser.error("--random requires --seed")
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    args._outputs = []
    try:
        params, payload, lines = COMMANDS[args.command](args)
    except ContractFailure as exc:
        print(f"rolle: contract failure: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        # InvalidInput, SizeGuardError and InadmissibleTuple are ValueErrors
        print(f"rolle: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RolleError, OSError) as exc:
        print(f"rolle: {exc}", file=sys.stderr)
        return EXIT_CONTRACT

    outputs = list(args._outputs)
    if args.out:
        outputs.append(args.out)
    doc = {"manifest": _manifest(args, params, started, outputs), "payload": payload}
    try:
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        print(f"rolle: cannot write result: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

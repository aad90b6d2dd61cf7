"""Command-line front end.

Exit status: 0 on success or agreement, 1 when a verification finds a
divergence, 2 on usage, parse or size-bound errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from .completion import NotAdjacent, complete_sequence
from .estimator import ALGORITHMS, solve
from .gk import GKResult, SingularValue
from .instance import GENERATOR_ID, InstanceSpec, ParseError, generate, normalize, parse, serialize
from .maxplus import (
    DEFAULT_BRUTE_FORCE_BOUND,
    NEG_INF,
    POS_INF,
    SizeBound,
    TermClass,
    fmt,
    format_polynomial,
    roots,
    to_ext,
)
from .ssp import solve_sequence
from .validation import matching_weight

SCHEMA = 1


class UsageError(Exception):
    pass


# -- instances ---------------------------------------------------------

def load_instance(path: str, force_min: bool = False) -> InstanceSpec:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    spec = parse(text)
    if force_min and spec.objective != "min":
        # absent edges keep their meaning under the new objective
        entries = tuple(tuple(POS_INF if v == NEG_INF else v for v in r) for r in spec.entries)
        spec = InstanceSpec(spec.rows, spec.cols, "min", entries)
    return spec


# -- reports -----------------------------------------------------------

def build_report(spec: InstanceSpec, algorithm: str, source: str, *, bound: int, trace: bool = False) -> dict:
    """Solve ``spec`` and collect everything the output formats show."""
    W, transform = normalize(spec)
    seq, gk, timings = solve(W, algorithm, brute_force_bound=bound, trace=trace)
    n = seq.n
    poly = seq.polynomial()
    if gk is not None:
        singular = [(sv.value, sv.multiplicity) for sv in gk.singular_values]
    else:
        singular = roots(poly)[::-1]
    matchings = {}
    for k, m in enumerate(seq.matchings):
        if k and m is not None:
            matchings[k] = sorted(transform.matching(m))
    return {
        "schema": SCHEMA,
        "instance": {"source": source, "objective": spec.objective, "rows": spec.rows, "cols": spec.cols, "n": n},
        "algorithm": seq.source,
        "omegas": [transform.weight(w) for w in seq.omegas],
        "matchings": matchings,
        "polynomial": format_polynomial(poly),
        "singular_values": singular,
        "term_classes": [str(seq.term_class[n - k]) for k in range(n + 1)],
        "reported": gk.reported if gk is not None else None,
        "timings": timings,
        "trace": gk.trace if gk is not None else [],
    }


def report_to_json(rep: dict) -> dict:
    out = dict(rep)
    out.pop("trace")
    out["omegas"] = [fmt(w) for w in rep["omegas"]]
    out["matchings"] = {str(k): [[i + 1, j + 1] for i, j in m] for k, m in rep["matchings"].items()}
    out["singular_values"] = [{"value": fmt(v), "multiplicity": d} for v, d in rep["singular_values"]]
    return out


def _pairs(m) -> str:
    return " ".join(f"({i + 1},{j + 1})" for i, j in m)


def report_to_text(rep: dict) -> str:
    inst = rep["instance"]
    lines = [
        f"instance: {inst['source']} ({inst['objective']}, {inst['rows']}x{inst['cols']})",
        f"algorithm: {rep['algorithm']}",
        "omegas (k=0..n): " + " ".join(fmt(w) for w in rep["omegas"]),
        f"polynomial: {rep['polynomial']}",
        "singular values: " + ", ".join(f"{fmt(v)} x{d}" for v, d in rep["singular_values"]),
        "term classes (k=0..n): " + " ".join(rep["term_classes"]),
    ]
    if rep["reported"] is not None:
        lines.append("reported: " + " ".join(str(k) for k in rep["reported"]))
    lines.append("matchings:")
    for k, m in rep["matchings"].items():
        lines.append(f"  {k}: {_pairs(m)}")
    for phase, secs in rep["timings"].items():
        lines.append(f"time {phase}: {secs:.6f} s")
    return "\n".join(lines)


def emit(obj, args, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _write_trace(args, rep) -> None:
    if args.trace:
        Path(args.trace).write_text("".join(line + "\n" for line in rep["trace"]))


def _check_trace(args, algorithm: str, n: int) -> None:
    if args.trace:
        runs_gk = algorithm in ("gk", "gk-fill") or (algorithm == "auto" and n > args.bound)
        if not runs_gk:
            raise UsageError("--trace needs a parametric pipeline (--algo gk or gk-fill)")


# -- subcommands -------------------------------------------------------

def cmd_solve(args) -> int:
    spec = load_instance(args.file, args.min)
    _check_trace(args, args.algo, max(spec.rows, spec.cols))
    rep = build_report(spec, args.algo, args.file, bound=args.bound, trace=bool(args.trace))
    _write_trace(args, rep)
    emit(report_to_json(rep), args, report_to_text(rep))
    return 0


def cmd_poly(args) -> int:
    spec = load_instance(args.file, args.min)
    _check_trace(args, args.algo, max(spec.rows, spec.cols))
    rep = build_report(spec, args.algo, args.file, bound=args.bound, trace=bool(args.trace))
    _write_trace(args, rep)
    data = {
        "schema": SCHEMA,
        "polynomial": rep["polynomial"],
        "singular_values": report_to_json(rep)["singular_values"],
        "term_classes": rep["term_classes"],
    }
    text = "\n".join([
        f"polynomial: {rep['polynomial']}",
        "roots: " + ", ".join(f"{fmt(v)} x{d}" for v, d in rep["singular_values"]),
        "term classes (k=0..n): " + " ".join(rep["term_classes"]),
    ])
    emit(data, args, text)
    return 0


def _compare(W, results: dict):
    """First divergence among solver outputs, or ``None``.

    ``results`` maps a solver name to ``(omegas, matchings)``; a matching is
    checked against its own ``omega`` as well.
    """
    names = list(results)
    ref_name = names[0]
    ref = results[ref_name][0]
    n = len(ref) - 1
    for k in range(n + 1):
        vals = {name: results[name][0][k] for name in names}
        if len(set(vals.values())) > 1:
            return k, vals
        for name in names:
            m = results[name][1][k] if results[name][1] is not None else None
            if m is None:
                continue
            if len(m) != k or matching_weight(W, m) != vals[name]:
                return k, {name: f"invalid matching for omega={fmt(vals[name])}"}
    return None


def _run_all(W, algos, bound):
    out = {}
    for a in algos:
        seq, _, _ = solve(W, a, brute_force_bound=bound)
        out[a] = (seq.omegas, seq.matchings)
    return out


def _divergence_text(label, k, vals) -> str:
    parts = " ".join(f"{name}={v if isinstance(v, str) else fmt(v)}" for name, v in vals.items())
    return f"{label}: divergence at k={k}: {parts}"


def _default_algos(n, bound):
    return (["brute"] if n <= bound else []) + ["ssp", "gk-fill"]


def cmd_verify(args) -> int:
    algos = args.algos.split(",") if args.algos else None
    for a in algos or []:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    failures = []
    checked = 0
    if args.file is not None:
        spec = load_instance(args.file, args.min)
        W, transform = normalize(spec)
        use = algos or _default_algos(len(W), args.bound)
        if any(a == "brute" for a in use) and len(W) > args.bound:
            raise SizeBound(f"n={len(W)} exceeds the brute-force bound {args.bound}")
        results = _run_all(W, use, args.bound)
        if args.against:
            saved = json.loads(Path(args.against).read_text())
            omegas = [to_ext(v) for v in saved["omegas"]]
            # saved reports are in the original objective
            if spec.objective == "min":
                omegas = [NEG_INF if v == POS_INF else to_ext(-v) for v in omegas]
            mats = [None] * len(omegas)
            for k, pairs in saved.get("matchings", {}).items():
                mats[int(k)] = frozenset((i - 1, j - 1) for i, j in pairs)
            if len(omegas) != len(W) + 1:
                failures.append(f"{args.against}: expected {len(W) + 1} omegas, found {len(omegas)}")
            else:
                results = {"report": (omegas, mats), **results}
        if not failures and len(results) < 2:
            raise UsageError("verification needs at least two solvers or a saved report")
        if not failures:
            diff = _compare(W, results)
            if diff is not None:
                failures.append(_divergence_text(args.file, *diff))
        checked += 1
    if args.random:
        use = algos or _default_algos(args.n, args.bound)
        if len(use) < 2:
            raise UsageError("verification needs at least two solvers")
        for t in range(args.random):
            seed = args.seed + t
            W = generate(args.n, args.lo, args.hi, args.density, seed)
            diff = _compare(W, _run_all(W, use, args.bound))
            if diff is not None:
                failures.append(_divergence_text(f"seed {seed}", *diff))
                break
            checked += 1
    if args.file is None and not args.random:
        raise UsageError("give an instance file or --random COUNT")
    ok = not failures
    data = {"schema": SCHEMA, "ok": ok, "checked": checked, "failures": failures}
    text = "\n".join(failures + [f"{'agree' if ok else 'FAIL'}: {checked} instance(s) checked"])
    emit(data, args, text)
    return 0 if ok else 1


def single_gap_result(W, perfect=None) -> GKResult:
    """Parametric-style result with only the top cardinality reported.

    The anchor is ``perfect`` when given, else the largest optimal matching
    from the successive path solver, so completion has to fill one gap from
    the empty matching.  This is only a valid input when every term in
    between is semi-essential, as for constant matrices.
    """
    n = len(W)
    if perfect is None:
        seq = solve_sequence(W)
        k = max(i for i, w in enumerate(seq.omegas) if w != NEG_INF)
        if k == 0:
            return GKResult(n, {}, [SingularValue(NEG_INF, n)])
        perfect = seq.matchings[k]
    perfect = frozenset(perfect)
    return GKResult(n, {len(perfect): (matching_weight(W, perfect), perfect)}, [])


def bench_matrix(n, args):
    if args.zero:
        return tuple(tuple(0 for _ in range(n)) for _ in range(n))
    lo, hi = args.range
    return generate(n, lo, hi, args.density, args.seed + n)


def _slope(xs, ys):
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if y and y > 0]
    if len(pts) < 2:
        return None
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    return sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx


def cmd_bench(args) -> int:
    phases = args.phases.split(",")
    for p in phases:
        if p not in ("ssp", "gk", "fill", "gap"):
            raise UsageError(f"unknown phase {p!r}; choose from ssp, gk, fill, gap")
    rows = []
    for n in args.sizes:
        if n < 1:
            raise UsageError("sizes must be positive")
        W = bench_matrix(n, args)
        row = {"n": n}
        if "ssp" in phases:
            t = time.perf_counter()
            solve_sequence(W, want_matchings=False)
            row["ssp"] = time.perf_counter() - t
        if "gk" in phases or "fill" in phases:
            seq, gk, timings = solve(W, "gk-fill")
            row["gk"] = timings["gk"]
            row["fill"] = timings["fill_in"]
            row["reported"] = len(gk.reported)
            row["essential"] = sum(1 for c in seq.term_class[:-1] if c == TermClass.ESSENTIAL)
        if "gap" in phases:
            # the identity is an optimal perfect matching of a zero matrix
            anchor = single_gap_result(W, [(i, i) for i in range(n)] if args.zero else None)
            t = time.perf_counter()
            try:
                complete_sequence(W, anchor)
                row["gap"] = time.perf_counter() - t
            except NotAdjacent:
                row["gap"] = None
        rows.append(row)
    cols = [c for c in ("ssp", "gk", "fill", "gap") if any(c in r for r in rows)]
    slopes = {c: _slope([r["n"] for r in rows], [r.get(c) for r in rows]) for c in cols}
    data = {"schema": SCHEMA, "matrix": "zero" if args.zero else f"range {args.range[0]}..{args.range[1]}",
            "rows": rows, "loglog_slopes": slopes}
    counts = ["reported", "essential"] if any("reported" in r for r in rows) else []
    head = ["n"] + [f"{c}_s" for c in cols] + counts
    lines = ["  ".join(f"{h:>10}" for h in head)]
    for r in rows:
        cells = [f"{r['n']:>10}"]
        for c in cols:
            v = r.get(c)
            cells.append(f"{'n/a':>10}" if v is None else f"{v:>10.4f}")
        for c in counts:
            cells.append(f"{r[c]:>10}")
        lines.append("  ".join(cells))
    for c, s in slopes.items():
        if s is not None:
            lines.append(f"log-log slope {c}: {s:.2f}")
    emit(data, args, "\n".join(lines))
    return 0


def cmd_gen(args) -> int:
    W = generate(args.n, args.lo, args.hi, args.density, args.seed)
    objective = "min" if args.min else "max"
    absent = POS_INF if args.min else NEG_INF
    spec = InstanceSpec(args.n, args.n, objective,
                        tuple(tuple(absent if v == NEG_INF else v for v in r) for r in W))
    comments = [f"generator {GENERATOR_ID} seed={args.seed} n={args.n} lo={args.lo} hi={args.hi} density={args.density}"]
    text = serialize(spec, comments)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- argument parsing --------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json"), default=d("text"), help="output format")
    p.add_argument("--seed", type=int, default=d(0), help="base seed for generated instances")
    p.add_argument("--algo", choices=ALGORITHMS, default=d("auto"), help="solver pipeline")
    p.add_argument("--min", action="store_true", default=d(False), help="minimize instead of maximize")
    p.add_argument("--trace", metavar="FILE", default=d(None), help="write the parametric event trace")
    p.add_argument("--bound", type=int, default=d(DEFAULT_BRUTE_FORCE_BOUND), help="largest n for brute force")


def _density(text: str) -> float:
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError("density must lie in [0, 1]")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kassign", description="Exact k-cardinality assignments in max-plus algebra.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    _global_flags(p, suppress=True)
    p.add_argument("file", help="instance file, '-' for stdin")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("poly", help="print the characteristic maxpolynomial, its roots and term classes")
    _global_flags(p, suppress=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="cross-check solvers on a file or on random instances")
    _global_flags(p, suppress=True)
    p.add_argument("file", nargs="?")
    p.add_argument("--algos", help="comma-separated solvers (default: brute when small, ssp, gk-fill)")
    p.add_argument("--against", metavar="REPORT", help="also compare a saved JSON report for FILE")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="number of random instances")
    p.add_argument("-n", type=_positive, default=5)
    p.add_argument("--lo", type=int, default=-5)
    p.add_argument("--hi", type=int, default=5)
    p.add_argument("--density", type=_density, default=0.2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the solver phases over a size series")
    _global_flags(p, suppress=True)
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    p.add_argument("--zero", action="store_true", help="all-zero matrices")
    p.add_argument("--range", type=int, nargs=2, default=[0, 1000], metavar=("LO", "HI"))
    p.add_argument("--density", type=_density, default=0.0)
    p.add_argument("--phases", default="ssp,gk,fill",
                   help="comma list of ssp, gk, fill (completion after gk) and gap "
                        "(completion of the single gap above the empty matching)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a random instance")
    _global_flags(p, suppress=True)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, default=9)
    p.add_argument("--density", type=_density, default=0.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SizeBound, UsageError, ValueError, OSError) as exc:
        print(f"kassign: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

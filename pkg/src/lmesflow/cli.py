"""Command line: solve, verify, gen and bench.

Exit status is 0 on success, 1 when a flow fails verification and 2 on bad
input (unreadable file, malformed DIMACS, invalid option).
"""

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import generators
from .dimacs import DimacsError, flow_vector, parse_dimacs, parse_solution, write_dimacs, write_solution
from .enhanced import enhanced_solve
from .generic import gpr_solve
from .instrumentation import PUSH_CLASSES, report
from .lmes import lmes_solve
from .oracle import FlowNotMaximal, min_cut, verify_flow
from .quantity import is_power_of_two

ALGOS = ("generic", "lmes", "enhanced")
BENCH_HEADER = (
    ["instance", "algo", "k", "value", "phases", "jumps"]
    + [f"pushes_{c}" for c in PUSH_CLASSES]
    + ["pushes_frf", "pulls_frf", "relabels", "contractions", "seconds"]
)


class InputError(Exception):
    pass


def run_solver(net, algo, k=None, audit=False, jumps=True):
    if algo == "generic":
        return gpr_solve(net, audit=audit)
    if algo == "lmes":
        return lmes_solve(net, k, audit=audit)
    if algo == "enhanced":
        return enhanced_solve(net, k, audit=audit, jumps=jumps)
    raise InputError(f"unknown algorithm {algo!r}")


def _check_k(algo, k):
    if k is None:
        return
    if not is_power_of_two(k):
        raise InputError(f"--k must be a power of two, got {k}")
    if algo == "enhanced" and k < 4:
        raise InputError("--k must be at least 4 for the enhanced solver")
    if algo == "lmes" and k < 2:
        raise InputError("--k must be at least 2")


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _used_k(result, algo, k):
    if algo == "generic":
        return None
    if algo == "enhanced":
        return result.params.k
    if k is not None:
        return k
    from .lmes import default_k
    return default_k(result.net.U)


def cmd_solve(args):
    _check_k(args.algo, args.k)
    net = parse_dimacs(_read(args.input))
    result = run_solver(net, args.algo, args.k, args.audit, not args.no_jumps)
    _write(args.output, write_solution(net, result.flow, result.value))
    params = {"algo": args.algo}
    k = _used_k(result, args.algo, args.k)
    if k is not None:
        params["k"] = k
    params["value"] = result.value
    text = report(result.counters, params)
    if args.counters:
        _write(args.counters, text)
    else:
        sys.stderr.write(text)
    if args.audit and result.counters.violations:
        for name, detail in result.counters.violations[:20]:
            sys.stderr.write(f"violation {name}: {detail}\n")
        return 1
    return 0


def cmd_verify(args):
    net = parse_dimacs(_read(args.input))
    value, flows = parse_solution(_read(args.solution))
    x = flow_vector(net, flows)
    rep = verify_flow(net, x)
    status = 0
    for line in rep.lines()[1:]:
        print(line)
        status = 1
    if rep.value != value:
        print(f"declared value {value} but flow delivers {rep.value}")
        status = 1
    if status == 0:
        try:
            S, _, _ = min_cut(net, x)
        except FlowNotMaximal as exc:
            print(f"not maximum: {exc}")
            status = 1
        else:
            print(f"ok value {value} cut {len(S)} nodes")
    return status


def cmd_gen(args):
    if args.kind == "random":
        net = generators.random_network(args.n, args.m, args.U, args.seed)
        desc = f"random n={args.n} m={args.m} U={args.U} seed={args.seed}"
    elif args.kind == "layered":
        net = generators.layered(args.width, args.depth, args.U, args.seed)
        desc = f"layered width={args.width} depth={args.depth} U={args.U} seed={args.seed}"
    else:
        net = generators.pathological(args.k, args.alpha)
        desc = f"pathological k={args.k} alpha={args.alpha}"
    _write(args.output, write_dimacs(net, desc))
    return 0


def _bench_one(job):
    path, algo, k = job
    with open(path) as fh:
        net = parse_dimacs(fh.read())
    t0 = time.perf_counter()
    result = run_solver(net, algo, k)
    secs = time.perf_counter() - t0
    c = result.counters
    row = [os.path.basename(path), algo, _used_k(result, algo, k) or "", result.value, c.phases, c.jumps]
    row += [c.pushes[cls] for cls in PUSH_CLASSES]
    row += [c.frf_pushes, c.frf_pulls, c.relabels, c.contractions, f"{secs:.4f}"]
    return row


def cmd_bench(args):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise InputError(f"unknown algorithm {a!r}")
        _check_k(a, args.k)
    try:
        files = sorted(
            os.path.join(args.corpus, f) for f in os.listdir(args.corpus)
            if f.endswith((".max", ".dimacs", ".txt"))
        )
    except OSError as exc:
        raise InputError(str(exc)) from None
    jobs = [(f, a, args.k) for f in files for a in algos]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(BENCH_HEADER)
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="lmesflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a DIMACS instance")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGOS, default="enhanced")
    p.add_argument("--k", type=int)
    p.add_argument("--audit", action="store_true", help="run invariant audits; exit 1 on any finding")
    p.add_argument("--no-jumps", action="store_true", help="enhanced: always divide delta by k")
    p.add_argument("--counters", help="write the counter report here instead of stderr")
    p.add_argument("-o", "--output", help="solution file (default stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("input")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated instance")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--U", type=int, default=1024)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("layered")
    g.add_argument("--width", type=int, required=True)
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--U", type=int, default=1024)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("pathological")
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--alpha", type=int, required=True)
    for g in gsub.choices.values():
        g.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run algorithms over a corpus, one CSV row per run")
    p.add_argument("--algos", default=",".join(ALGOS))
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV file (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, DimacsError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

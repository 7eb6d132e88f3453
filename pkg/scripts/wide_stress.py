"""Stress the enhanced solver on capacities spread over 4**0 .. 4**30.

Checks values against the oracle and tallies audit findings and the
stranded-node / rescue / jump counters.

    python3 scripts/wide_stress.py [--count 300] [--audit]
"""

import argparse
import collections
import sys
import time

from lmesflow import enhanced_solve, oracle_max_flow, verify_flow
from lmesflow.corpus import wide_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--ks", default="4,8")
    ap.add_argument("--audit", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    bad = errors = 0
    tallies = collections.Counter()
    findings = collections.Counter()
    for seed in range(args.count):
        net = wide_instance(seed)
        _, want = oracle_max_flow(net)
        for k in map(int, args.ks.split(",")):
            for jumps in (True, False):
                try:
                    res = enhanced_solve(net, k, audit=args.audit, jumps=jumps)
                except Exception as exc:  # report and keep going
                    errors += 1
                    print(f"seed {seed} k={k} jumps={jumps}: {type(exc).__name__}: {exc}")
                    continue
                if res.value != want or not verify_flow(net, res.flow).ok:
                    bad += 1
                    print(f"seed {seed} k={k} jumps={jumps}: value {res.value}, want {want}")
                c = res.counters
                tallies["stranded"] += c.frf_stranded
                tallies["rescues"] += c.rescues
                tallies["jumps"] += c.jumps
                tallies["contractions"] += c.contractions
                for v, _ in c.violations:
                    findings[v] += 1
    print(f"{args.count} instances in {time.perf_counter() - t0:.1f}s: {bad} wrong, {errors} errors")
    print(f"counters: {dict(tallies)}")
    if args.audit:
        print(f"audit findings: {dict(findings) or 'none'}")
    return 1 if bad or errors else 0


if __name__ == "__main__":
    sys.exit(main())

"""Run every solver on the 550-instance corpus and compare with the oracle.

    python3 scripts/oracle_equivalence.py [--audit] [--limit N]
"""

import argparse
import collections
import sys
import time

from lmesflow import enhanced_solve, gpr_solve, lmes_solve, min_cut, oracle_max_flow, verify_flow
from lmesflow.corpus import acceptance_corpus

CONFIGS = [("generic", None)] + [("lmes", k) for k in (2, 4, 8)] + [("enhanced", k) for k in (4, 8, 16)]


def solve(net, algo, k, audit):
    if algo == "generic":
        return gpr_solve(net, audit=audit)
    if algo == "lmes":
        return lmes_solve(net, k, audit=audit)
    return enhanced_solve(net, k, audit=audit)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--audit", action="store_true", help="also run invariant audits")
    ap.add_argument("--limit", type=int, help="only the first N instances")
    args = ap.parse_args()

    corpus = acceptance_corpus()[: args.limit]
    t0 = time.perf_counter()
    bad = []
    findings = collections.Counter()
    secs = collections.Counter()
    for name, net in corpus:
        _, expected = oracle_max_flow(net)
        for algo, k in CONFIGS:
            t = time.perf_counter()
            res = solve(net, algo, k, args.audit)
            secs[algo, k] += time.perf_counter() - t
            ok = res.value == expected and verify_flow(net, res.flow).ok
            if ok:
                ok = min_cut(net, res.flow)[2] == expected
            if not ok:
                bad.append((name, algo, k, res.value, expected))
            for v, _ in res.counters.violations:
                findings[v] += 1

    print(f"{len(corpus)} instances x {len(CONFIGS)} configurations in {time.perf_counter() - t0:.1f}s")
    for (algo, k), s in secs.items():
        print(f"  {algo:9} k={k!s:5} {s:7.2f}s")
    print(f"mismatches: {len(bad)}")
    for row in bad[:20]:
        print("  ", *row)
    if args.audit:
        print(f"audit findings: {dict(findings) or 'none'}")
    return 1 if bad or findings else 0


if __name__ == "__main__":
    sys.exit(main())

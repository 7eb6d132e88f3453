"""Phase counts on the pathological family: LMES against the enhanced solver with and without jumps.

    python3 scripts/pathological.py [--k 4] [--alphas 5,10,20,40,80]
"""

import argparse

from lmesflow import enhanced_solve, lmes_solve, pathological


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--alphas", default="5,10,20,40,80")
    args = ap.parse_args()
    k = args.k

    print(f"{'alpha':>6} {'value ok':>8} {'lmes':>6} {'enh':>6} {'enh-nojump':>10} {'jumps':>6}")
    for alpha in map(int, args.alphas.split(",")):
        net = pathological(k, alpha)
        want = k ** alpha + 1
        lm = lmes_solve(net, k)
        en = enhanced_solve(net, k)
        nj = enhanced_solve(net, k, jumps=False)
        ok = lm.value == en.value == nj.value == want
        print(f"{alpha:>6} {str(ok):>8} {lm.counters.phases:>6} {en.counters.phases:>6} "
              f"{nj.counters.phases:>10} {en.counters.jumps:>6}")


if __name__ == "__main__":
    main()

"""Write the acceptance corpus as DIMACS files, for use with ``lmesflow bench``.

    python3 scripts/make_corpus.py OUTDIR
    lmesflow bench --corpus OUTDIR --jobs 4 --out bench.csv
"""

import argparse
import os

from lmesflow import pathological, write_dimacs
from lmesflow.corpus import acceptance_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    nets = acceptance_corpus() + [(f"pathological-{a}", pathological(4, a)) for a in (10, 20, 40)]
    for name, net in nets:
        with open(os.path.join(args.outdir, f"{name}.max"), "w") as fh:
            fh.write(write_dimacs(net, name))
    print(f"wrote {len(nets)} instances to {args.outdir}")


if __name__ == "__main__":
    main()

"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/backends.py [--reps 3] [--csv out.csv]

Prints the median speedup per algorithm and size.  Estimates from the two
backends must agree; a mismatch aborts the run.
"""

import argparse
import sys

from parendist import _kernels, bench

LADDERS = {
    "ptas": ([128, 256, 512], {}),
    "small": ([512, 1024, 2048], {"d": 16}),
    "fold-approx": ([64, 128, 256], {"tau": 64}),
    "exact": ([64, 128, 256], {}),
    "gap": ([64, 128], {"theta": 0.5}),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--csv", help="also write every timing row here")
    ap.add_argument("--algorithms", default=",".join(LADDERS))
    args = ap.parse_args(argv)
    if _kernels.compiled is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    rows = []
    for name in args.algorithms.split(","):
        sizes, params = LADDERS[name]
        got = bench.compare_backends(name, sizes, args.reps, **params)
        est = {}
        for r in got:
            est.setdefault(r["n"], set()).add(r["estimate"])
        if any(len(v) > 1 for v in est.values()):
            print(f"{name}: backends disagree {est}", file=sys.stderr)
            return 2
        for n, s in sorted(bench.speedups(got).items()):
            print(f"{name:12s} n={n:<6d} speedup {s:7.1f}x")
        rows += got
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(bench.to_csv(rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    parendist dyck exact|ptas|small|est|gap FILE
    parendist fold exact|approx FILE
    parendist gen balanced|deep|random|planted --n N
    parendist bench --algorithms ptas,small --sizes 256,512

FILE may be ``-`` for stdin.  Exit status: 0 ok, 2 bad parameters, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import _kernels
from .core import ParseError, ParenString, paren, parse_input, reduce_dyck, reduce_fold, serialize
from .exact import CapExceeded, exact_dyck_cubic, exact_dyck_pivots, exact_fold
from .folding import fold_approx
from .ptas import dyck_ptas
from .small_distance import Exceeds, dyck_small

DEFAULT_SEED = 0

GUARANTEE = {
    "exact": "exact",
    "ptas": "(1+ε)",
    "small": "(3+ε) or >d",
    "est": "constant-factor whp",
    "gap": "constant-factor whp",
    "fold-exact": "exact",
    "fold-approx": "τ-factor",
}


class InputError(Exception):
    pass


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    return p


def _sub_params():
    p = argparse.ArgumentParser(add_help=False)
    for flag in ("--s1", "--s2", "--delta", "--k1", "--k2"):
        p.add_argument(flag, type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="parendist", description="Dyck and folding edit distances.", parents=[common])
    top = parser.add_subparsers(dest="command", required=True)

    dyck = top.add_parser("dyck", help="Dyck edit distance").add_subparsers(dest="algorithm", required=True)
    p = dyck.add_parser("exact", parents=[common])
    p.add_argument("--method", choices=("cubic", "pivots"), default="pivots")
    p.add_argument("file")
    p = dyck.add_parser("ptas", parents=[common])
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("file")
    p = dyck.add_parser("small", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("file")
    p = dyck.add_parser("est", parents=[common, _sub_params()])
    p.add_argument("file")
    p = dyck.add_parser("gap", parents=[common, _sub_params()])
    p.add_argument("--theta", required=True)
    p.add_argument("file")

    fold = top.add_parser("fold", help="folding distance").add_subparsers(dest="algorithm", required=True)
    p = fold.add_parser("exact", parents=[common])
    p.add_argument("file")
    p = fold.add_parser("approx", parents=[common])
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("file")

    p = top.add_parser("gen", parents=[common], help="emit a synthetic instance")
    p.add_argument("kind", choices=("balanced", "deep", "random", "planted"))
    p.add_argument("--n", type=int, required=True, help="length (pairs are n/2)")
    p.add_argument("--types", type=int, default=2)
    p.add_argument("--edits", type=int, default=0)
    p.add_argument("--pairs", default=None, help="display table such as '()[]'")

    p = top.add_parser("bench", parents=[common], help="timing ladder as CSV")
    p.add_argument("--algorithms", default="ptas")
    p.add_argument("--sizes", default="", help="comma separated lengths; empty gives a header only")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--backend", choices=("compiled", "pure"), default=None)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--theta")
    p.add_argument("--s", type=int)
    return parser


def load(path: str) -> tuple:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        return parse_input(data)
    except ParseError:
        # a bare bracket string with no header is read with the default pairs
        text = data.decode("utf-8", errors="replace")
        body = "".join(ln for ln in text.splitlines() if not ln.startswith("#"))
        body = "".join(body.split())
        try:
            x = paren(body)
        except (ValueError, KeyError) as exc:
            raise InputError(f"not a recognised instance: {exc}") from None
        return x.alphabet, x


def _theta(raw) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"theta must be a fraction such as 1/4, got {raw!r}") from None


def _overrides(args) -> dict:
    return {k: getattr(args, k) for k in ("s1", "s2", "delta", "k1", "k2") if getattr(args, k, None) is not None}


def run_algorithm(args) -> dict:
    seed = getattr(args, "seed", DEFAULT_SEED)
    _, x = load(args.file)
    name = args.algorithm if args.command == "dyck" else "fold-" + args.algorithm
    reduced = reduce_fold(x) if args.command == "fold" else reduce_dyck(x)
    params: dict = {}
    report: dict = {"algorithm": name, "n": len(x), "reduced_n": len(reduced)}
    t0 = time.perf_counter()
    if name == "exact":
        params["method"] = args.method
        est = exact_dyck_cubic(x)[0] if args.method == "cubic" else exact_dyck_pivots(x)
    elif name == "ptas":
        params["epsilon"] = args.epsilon
        est = dyck_ptas(x, args.epsilon)
    elif name == "small":
        params.update(d=args.d, epsilon=args.epsilon)
        est = dyck_small(x, args.d, args.epsilon)
    elif name in ("est", "gap"):
        from .subquadratic import default_params, dyck_est, gap_dyck_est

        stats: dict = {}
        if name == "est":
            est = dyck_est(x, seed=seed, stats=stats, **_overrides(args))
            params.update(_overrides(args))
            report["diagnostics"] = _est_diagnostics(stats)
        else:
            p = default_params(max(len(x), 1), _theta(args.theta), seed=seed, **_overrides(args))
            est = gap_dyck_est(x, params=p, stats=stats)
            params.update(p.as_dict())
            report["diagnostics"] = _gap_diagnostics(stats)
    elif name == "fold-exact":
        est = exact_fold(x)
    else:
        params["tau"] = args.tau
        est = fold_approx(x, args.tau)
    elapsed = (time.perf_counter() - t0) * 1000
    if isinstance(est, Exceeds):
        report["estimate"] = None
        report["exceeds"] = est.d
    else:
        report["estimate"] = int(est)
    report.update(guarantee=GUARANTEE[name], params=params, elapsed_ms=round(elapsed, 3), seed=seed,
                  backend=_kernels.active.BACKEND)
    return report


def _gap_diagnostics(st: dict) -> dict:
    keys = ("K", "J", "W_S", "W_L", "padded_n", "cover_rounds")
    return {k: st[k] for k in keys if k in st}


def _est_diagnostics(st: dict) -> dict:
    out = {"path": st.get("path"), "d": st.get("d")}
    if st.get("path") == "gap":
        out["runs"] = [{"params": r["params"], **_gap_diagnostics(r)}
                       for r in st["runs"]]
    return out


def generate(args) -> str:
    from . import testkit
    from .core import Alphabet

    seed = getattr(args, "seed", DEFAULT_SEED)
    if args.n < 0 or args.types < 1 or args.edits < 0:
        raise ValueError("--n, --edits must be non-negative and --types positive")
    half = args.n // 2
    if args.kind == "balanced":
        x = testkit.gen_balanced(half, args.types, seed)
    elif args.kind == "deep":
        x = testkit.gen_deep_balanced(half, args.types, seed)
    elif args.kind == "random":
        x = testkit.random_string(args.n, args.types, seed)
    else:
        x = testkit.planted(half, args.types, args.edits, seed).x
    alphabet = Alphabet(args.types)
    if args.pairs is not None:
        alphabet = Alphabet.from_pairs(args.pairs)
        if alphabet.type_count != args.types:
            raise ValueError("--pairs must list exactly --types pairs")
    x = ParenString(x.symbols, alphabet)
    return serialize(alphabet, x, comment=f"seed={seed}, edits={args.edits}, kind={args.kind}")


def bench_csv(args) -> str:
    from . import bench

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    algos = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    if any(n < 1 for n in sizes) or args.reps < 1:
        raise ValueError("sizes and --reps must be positive")
    extra = {k: getattr(args, k) for k in ("epsilon", "d", "tau", "s") if getattr(args, k) is not None}
    if args.theta is not None:
        extra["theta"] = _theta(args.theta)
    rows = []
    for a in algos:
        if sizes:
            rows += bench.run_ladder(a, sizes, args.reps, getattr(args, "seed", DEFAULT_SEED),
                                     backend_name=args.backend, **extra)
    return bench.to_csv(rows)


def _as_csv(report: dict) -> str:
    flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, dict) else v) for k, v in report.items()}
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
    w.writeheader()
    w.writerow(flat)
    return buf.getvalue()


def run(argv=None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    threads = getattr(args, "threads", 1)
    fmt = getattr(args, "format", None)
    try:
        if threads < 1:
            raise ValueError("--threads must be at least 1")
        if args.command == "gen":
            out.write(generate(args))
        elif args.command == "bench":
            out.write(bench_csv(args))
        else:
            report = run_algorithm(args)
            if fmt == "csv":
                out.write(_as_csv(report))
            else:
                out.write(json.dumps(report, ensure_ascii=False) + "\n")
    except (InputError, ParseError, CapExceeded) as exc:
        print(f"parendist: input error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError) as exc:
        print(f"parendist: parameter error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

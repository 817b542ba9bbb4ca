"""Timing ladders, power-law fits and compiled-vs-pure kernel comparison."""

from __future__ import annotations

import contextlib
import csv
import io
import statistics
import time

import numpy as np

from . import _kernels
from .core import Alphabet, ParenString, reduce_dyck
from .exact import CapExceeded, exact_cap, exact_dyck_pivots, exact_fold
from .folding import FoldIndex, fold_approx, fold_grid
from .ptas import dyck_ptas
from .small_distance import Exceeds, dyck_small
from .testkit import planted, random_string

FIELDS = ["algorithm", "backend", "n", "params", "rep", "elapsed_ms", "estimate", "oracle_value"]


def mountain(n: int, blocks: int = 4) -> ParenString:
    """Blocks of '(' * m + ']' * m: irreducible, with only blocks-1 valleys."""
    m = max(1, n // (2 * blocks))
    one = [1] * m + [-2] * m
    syms = (one * blocks)[:n]
    return ParenString(syms, Alphabet(2))


def fold_instance(n: int, seed: int = 0) -> ParenString:
    return random_string(n, 2, seed)


@contextlib.contextmanager
def backend(name: str | None):
    """Temporarily switch the kernel module ('compiled' or 'pure')."""
    if name is None:
        yield _kernels.active
        return
    mod = {"compiled": _kernels.compiled, "pure": _kernels.pure}[name]
    if mod is None:
        raise RuntimeError(f"backend {name!r} is not available")
    saved = _kernels.active
    _kernels.active = mod
    try:
        yield mod
    finally:
        _kernels.active = saved


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def median_time(fn, reps: int = 3) -> float:
    return statistics.median(timed(fn)[1] for _ in range(reps))


def fit_exponent(xs, ts) -> float:
    """Least-squares slope of log t against log x."""
    xs = np.log(np.asarray(xs, dtype=float))
    ts = np.log(np.asarray(ts, dtype=float))
    return float(np.polyfit(xs, ts, 1)[0])


def _oracle(kind: str, x: ParenString):
    try:
        if kind == "fold":
            return exact_fold(x)
        if len(x) > exact_cap():
            return None
        return exact_dyck_pivots(x)
    except CapExceeded:
        return None


def _case(algorithm: str, n: int, seed: int, params: dict):
    """(instance, callable, oracle kind, params actually used)."""
    if algorithm == "ptas":
        eps = params.get("epsilon", 1.0)
        x = mountain(n)
        return x, lambda: dyck_ptas(x, eps), "dyck", {"epsilon": eps}
    if algorithm == "small":
        d = params.get("d", 8)
        eps = params.get("epsilon", 0.5)
        x = planted(n // 2, 2, params.get("edits", d), seed).x
        return x, lambda: dyck_small(x, min(d, len(x)), eps), "dyck", {"d": d, "epsilon": eps}
    if algorithm == "fold-approx":
        tau = params.get("tau", 100)
        x = fold_instance(n, seed)
        return x, lambda: fold_approx(x, tau), "fold", {"tau": tau}
    if algorithm == "fold-grid":
        s = params.get("s", 8)
        x = fold_instance(n, seed)
        index = FoldIndex(x)
        return x, lambda: fold_grid(index, s), None, {"s": s}
    if algorithm == "exact":
        x = random_string(n, 2, seed)
        return x, lambda: exact_dyck_pivots(x), None, {}
    if algorithm in ("est", "gap"):
        from .subquadratic import dyck_est, gap_dyck_est

        x = planted(n // 2, 2, params.get("edits", 4), seed).x
        if algorithm == "est":
            return x, lambda: dyck_est(x, seed=seed), "dyck", {}
        theta = params.get("theta", 1)
        return x, lambda: gap_dyck_est(x, theta), "dyck", {"theta": str(theta)}
    raise ValueError(f"unknown benchmark algorithm {algorithm!r}")


def run_ladder(algorithm: str, sizes, reps: int = 3, seed: int = 0, backend_name: str | None = None,
               oracle: bool = True, **params) -> list[dict]:
    rows = []
    with backend(backend_name) as mod:
        for n in sizes:
            x, fn, kind, used = _case(algorithm, int(n), seed, params)
            ref = _oracle(kind, x) if (oracle and kind) else None
            for rep in range(reps):
                out, dt = timed(fn)
                est = None if isinstance(out, Exceeds) else int(out)
                rows.append({"algorithm": algorithm, "backend": mod.BACKEND, "n": len(x),
                             "params": ";".join(f"{k}={v}" for k, v in used.items()),
                             "rep": rep, "elapsed_ms": round(dt * 1000, 3),
                             "estimate": est if est is not None else f">{out.d}",
                             "oracle_value": "" if ref is None else ref})
    return rows


def medians(rows: list[dict], key: str = "n") -> tuple[list, list]:
    groups: dict = {}
    for r in rows:
        groups.setdefault(r[key], []).append(r["elapsed_ms"])
    ks = sorted(groups)
    return ks, [statistics.median(groups[k]) for k in ks]


def compare_backends(algorithm: str, sizes, reps: int = 3, seed: int = 0, **params) -> list[dict]:
    """Same ladder on both backends; estimates must match."""
    rows = []
    for name in ("compiled", "pure"):
        rows += run_ladder(algorithm, sizes, reps, seed, backend_name=name, oracle=False, **params)
    return rows


def speedups(rows: list[dict]) -> dict:
    by = {}
    for r in rows:
        by.setdefault((r["n"], r["backend"]), []).append(r["elapsed_ms"])
    out = {}
    for (n, b), ts in by.items():
        if b == "cython" and (n, "python") in by:
            out[n] = statistics.median(by[(n, "python")]) / max(statistics.median(ts), 1e-6)
    return out


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def ptas_scaling(sizes=(256, 512, 1024, 2048, 4096), reps: int = 3) -> float:
    rows = run_ladder("ptas", sizes, reps, oracle=False)
    ns, ts = medians(rows)
    return fit_exponent(ns, ts)


def fold_grid_scaling(n: int = 2048, blocks=(4, 8, 16, 32, 64), reps: int = 3, seed: int = 0) -> tuple[float, list]:
    """Exponent of grid-DP time against s on one prebuilt index (expect about -3)."""
    x = fold_instance(n, seed)
    index = FoldIndex(x)
    ts = [median_time(lambda s=s: fold_grid(index, s), reps) for s in blocks]
    return fit_exponent(blocks, ts), ts


def small_scaling(n: int = 4096, ds=(4, 8, 16, 32, 64), reps: int = 3) -> tuple[float, list]:
    """Exponent of dyck_small time against d at fixed n.

    The mountain family has dyck far above every d, so each run explores its whole band.
    """
    y = reduce_dyck(mountain(n))
    ts = [median_time(lambda d=d: dyck_small(y, d, 0.5), reps) for d in ds]
    return fit_exponent(ds, ts), ts


__all__ = ["mountain", "run_ladder", "compare_backends", "fit_exponent", "to_csv", "medians",
           "ptas_scaling", "fold_grid_scaling", "small_scaling", "speedups"]

"""Exact reference algorithms for dyck, GD and folding distances."""

from __future__ import annotations

import os

import numpy as np

from . import _kernels
from .core import Alignment, ParenString, pivot_candidates, reduce_dyck

DEFAULT_CAP = 4096


class CapExceeded(ValueError):
    """Input longer than the configured exact-algorithm cap."""


def exact_cap() -> int:
    raw = os.environ.get("PARENDIST_EXACT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"PARENDIST_EXACT_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError("PARENDIST_EXACT_CAP must be non-negative")
    return cap


def _check_cap(n: int, cap: int | None) -> None:
    cap = exact_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"input length {n} exceeds exact cap {cap}")


def as_string(x) -> ParenString:
    if isinstance(x, ParenString):
        return x
    if isinstance(x, str):
        return ParenString.from_text(x)
    return ParenString(x)


def dyck_table(x, cap: int | None = None) -> np.ndarray:
    """Full table D with D[i, j] = dyck(x(i..j])."""
    x = as_string(x)
    _check_cap(len(x), cap)
    return _kernels.active.cubic_table(x.symbols)


def _backtrack(x: ParenString, D: np.ndarray) -> Alignment:
    pairs = []
    stack = [(0, len(x))]
    while stack:
        i, j = stack.pop()
        if j - i <= 1:
            continue
        target = D[i, j]
        for k in range(i + 1, j):
            if D[i, k] + D[k, j] == target:
                stack.append((i, k))
                stack.append((k, j))
                break
        else:
            # only the outer match can explain the value
            pairs.append((i + 1, j))
            stack.append((i + 1, j - 1))
    return Alignment(tuple(pairs))


def exact_dyck_cubic(x, cap: int | None = None) -> tuple[int, Alignment]:
    """Classic cubic interval DP; returns the value and an optimal alignment."""
    x = as_string(x)
    D = dyck_table(x, cap)
    return int(D[0, len(x)]), _backtrack(x, D)


def exact_dyck_pivots(x) -> int:
    """dyck(x) via the valley-pivot recursion on the reduced string."""
    y = reduce_dyck(as_string(x))
    if len(y) == 0:
        return 0
    k = np.array(pivot_candidates(y), dtype=np.int32)
    D = _kernels.active.pivot_table(y.symbols, y.heights(), k, 0, False)
    return int(D[0, len(y)])


exact_dyck = exact_dyck_pivots


def gd_table(x, cap: int | None = None) -> np.ndarray:
    x = as_string(x)
    _check_cap(len(x), cap)
    k = np.array(pivot_candidates(x), dtype=np.int32)
    return _kernels.active.pivot_table(x.symbols, x.heights(), k, 0, True)


def exact_gd(x, cap: int | None = None) -> int:
    """GD(0, n): the height-constrained recursion with all pivots."""
    x = as_string(x)
    return int(gd_table(x, cap)[0, len(x)])


def exact_fold_rho(x, rho: int, cap: int | None = None) -> int:
    if rho < 0:
        raise ValueError("rho must be non-negative")
    x = as_string(x)
    _check_cap(len(x), cap)
    return int(_kernels.active.fold_rho_table(x.symbols, int(rho)))


def exact_fold(x, cap: int | None = None) -> int:
    return exact_fold_rho(x, 0, cap)


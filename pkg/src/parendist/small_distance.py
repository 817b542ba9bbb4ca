"""(3+eps)-approximation for small distances via the height-constrained DP."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import pivot_candidates, reduce_dyck
from .exact import as_string
from .ptas import PtasParams, ptas_tau


class RmqIndex:
    """Sparse table over h[0..n]; queries give the minimum and its smallest argmin."""

    def __init__(self, h):
        h = np.asarray(h, dtype=np.int32)
        self.h = h
        n = len(h)
        levels = max(1, n.bit_length())
        sp = np.zeros((levels, max(n, 1)), dtype=np.int32)
        if n:
            sp[0] = np.arange(n)
        for k in range(1, levels):
            half = 1 << (k - 1)
            width = n - (1 << k) + 1
            if width <= 0:
                break
            a = sp[k - 1, :width]
            b = sp[k - 1, half:half + width]
            sp[k, :width] = np.where(h[a] <= h[b], a, b)
        self.table = sp
        lg = np.zeros(n + 1, dtype=np.int32)
        for v in range(2, n + 1):
            lg[v] = lg[v >> 1] + 1
        self.log = lg

    def argmin(self, i: int, j: int) -> int:
        if not 0 <= i <= j < len(self.h):
            raise IndexError(f"bad range [{i}..{j}]")
        k = self.log[j - i + 1]
        a = int(self.table[k, i])
        b = int(self.table[k, j - (1 << k) + 1])
        return a if self.h[a] <= self.h[b] else b

    def query(self, i: int, j: int) -> tuple[int, int]:
        k = self.argmin(i, j)
        return int(self.h[k]), k


@dataclass(frozen=True)
class AgdRun:
    value: float
    states: int
    hard_calls: int
    tau: int
    d: int


@dataclass(frozen=True)
class Exceeds:
    """Report that dyck(x) is larger than the threshold ``d``."""

    d: int

    def __str__(self):
        return f">{self.d}"


def agd_run(x, d: int, tau: int) -> AgdRun:
    x = as_string(x)
    if d < 1:
        raise ValueError("d must be at least 1")
    PtasParams(tau)
    n = len(x)
    if n <= 1:
        return AgdRun(n, n + 1, 0, tau, d)
    h = x.heights()
    rmq = RmqIndex(h)
    k = np.array(pivot_candidates(x), dtype=np.int32)
    v, states, hard = _kernels.active.agd(x.symbols, h, k, int(tau), int(d), rmq.table, rmq.log)
    value = math.inf if v >= 2 * n + 2 else int(v)
    return AgdRun(value, states, hard, tau, d)


def agd_root(x, d: int, tau: int) -> float:
    """BD(0, n); ``math.inf`` when a deep valley cuts every alignment."""
    return agd_run(x, d, tau).value


def dyck_small(x, d: int, eps: float, stats: dict | None = None):
    """Either an estimate v with dyck <= v <= (3+eps)dyck, or ``Exceeds(d)``."""
    x = as_string(x)
    n = len(x)
    if not (0 < eps < 1):
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    if not (1 <= d <= max(n, 1)):
        raise ValueError(f"d must lie in [1..n], got {d}")
    return _dyck_small(x, d, eps, stats)


def _dyck_small(x, d: int, eps: float, stats: dict | None = None):
    # unchecked variant; also used with eps = 1
    y = reduce_dyck(x)
    if len(y) == 0:
        return 0
    e3 = eps / 3
    tau = ptas_tau(len(pivot_candidates(y)), e3)
    run = agd_run(y, 3 * d, tau)
    if stats is not None:
        stats.update(states=run.states, hard_calls=run.hard_calls, tau=tau, reduced_n=len(y))
    # When dyck <= d the run stays within 3d + (eps/3)d, so anything above it certifies dyck > d.
    if run.value == math.inf or 3 * run.value > (9 + eps) * d:
        return Exceeds(d)
    return int(run.value)

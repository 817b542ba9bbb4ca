"""Quadratic-time (1+eps)-approximation of dyck(x) with sparsified pivots."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import pivot_candidates, reduce_dyck
from .exact import as_string


def nu(r: int) -> float:
    """2-adic valuation, with nu(0) = inf."""
    if r == 0:
        return math.inf
    return (r & -r).bit_length() - 1


@dataclass(frozen=True)
class PtasParams:
    tau: int

    def __post_init__(self):
        if self.tau < 2:
            raise ValueError(f"tau must be at least 2, got {self.tau}")

    def tau_ij(self, i: int, j: int) -> float:
        return self.tau * 2 ** min(nu(i), nu(j))


def ptas_tau(k_size: int, eps: float) -> int:
    """tau = ceil(48/eps * log2|K|), clamped to at least 2."""
    if k_size <= 1:
        return 2
    return max(2, math.ceil(48.0 / eps * math.log2(k_size)))


def ad_table(x, tau: int) -> np.ndarray:
    x = as_string(x)
    PtasParams(tau)
    k = np.array(pivot_candidates(x), dtype=np.int32)
    return _kernels.active.pivot_table(x.symbols, x.heights(), k, int(tau), False)


def ad_root(x, tau: int) -> int:
    """AD(0, n).  The caller is expected to pass a reduced string."""
    x = as_string(x)
    if len(x) <= 1:
        PtasParams(tau)
        return len(x)
    return int(ad_table(x, tau)[0, len(x)])


def _check_eps(eps: float) -> None:
    if not (0 < eps <= 1):
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")


def dyck_ptas(x, eps: float) -> int:
    _check_eps(eps)
    y = reduce_dyck(as_string(x))
    if len(y) == 0:
        return 0
    tau = ptas_tau(len(pivot_candidates(y)), eps)
    return ad_root(y, tau)

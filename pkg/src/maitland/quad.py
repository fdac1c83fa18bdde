"""Tensor Gauss-Jacobi quadrature for the Edward-type kernel on the unit square.

With u = 1 - x and v = 1 - y the kernel

    y^lam (1-x)^(lam-1) (1-y)^(mu-1) (1-xy)^(1-lam-mu)

becomes u^(lam-1) v^(mu-1) (1-v)^lam (u+v-uv)^(1-lam-mu), which is homogeneous of
degree -1 at the corner u = v = 0. Splitting along u = v and scaling the short
side (v = u t below the diagonal, u = v s above it) cancels that corner exactly:

    below:  t^(mu-1) (1-ut)^lam (1+t-ut)^(1-lam-mu)      du dt
    above:  s^(lam-1) w^lam (1+sw)^(1-lam-mu)            ds dw,  w = 1 - v

The remaining power weights are absorbed by Jacobi rules, leaving smooth
integrands apart from the mild factor (1-ut)^lam at one corner.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError
from .series import MasterParams, master_series_array

MIN_NODES = 16
MAX_NODES = 256
RULE_MAX_NODES = 512
SHIFT_MAX = 16


@dataclass(frozen=True)
class JacobiRule:
    """Gauss rule for the weight u^exponent on [0, 1]."""

    n: int
    exponent: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)


@lru_cache(maxsize=256)
def jacobi_rule(n: int, exponent: float) -> JacobiRule:
    """Golub-Welsch: eigen-decomposition of the shifted Jacobi matrix."""
    if int(n) != n or not 1 <= n <= RULE_MAX_NODES:
        raise DomainError(f"jacobi_rule needs 1 <= n <= {RULE_MAX_NODES}, got {n!r}")
    if not exponent > -1:
        raise DomainError(f"jacobi_rule needs exponent > -1, got {exponent!r}")
    n = int(n)
    b = float(exponent)
    # monic recurrence for (1+x)^b on [-1, 1], then mapped by u = (1 + x) / 2
    k = np.arange(n, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = b * b / ((2 * k + b) * (2 * k + b + 2))
    diag[0] = b / (b + 2)
    k = np.arange(1, n, dtype=float)
    off2 = 4 * k**2 * (k + b) ** 2 / ((2 * k + b) ** 2 * (2 * k + b + 1) * (2 * k + b - 1))
    nodes, vecs = eigh_tridiagonal((1 + diag) / 2, np.sqrt(off2) / 2)
    weights = vecs[0] ** 2 / (b + 1)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return JacobiRule(n, b, nodes, weights)


@dataclass(frozen=True)
class QuadResult:
    value: float
    nodes_per_axis: int
    error_estimate: float
    converged: bool
    # |Q_2n - Q_n| for every doubling performed, oldest first
    estimates: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": "QuadResult",
            "value": self.value,
            "nodes_per_axis": self.nodes_per_axis,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
        }


def _tensor(ra: JacobiRule, rb: JacobiRule) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b = np.meshgrid(ra.nodes, rb.nodes, indexing="ij")
    return a.ravel(), b.ravel(), np.outer(ra.weights, rb.weights).ravel()


@lru_cache(maxsize=128)
def _edward_nodes(lam: float, mu: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Kernel-times-weight values and the argument y(1-x)(1-y)/(1-xy)^2 at every node."""
    u, t, w1 = _tensor(jacobi_rule(n, 0.0), jacobi_rule(n, mu - 1))
    d1 = 1 + t - u * t
    k1 = w1 * (1 - u * t) ** lam * d1 ** (1 - lam - mu)
    x1 = (1 - u * t) * t / d1**2

    s, w, w2 = _tensor(jacobi_rule(n, lam - 1), jacobi_rule(n, lam))
    d2 = 1 + s * w
    k2 = w2 * d2 ** (1 - lam - mu)
    x2 = s * w / d2**2

    kernel = np.concatenate([k1, k2])
    arg = np.concatenate([x1, x2])
    # c t / (c + t)^2 peaks at exactly 1/4 when c = t; rounding may overshoot by an ulp
    assert np.all((arg >= 0) & (arg <= 0.25 * (1 + 4e-16))), "kernel argument left [0, 1/4]"
    arg = np.minimum(arg, 0.25)
    kernel.setflags(write=False)
    arg.setflags(write=False)
    return kernel, arg


def _integrate(
    lam: float,
    mu: float,
    tol: float,
    func: Callable[[np.ndarray], np.ndarray] | None,
    max_nodes: int,
) -> QuadResult:
    if not lam > 0 or not mu > 0:
        raise DomainError(f"lambda and mu must be positive, got {lam!r}, {mu!r}")
    if max_nodes < 4 * MIN_NODES:
        raise DomainError(f"max_nodes must be at least {4 * MIN_NODES}")
    values = []
    estimates: list[float] = []
    n = MIN_NODES
    while n <= max_nodes:
        kernel, arg = _edward_nodes(float(lam), float(mu), n)
        integrand = kernel if func is None else kernel * func(arg)
        values.append(float(np.sum(integrand)))
        if len(values) > 1:
            estimates.append(abs(values[-1] - values[-2]))
            # two doublings at least, so the estimate trend can be inspected
            if len(estimates) >= 2 and estimates[-1] <= tol * abs(values[-1]):
                return QuadResult(values[-1], n, estimates[-1], True, tuple(estimates))
        n *= 2
    return QuadResult(values[-1], n // 2, estimates[-1], False, tuple(estimates))


def edward_integral(lam: float, mu: float, tol: float = 1e-10, max_nodes: int = MAX_NODES) -> QuadResult:
    return _integrate(lam, mu, tol, None, max_nodes)


def shifted_edward(lam: float, mu: float, n: int, tol: float = 1e-10, max_nodes: int = MAX_NODES) -> QuadResult:
    """Integral of the n-th series term's kernel, i.e. Edward's kernel at (lam + n, mu + n)."""
    if int(n) != n or not 0 <= n <= SHIFT_MAX:
        raise DomainError(f"shift n must be an integer in [0, {SHIFT_MAX}], got {n!r}")
    return _integrate(lam + n, mu + n, tol, None, max_nodes)


def theorem_lhs(
    mp: MasterParams,
    lam: float,
    mu: float,
    a: float,
    form: str = "J",
    tol: float = 1e-8,
    max_nodes: int = MAX_NODES,
) -> QuadResult:
    """Edward kernel times J[a * arg] (form "J") or E[a * arg] (form "E")."""
    if form not in ("J", "E"):
        raise DomainError(f"form must be 'J' or 'E', got {form!r}")
    scale = -a if form == "J" else a
    series_tol = min(max(tol / 10, 1e-15), 1e-3)

    def func(arg: np.ndarray) -> np.ndarray:
        return master_series_array(mp, scale * arg, series_tol)

    return _integrate(lam, mu, tol, func, max_nodes)


def beta_ratio(lam: float, mu: float) -> float:
    """Gamma(lam) Gamma(mu) / Gamma(lam + mu), the closed form of Edward's integral."""
    if lam + mu < 170 and min(lam, mu) > 1e-100:
        return math.gamma(lam) * math.gamma(mu) / math.gamma(lam + mu)
    return math.exp(math.lgamma(lam) + math.lgamma(mu) - math.lgamma(lam + mu))

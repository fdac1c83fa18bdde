"""The master series and the Bessel-Maitland / Mittag-Leffler hierarchy.

Every function in the family is one evaluation of

    S(z) = sum_n (gamma)_{qn} z^n / (Gamma(eta n + beta) (delta)_{pn})

with particular parameter values. The Bessel-Maitland forms evaluate ``S(-z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._summation import SeriesValue, Status, check_tol, outside_domain, sum_series
from .errors import DomainError
from .gammakit import log_gamma, log_gamma_step

DEFAULT_TOL = 1e-14


@dataclass(frozen=True)
class MasterParams:
    """Parameters of the master series.

    ``q = 0`` is admitted and removes the upper Pochhammer factor; it is the
    only way to express the plain Bessel-Maitland function.
    """

    eta: float
    beta: float
    gamma: float = 1.0
    q: float = 1.0
    delta: float = 1.0
    p: float = 1.0

    def __post_init__(self) -> None:
        for name in ("eta", "beta", "gamma", "q", "delta", "p"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"{name} must be a finite real, got {value!r}")
        if self.eta < 0:
            raise DomainError(f"eta must be >= 0, got {self.eta}")
        if self.beta <= 0:
            raise DomainError(f"beta must be > 0 (nu > -1), got {self.beta}")
        if self.gamma <= 0 or self.delta <= 0 or self.p <= 0:
            raise DomainError("gamma, delta and p must be > 0")
        if self.q < 0:
            raise DomainError(f"q must be >= 0, got {self.q}")
        if self.eta == 0 and not self.q < self.p:
            raise DomainError("eta = 0 is only admitted when q < p")

    @property
    def margin(self) -> float:
        return self.eta + self.p - self.q

    @property
    def radius(self) -> float:
        """Radius of convergence: infinite for positive margin, 0 for negative."""
        if self.margin > 0:
            return math.inf
        if self.margin < 0:
            return 0.0
        # 0**0 == 1 covers eta = 0 and q = 0
        return self.eta**self.eta * self.p**self.p / self.q**self.q

    def coefficient_ratio(self, n: int) -> float:
        """c_{n+1} / c_n of the series coefficients."""
        log_r = (
            log_gamma_step(self.gamma + self.q * n, self.q)
            - log_gamma_step(self.beta + self.eta * n, self.eta)
            - log_gamma_step(self.delta + self.p * n, self.p)
        )
        return math.exp(log_r)

    def leading(self) -> float:
        return 1.0 / log_gamma(self.beta).value()


def _limit_ratio(params: MasterParams, z: float) -> float:
    return abs(z) / params.radius if params.margin == 0 else 0.0


def master_series(params: MasterParams, z: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    check_tol(tol)
    if params.margin < 0 or abs(z) >= params.radius:
        return outside_domain()
    return sum_series(params.leading(), params.coefficient_ratio, z, tol, _limit_ratio(params, z))


def bessel_maitland(params: MasterParams, z: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """Generalized Bessel-Maitland function; ``params.beta`` plays the role of nu + 1."""
    return master_series(params, -z, tol)


def master_series_array(params: MasterParams, z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Evaluate the master series at many points sharing one truncation.

    The truncation index is chosen at ``max |z|`` with an absolute tolerance, which
    bounds the tail at every point because all coefficients are positive.
    """
    z = np.asarray(z, dtype=float)
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    if zmax == 0.0:
        return np.full(z.shape, params.leading())
    if params.margin < 0 or zmax >= params.radius:
        raise DomainError(f"|z| = {zmax} lies outside the convergence domain of {params}")
    leading = params.leading()
    bound = sum_series(
        leading, params.coefficient_ratio, zmax, tol, _limit_ratio(params, zmax), relative=False
    )
    if bound.status is not Status.CONVERGED:
        raise ArithmeticError(f"master series did not converge at |z| = {zmax}: {bound.status.value}")
    # scaled coefficients b_n = c_n zmax^n, evaluated at w = z / zmax in [-1, 1]
    b = np.empty(bound.terms_used)
    b[0] = leading
    for n in range(1, bound.terms_used):
        b[n] = b[n - 1] * zmax * params.coefficient_ratio(n - 1)
    w = z / zmax
    out = np.full(z.shape, b[-1])
    for coef in b[-2::-1]:
        out = out * w + coef
    return out


class Reduction(str, Enum):
    ML_1P = "ML_1p"
    ML_2P = "ML_2p"
    PRABHAKAR = "Prabhakar"
    SHUKLA_PRAJAPATI = "ShuklaPrajapati"
    SALIM = "Salim"
    SALIM_FARAJ = "SalimFaraj"
    BM_BASIC = "BM_basic"
    BM_Q = "BM_q"
    BM_EXT = "BM_ext"


# name -> (argument names, whether the Bessel-Maitland sign flip applies)
REDUCTION_ARGS: dict[Reduction, tuple[tuple[str, ...], bool]] = {
    Reduction.ML_1P: (("alpha",), False),
    Reduction.ML_2P: (("alpha", "beta"), False),
    Reduction.PRABHAKAR: (("alpha", "beta", "gamma"), False),
    Reduction.SHUKLA_PRAJAPATI: (("alpha", "beta", "gamma", "q"), False),
    Reduction.SALIM: (("alpha", "beta", "gamma", "delta"), False),
    Reduction.SALIM_FARAJ: (("alpha", "beta", "gamma", "delta", "p", "q"), False),
    Reduction.BM_BASIC: (("mu", "nu"), True),
    Reduction.BM_Q: (("mu", "nu", "gamma", "q"), True),
    Reduction.BM_EXT: (("mu", "nu", "gamma", "delta", "p", "q"), True),
}


def reduction_params(name: Reduction | str, **args: float) -> MasterParams:
    """Map a named function and its arguments onto master-series parameters.

    Mittag-Leffler forms use ``alpha`` as the gamma weight and ``beta`` as the
    offset; Bessel-Maitland forms use ``mu`` as the weight and ``nu + 1`` as the
    offset. Arguments a variant does not take are pinned to 1, except that the
    plain Bessel-Maitland function pins ``q = 0`` so that ``(delta)_{pn} = n!``
    is the only Pochhammer factor left.
    """
    try:
        name = Reduction(name)
    except ValueError:
        raise DomainError(f"unknown reduction {name!r}") from None
    expected, _ = REDUCTION_ARGS[name]
    missing = [k for k in expected if k not in args]
    extra = [k for k in args if k not in expected]
    if missing or extra:
        raise DomainError(f"{name.value} takes {', '.join(expected)}; missing {missing}, unexpected {extra}")
    if name is Reduction.ML_1P:
        return MasterParams(eta=args["alpha"], beta=1.0)
    if name in (Reduction.BM_BASIC, Reduction.BM_Q, Reduction.BM_EXT):
        return MasterParams(
            eta=args["mu"],
            beta=args["nu"] + 1.0,
            gamma=args.get("gamma", 1.0),
            q=args.get("q", 0.0 if name is Reduction.BM_BASIC else 1.0),
            delta=args.get("delta", 1.0),
            p=args.get("p", 1.0),
        )
    return MasterParams(
        eta=args["alpha"],
        beta=args["beta"],
        gamma=args.get("gamma", 1.0),
        q=args.get("q", 1.0),
        delta=args.get("delta", 1.0),
        p=args.get("p", 1.0),
    )


def named_reduction(name: Reduction | str, z: float, tol: float = DEFAULT_TOL, **args: float) -> SeriesValue:
    params = reduction_params(name, **args)
    if REDUCTION_ARGS[Reduction(name)][1]:
        return bessel_maitland(params, z, tol)
    return master_series(params, z, tol)

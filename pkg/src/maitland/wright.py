"""Wright's generalized hypergeometric function, pFq, and the theorem right-hand sides."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from ._summation import SeriesValue, check_tol, outside_domain, sum_series
from .errors import DomainError
from .gammakit import ONE, SignedLog, delta_array, gamma_ratio, log_gamma_step
from .series import DEFAULT_TOL, MasterParams

Pair = tuple[float, float]


@dataclass(frozen=True)
class WrightSpec:
    """Numerator pairs (alpha_j, A_j) and denominator pairs (beta_j, B_j)."""

    upper: tuple[Pair, ...]
    lower: tuple[Pair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple((float(a), float(w)) for a, w in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(w)) for b, w in self.lower))
        for offset, weight in self.upper + self.lower:
            if not weight > 0:
                raise DomainError(f"Wright weights must be positive, got {weight!r}")
            if not offset > 0:
                raise DomainError(f"Wright offsets must be positive, got {offset!r}")

    def coefficient_ratio(self, k: int) -> float:
        log_r = -math.log(k + 1)
        for a, w in self.upper:
            log_r += log_gamma_step(a + w * k, w)
        for b, w in self.lower:
            log_r -= log_gamma_step(b + w * k, w)
        return math.exp(log_r)

    def prefactor(self) -> SignedLog:
        return gamma_ratio([a for a, _ in self.upper], [b for b, _ in self.lower])


class Kind(str, Enum):
    ENTIRE = "Entire"
    DISK = "Disk"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class ConvergenceClass:
    margin: float
    kind: Kind
    radius: float | None = None


def classify(spec: WrightSpec) -> ConvergenceClass:
    # fsum rounds once, so the margin is the correctly rounded exact value
    margin = math.fsum([1.0, *(w for _, w in spec.lower), *(-w for _, w in spec.upper)])
    if margin > 0:
        return ConvergenceClass(margin, Kind.ENTIRE, math.inf)
    if margin < 0:
        return ConvergenceClass(margin, Kind.UNSUPPORTED)
    log_r = math.fsum([-w * math.log(w) for _, w in spec.upper] + [w * math.log(w) for _, w in spec.lower])
    return ConvergenceClass(margin, Kind.DISK, math.exp(log_r))


def wright_psi(spec: WrightSpec, z: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    check_tol(tol)
    cls = classify(spec)
    if cls.kind is Kind.UNSUPPORTED or abs(z) >= cls.radius:
        return outside_domain()
    limit = abs(z) / cls.radius if cls.kind is Kind.DISK else 0.0
    return sum_series(spec.prefactor().value(), spec.coefficient_ratio, z, tol, limit)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


@dataclass(frozen=True)
class PfqSpec:
    upper: tuple[float, ...]
    lower: tuple[float, ...]
    prefactor: SignedLog = field(default=ONE)

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise DomainError(f"lower pFq parameter {b!r} is a nonpositive integer")

    @property
    def terminating(self) -> bool:
        return any(_is_nonpositive_integer(a) for a in self.upper)

    def coefficient_ratio(self, n: int) -> float:
        r = 1.0 / (n + 1)
        for a in self.upper:
            r *= a + n
        for b in self.lower:
            r /= b + n
        return r


def hyp_pfq(spec: PfqSpec, z: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    check_tol(tol)
    n_up, n_low = len(spec.upper), len(spec.lower)
    limit = 0.0
    if not spec.terminating:
        if n_up == n_low + 1:
            if abs(z) >= 1.0:
                return outside_domain()
            limit = abs(z)
        elif n_up > n_low + 1 and z != 0:
            return outside_domain()
    return sum_series(1.0, spec.coefficient_ratio, z, tol, limit).scaled(spec.prefactor.value())


def wright_to_pfq(spec: WrightSpec) -> PfqSpec:
    if any(w != 1 for _, w in spec.upper + spec.lower):
        raise DomainError("the pFq reduction needs every Wright weight equal to 1")
    return PfqSpec(
        tuple(a for a, _ in spec.upper),
        tuple(b for b, _ in spec.lower),
        spec.prefactor(),
    )


def form_sign(form: str) -> int:
    """-1 for the Bessel-Maitland (J) form, +1 for the Mittag-Leffler (E) form."""
    if form == "J":
        return -1
    if form == "E":
        return 1
    raise DomainError(f"form must be 'J' or 'E', got {form!r}")


def _check_theorem(mp: MasterParams, lam: float, mu: float) -> None:
    if not lam > 0 or not mu > 0:
        raise DomainError(f"lambda and mu must be positive, got {lam!r}, {mu!r}")
    if not mp.q > 0:
        raise DomainError("the integral identity needs q > 0")
    if not mp.margin > 0:
        raise DomainError(f"the integral identity needs eta + p - q > 0, got {mp.margin}")


def theorem_wright_spec(mp: MasterParams, lam: float, mu: float) -> tuple[WrightSpec, SignedLog]:
    """The 4Psi3 of the integral identity and its Gamma(delta)/Gamma(gamma) factor.

    With ``eta = 0`` the pair (beta, 0) is constant; it is folded into the factor.
    """
    upper = ((lam, 1.0), (mu, 1.0), (mp.gamma, mp.q), (1.0, 1.0))
    factor = gamma_ratio([mp.delta], [mp.gamma])
    if mp.eta > 0:
        lower = ((mp.beta, mp.eta), (mp.delta, mp.p), (lam + mu, 2.0))
    else:
        lower = ((mp.delta, mp.p), (lam + mu, 2.0))
        factor = factor / gamma_ratio([mp.beta], [])
    return WrightSpec(upper, lower), factor


def theorem_rhs_wright(
    mp: MasterParams, lam: float, mu: float, a: float, tol: float = DEFAULT_TOL, form: str = "J"
) -> SeriesValue:
    """Gamma(delta)/Gamma(gamma) * 4Psi3[...; -a] (J form) or [...; +a] (E form).

    ``mp.beta`` is nu + 1 for the J form and nu for the E form.
    """
    _check_theorem(mp, lam, mu)
    spec, factor = theorem_wright_spec(mp, lam, mu)
    return wright_psi(spec, form_sign(form) * a, tol).scaled(factor.value())


def _positive_int(x: float, name: str) -> int:
    if not (x > 0 and x == int(x)):
        raise DomainError(f"the pFq form needs a positive integer {name}, got {x!r}")
    return int(x)


def theorem_pfq_spec(mp: MasterParams, lam: float, mu: float) -> tuple[PfqSpec, float]:
    """Parameter lists and argument scale of the Gauss-multiplication form.

    Returns the spec and the factor c such that the pFq argument is c * (+-a).
    """
    eta = _positive_int(mp.eta, "eta")
    p = _positive_int(mp.p, "p")
    q = _positive_int(mp.q, "q")
    upper = (*delta_array(q, mp.gamma), lam, mu, 1.0)
    lower = (*delta_array(eta, mp.beta), *delta_array(p, mp.delta), *delta_array(2, lam + mu))
    prefactor = gamma_ratio([lam, mu], [mp.beta, lam + mu])
    scale = q**q / (4.0 * eta**eta * p**p)
    return PfqSpec(upper, lower, prefactor), scale


def theorem_rhs_pfq(
    mp: MasterParams, lam: float, mu: float, a: float, tol: float = DEFAULT_TOL, form: str = "J"
) -> SeriesValue:
    _check_theorem(mp, lam, mu)
    spec, scale = theorem_pfq_spec(mp, lam, mu)
    return hyp_pfq(spec, form_sign(form) * a * scale, tol)

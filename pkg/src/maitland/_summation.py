"""Shared truncation engine for the hypergeometric-type power series."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

MAX_TERMS = 10_000
MIN_TOL = 1e-15
MAX_TOL = 1e-3
# consecutive negligible terms required before the tail is bounded
SMALL_RUN = 3
EPS = 2.0**-52


class Status(str, Enum):
    CONVERGED = "Converged"
    MAX_TERMS = "MaxTermsReached"
    OUTSIDE_DOMAIN = "OutsideDomain"
    # truncated, but cancellation leaves fewer digits than requested
    PRECISION_LOSS = "PrecisionLoss"


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int
    tail_estimate: float
    status: Status
    # eps * sum |t_n|: the error floor left by cancellation between terms
    rounding_estimate: float = 0.0

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def scaled(self, factor: float) -> SeriesValue:
        f = abs(factor)
        return SeriesValue(
            self.value * factor, self.terms_used, self.tail_estimate * f, self.status, self.rounding_estimate * f
        )

    def to_dict(self) -> dict:
        return {
            "kind": "SeriesValue",
            "value": _json_float(self.value),
            "terms_used": self.terms_used,
            "tail_estimate": _json_float(self.tail_estimate),
            "rounding_estimate": _json_float(self.rounding_estimate),
            "status": self.status.value,
        }


def _json_float(x: float) -> float | None:
    return x if math.isfinite(x) else None


def outside_domain() -> SeriesValue:
    return SeriesValue(math.nan, 0, math.inf, Status.OUTSIDE_DOMAIN, math.inf)


def sum_series(
    first: float,
    ratio: Callable[[int], float],
    z: float,
    tol: float,
    limit_ratio: float = 0.0,
    relative: bool = True,
    max_terms: int = MAX_TERMS,
) -> SeriesValue:
    """Sum ``sum_n t_n`` where ``t_0 = first`` and ``t_{n+1} = t_n * z * ratio(n)``.

    Truncation happens once ``SMALL_RUN`` consecutive terms are below
    ``tol * max(1, |partial|)`` with term ratio below one, and the geometric tail
    bound ``|t_N| r / (1 - r)`` also meets the tolerance against the final sum.
    ``r`` is the larger of the next observed ratio and ``limit_ratio`` (the
    asymptotic ratio on a disk of convergence). With ``relative=False`` the scale
    ``max(1, |sum|)`` is replaced by 1.

    A truncated sum whose rounding floor ``eps * sum |t_n|`` exceeds the same
    tolerance is returned with status PrecisionLoss.
    """
    terms = [first]
    partial = first
    abs_sum = abs(first)
    prev = first
    run = 0
    n = 0

    def scale_of(value: float) -> float:
        return max(1.0, abs(value)) if relative else 1.0

    def finish(tail: float) -> SeriesValue:
        value = _fsum(terms)
        rounding = EPS * abs_sum
        ok = rounding <= tol * scale_of(value)
        return SeriesValue(value, len(terms), tail, Status.CONVERGED if ok else Status.PRECISION_LOSS, rounding)

    if first == 0.0 or z == 0.0:
        return finish(0.0)
    while len(terms) < max_terms:
        rho = ratio(n)
        t = prev * z * rho
        n += 1
        if t == 0.0:
            # terminating series or underflow: nothing measurable remains
            terms.append(t)
            return finish(0.0)
        if not math.isfinite(t):
            break
        r = abs(t / prev)
        terms.append(t)
        partial += t
        abs_sum += abs(t)
        if abs(t) <= tol * scale_of(partial) and r < 1.0:
            run += 1
        else:
            run = 0
        prev = t
        if run >= SMALL_RUN:
            r_next = max(abs(z * ratio(n)), limit_ratio)
            if r_next < 1.0:
                tail = abs(t) * r_next / (1.0 - r_next)
                # the running sum may be off under cancellation; judge against the exact sum of the terms
                if tail <= tol * scale_of(partial) and tail <= tol * scale_of(_fsum(terms)):
                    return finish(tail)
    return SeriesValue(_fsum(terms), len(terms), math.inf, Status.MAX_TERMS, EPS * abs_sum)


def _fsum(terms: list[float]) -> float:
    try:
        return math.fsum(terms)
    except OverflowError:
        return math.nan


def check_tol(tol: float) -> float:
    if not MIN_TOL <= tol <= MAX_TOL:
        raise DomainError(f"tol must lie in [{MIN_TOL}, {MAX_TOL}], got {tol!r}")
    return tol


def clamp_tol(tol: float) -> float:
    return min(max(tol, MIN_TOL), MAX_TOL)

"""Gamma-function kernel: signed logarithms, Pochhammer symbols and Gauss multiplication.

Everything that multiplies or divides gamma values goes through :class:`SignedLog`
so that ratios such as ``Gamma(eta*n + beta)`` stay finite long after the
individual factors have left the double range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PoleError

# pochhammer switches from the direct product to the gamma ratio above this n
DIRECT_PRODUCT_MAX = 32


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(log_abs)``."""

    log_abs: float
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")

    @classmethod
    def from_float(cls, x: float) -> SignedLog:
        if x == 0.0:
            return ZERO
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    def __mul__(self, other: SignedLog) -> SignedLog:
        sign = self.sign * other.sign
        if sign == 0:
            return ZERO
        return SignedLog(self.log_abs + other.log_abs, sign)

    def __truediv__(self, other: SignedLog) -> SignedLog:
        if other.sign == 0:
            raise ZeroDivisionError("division by a SignedLog zero")
        if self.sign == 0:
            return ZERO
        return SignedLog(self.log_abs - other.log_abs, self.sign * other.sign)

    def __pow__(self, k: int) -> SignedLog:
        if k == 0:
            return ONE
        if self.sign == 0:
            return ZERO
        return SignedLog(self.log_abs * k, self.sign if k % 2 else 1)

    def __float__(self) -> float:
        return self.value()

    def value(self) -> float:
        """Convert back to a float; may overflow to +-inf or underflow to 0."""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf


ONE = SignedLog(0.0, 1)
ZERO = SignedLog(0.0, 0)


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def log_gamma(x: float) -> SignedLog:
    """ln|Gamma(x)| together with the sign of Gamma(x)."""
    if not math.isfinite(x):
        raise DomainError(f"log_gamma needs a finite argument, got {x!r}")
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    # Gamma is negative on (-1, 0), (-3, -2), ...
    sign = 1 if x > 0 else (-1 if math.floor(x) % 2 else 1)
    if -170.0 < x < 171.0:
        # log of the directly computed value: exp() of it is then within half an ulp of the log
        try:
            g = abs(math.gamma(x))
        except OverflowError:  # |x| below ~1/DBL_MAX
            g = math.inf
        if 0.0 < g < math.inf:
            return SignedLog(math.log(g), sign)
    return SignedLog(math.lgamma(x), sign)


def gamma(x: float) -> float:
    return log_gamma(x).value()


def gamma_ratio(num: list[float] | tuple[float, ...], den: list[float] | tuple[float, ...]) -> SignedLog:
    """prod Gamma(num) / prod Gamma(den) in signed-log form."""
    out = ONE
    for x in num:
        out = out * log_gamma(x)
    for x in den:
        out = out / log_gamma(x)
    return out


def log_gamma_step(x: float, w: float) -> float:
    """ln Gamma(x + w) - ln Gamma(x) for x > 0, w >= 0.

    Small integer steps use the rising product so that the common weights 1 and 2
    cost no lgamma call and lose no digits. Other steps avoid the difference of
    two large lgamma values, which would cost ~eps * ln Gamma(x) absolute.
    """
    if w == 0:
        return 0.0
    if w == int(w) and w <= 8:
        prod = 1.0
        for i in range(int(w)):
            prod *= x + i
        return math.log(prod)
    if not x >= _DIRECT_MAX:
        # lgamma values are still small here, so the plain difference is the more accurate route
        return math.lgamma(x + w) - math.lgamma(x)
    shift = max(0, math.ceil(_STIRLING_MIN - x))
    ratio = 1.0
    for i in range(shift):
        ratio *= (x + i) / (x + w + i)
    return math.log(ratio) + _stirling_step(x + shift, w)


_DIRECT_MAX = 4.0
_STIRLING_MIN = 16.0
# B_2k / (2k (2k - 1)) for k = 1..6
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360)


def _stirling_step(x: float, w: float) -> float:
    """ln Gamma(x + w) - ln Gamma(x) for x >= 16 from the Stirling series, arranged without cancellation."""
    y = x + w
    out = (x - 0.5) * math.log1p(w / x) + w * math.log(y) - w
    ix, iy = 1.0 / x, 1.0 / y
    ix2, iy2 = ix * ix, iy * iy
    px, py = ix, iy
    corr = 0.0
    for c in _STIRLING:
        corr += c * (py - px)
        px *= ix2
        py *= iy2
    return out + corr


def pochhammer(l: float, n: int) -> SignedLog:
    """Rising factorial (l)_n = l (l+1) ... (l+n-1)."""
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer needs a nonnegative integer n, got {n!r}")
    n = int(n)
    if n == 0:
        return ONE
    if n > DIRECT_PRODUCT_MAX and not _is_pole(l) and not _is_pole(l + n):
        return log_gamma(l + n) / log_gamma(l)
    out = ONE
    for k in range(n):
        out = out * SignedLog.from_float(l + k)
        if out.sign == 0:
            break
    return out


def gen_pochhammer(gamma_: float, q: float, n: int) -> SignedLog:
    """Generalized Pochhammer symbol (gamma)_{qn} = Gamma(gamma + q n) / Gamma(gamma)."""
    if not gamma_ > 0 or not q > 0:
        raise DomainError(f"gen_pochhammer needs gamma > 0 and q > 0, got {gamma_!r}, {q!r}")
    if n < 0 or int(n) != n:
        raise DomainError(f"gen_pochhammer needs a nonnegative integer n, got {n!r}")
    n = int(n)
    if n == 0:
        return ONE
    if q == 1:
        return pochhammer(gamma_, n)
    return log_gamma(gamma_ + q * n) / log_gamma(gamma_)


@dataclass(frozen=True)
class DeltaArray:
    """The m parameters l/m, (l+1)/m, ..., (l+m-1)/m."""

    m: int
    l: float
    entries: tuple[float, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return self.m


def delta_array(m: int, l: float) -> DeltaArray:
    if int(m) != m or m < 1:
        raise DomainError(f"delta_array needs an integer m >= 1, got {m!r}")
    m = int(m)
    return DeltaArray(m, l, tuple((l + r) / m for r in range(m)))


def gauss_multiplication(l: float, k: int, n: int) -> SignedLog:
    """Right-hand side of (l)_{kn} = k^{kn} prod_r ((l + r)/k)_n."""
    out = SignedLog(k * n * math.log(k), 1)
    for entry in delta_array(k, l):
        out = out * pochhammer(entry, n)
    return out

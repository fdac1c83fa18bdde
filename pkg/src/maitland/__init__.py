"""Generalized Bessel-Maitland / Mittag-Leffler functions, Wright's pPsiq, and
numerical checks of their Edward-type double-integral identities."""

from ._summation import SeriesValue, Status
from .errors import DomainError, PoleError
from .gammakit import (
    DeltaArray,
    SignedLog,
    delta_array,
    gauss_multiplication,
    gen_pochhammer,
    log_gamma,
    pochhammer,
)
from .quad import JacobiRule, QuadResult, edward_integral, jacobi_rule, shifted_edward, theorem_lhs
from .series import MasterParams, Reduction, bessel_maitland, master_series, named_reduction, reduction_params
from .verify import IdentityId, IdentityReport, SweepConfig, Variant, Verdict, sweep, verify_identity
from .wright import (
    ConvergenceClass,
    Kind,
    PfqSpec,
    WrightSpec,
    classify,
    hyp_pfq,
    theorem_rhs_pfq,
    theorem_rhs_wright,
    wright_psi,
    wright_to_pfq,
)

__all__ = [
    "ConvergenceClass", "DeltaArray", "DomainError", "IdentityId", "IdentityReport", "JacobiRule",
    "Kind", "MasterParams", "PfqSpec", "PoleError", "QuadResult", "Reduction", "SeriesValue",
    "SignedLog", "Status", "SweepConfig", "Variant", "Verdict", "WrightSpec", "bessel_maitland",
    "classify", "delta_array", "edward_integral", "gauss_multiplication", "gen_pochhammer",
    "hyp_pfq", "jacobi_rule", "log_gamma", "master_series", "named_reduction", "pochhammer",
    "reduction_params", "shifted_edward", "sweep", "theorem_lhs", "theorem_rhs_pfq",
    "theorem_rhs_wright", "verify_identity", "wright_psi", "wright_to_pfq",
]

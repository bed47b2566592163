"""Exact configuration-complex computations over rational function fields.

The package machine-checks a family of algebraic identities: boundary maps
on point configurations square to zero, cross-ratio and triple-ratio
generators map coherently into weight-2 and weight-3 polylogarithmic groups,
and the defining relators of those groups die under their differentials.
Everything symbolic is exact over Q(t1, ..., tk); numeric dilogarithm and
entropy realizations provide independent evidence where group quotients make
exact decisions impossible.
"""

from .configurations import (
    ConfigSum,
    Configuration,
    NonGenericError,
    alternate,
    boundary_d,
    boundary_dprime,
    cross_ratio,
    factor_triple_ratio,
    parse_configuration,
    projected_cross_ratio,
    random_configuration,
    symmetric_group,
    triple_ratio_term,
)
from .derivation import Derivation
from .field import CoprimeBase, Field, Polynomial, RationalFunction, coprime_base, normalize
from .groups import (
    B2Element,
    Beta2Element,
    BetaDElement,
    Context,
    MidElement,
    VerdictWithEvidence,
    cath2,
    delta2,
    make_context,
    partialD2,
    partialD3,
    partialD_mid,
    relator,
    tau2D,
    transport,
    verify_mid_equal,
)
from .morphisms import (
    apply_linear,
    tau0_2,
    tau0_3,
    tau0_n,
    tau1_2,
    tau1_3,
    tau1_3_alt,
    tau2_3,
)
from .realizations import (
    NumericVerdict,
    Specialization,
    bloch_wigner,
    entropy,
    log_fingerprint,
    realize_B2,
    realize_betaD_D2,
    realize_entropy,
    sample_specialization,
)
from .tensors import FXFX, F_W, Shape, TensorElement, W2, dlog_realize, make_tensor

__all__ = [
    "B2Element",
    "Beta2Element",
    "BetaDElement",
    "ConfigSum",
    "Configuration",
    "Context",
    "CoprimeBase",
    "Derivation",
    "FXFX",
    "F_W",
    "Field",
    "MidElement",
    "NonGenericError",
    "NumericVerdict",
    "Polynomial",
    "RationalFunction",
    "Shape",
    "Specialization",
    "TensorElement",
    "VerdictWithEvidence",
    "W2",
    "alternate",
    "apply_linear",
    "bloch_wigner",
    "boundary_d",
    "boundary_dprime",
    "cath2",
    "coprime_base",
    "cross_ratio",
    "delta2",
    "dlog_realize",
    "entropy",
    "factor_triple_ratio",
    "log_fingerprint",
    "make_context",
    "make_tensor",
    "normalize",
    "parse_configuration",
    "partialD2",
    "partialD3",
    "partialD_mid",
    "projected_cross_ratio",
    "random_configuration",
    "realize_B2",
    "realize_betaD_D2",
    "realize_entropy",
    "relator",
    "sample_specialization",
    "symmetric_group",
    "tau0_2",
    "tau0_3",
    "tau0_n",
    "tau1_2",
    "tau1_3",
    "tau1_3_alt",
    "tau2D",
    "tau2_3",
    "transport",
    "triple_ratio_term",
    "verify_mid_equal",
]

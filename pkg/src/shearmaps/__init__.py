"""Verification tools for shearing maps of the unit ball in C^2.

A shearing map is ``f(z1, z2) = (z1 + g(z2), z2)`` for a holomorphic ``g`` on
the unit disk with ``g(0) = g'(0) = 0``.  The package certifies coefficient
criteria (starlike, starshapelike, embeddable into a subordination chain),
scans the underlying geometric inequalities on sampled ball points, bounds
operator-norm growth for the certified class, and exhibits a concrete shear
whose differential outgrows every cubic-power bound.
"""

from .counterexample import (
    BUILTIN_NAME,
    DEFAULT_R_GRID,
    RATIO_CEILING,
    DivergenceRecord,
    DivergenceScan,
    ce_lower_bound,
    counterexample_disk_function,
    counterexample_map,
    divergence_ratio,
    divergence_scan,
    radial_image_bound,
    simplified_lower_bound,
    unit_modulus_check,
)
from .errors import (
    ConfigError,
    DomainError,
    NormalizationError,
    OverflowRefusalError,
    ShearmapsError,
    UncertifiedMapError,
    UnsupportedRepresentationError,
)
from .geometry import (
    DEFAULT_SEED,
    VIOLATION_THRESHOLD,
    SamplerConfig,
    ScanReport,
    boundedness_scan,
    default_alpha_grid,
    eq1_residual,
    eq1_scan,
    starlike_quantity,
    starlike_scan,
)
from .growth import (
    GrowthRecord,
    growth_conformance_scan,
    opnorm2,
    opnorm2_pair,
    s0_growth_bound,
    schwarz_pick_bound,
    shear_opnorm,
    unipotent_opnorm,
)
from .series import (
    OVERFLOW_LOG_THRESHOLD,
    BallPoint,
    CoefficientSeries,
    DiskFunction,
    coeff_sum_s1,
    coeff_sum_s2,
    disk_function_from_callables,
    disk_function_from_series,
    dump_series_spec,
    load_series_spec,
    parse_series_spec,
    tail_sum,
)
from .shear import (
    STARLIKE_SUM_LIMIT,
    Certificate,
    Jacobian2,
    ShearingMap,
    all_certificates,
    embed_certificate,
    identity_shear,
    shear_from_series,
    starlike_certificate,
    starshapelike_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAME",
    "DEFAULT_R_GRID",
    "DEFAULT_SEED",
    "OVERFLOW_LOG_THRESHOLD",
    "RATIO_CEILING",
    "STARLIKE_SUM_LIMIT",
    "VIOLATION_THRESHOLD",
    "BallPoint",
    "Certificate",
    "CoefficientSeries",
    "ConfigError",
    "DiskFunction",
    "DivergenceRecord",
    "DivergenceScan",
    "DomainError",
    "GrowthRecord",
    "Jacobian2",
    "NormalizationError",
    "OverflowRefusalError",
    "SamplerConfig",
    "ScanReport",
    "ShearingMap",
    "ShearmapsError",
    "UncertifiedMapError",
    "UnsupportedRepresentationError",
    "all_certificates",
    "boundedness_scan",
    "ce_lower_bound",
    "coeff_sum_s1",
    "coeff_sum_s2",
    "counterexample_disk_function",
    "counterexample_map",
    "default_alpha_grid",
    "disk_function_from_callables",
    "disk_function_from_series",
    "divergence_ratio",
    "divergence_scan",
    "dump_series_spec",
    "embed_certificate",
    "eq1_residual",
    "eq1_scan",
    "growth_conformance_scan",
    "identity_shear",
    "load_series_spec",
    "opnorm2",
    "opnorm2_pair",
    "parse_series_spec",
    "radial_image_bound",
    "s0_growth_bound",
    "schwarz_pick_bound",
    "shear_from_series",
    "shear_opnorm",
    "simplified_lower_bound",
    "starlike_certificate",
    "starlike_quantity",
    "starlike_scan",
    "starshapelike_certificate",
    "tail_sum",
    "unipotent_opnorm",
    "unit_modulus_check",
]

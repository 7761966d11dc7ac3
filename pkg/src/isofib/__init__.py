"""Exact invariants and ordinarity of isotrivial elliptic surfaces over GF(p)."""

from .curves import (
    EllipticCurveQ,
    EllipticCurveW,
    HyperellipticModel,
    OracleBoundError,
    cartier_manin,
    hasse_invariant,
    j_invariant_and_aut,
    p_rank_hyperelliptic,
    point_count_oracle,
    zeta_prank_oracle,
)
from .ffpoly import (
    ExtField,
    FpMatrix,
    FpPolynomial,
    PrimeField,
    ext_field_ops,
    matrix_rank_det,
    poly_pow_coeff,
)
from .fibration import (
    FiberClass,
    FibrationSpec,
    KodairaType,
    RamificationData,
    Rotation,
    Stabilizer,
    SurfaceInvariants,
    TranslationClass,
    ValidationError,
    classify_fiber,
    genus_cover_tower,
    line_bundle_degrees,
    singular_fibers,
    surface_invariants,
    validate_spec,
)
from .ordinarity import (
    CurveOrdinarityReport,
    CurveReportEntry,
    HasseDivisor,
    MissingReportDataError,
    NotGenericallyOrdinaryError,
    OrdinarityVerdict,
    build_report,
    check_supersingular_corollary,
    decide,
    h2_frobenius_matrix,
    hasse_divisor,
    hasse_poly_z2,
)

__version__ = "0.1.0"

__all__ = [
    "CurveOrdinarityReport",
    "CurveReportEntry",
    "EllipticCurveQ",
    "EllipticCurveW",
    "ExtField",
    "FiberClass",
    "FibrationSpec",
    "FpMatrix",
    "FpPolynomial",
    "HasseDivisor",
    "HyperellipticModel",
    "KodairaType",
    "MissingReportDataError",
    "NotGenericallyOrdinaryError",
    "OracleBoundError",
    "OrdinarityVerdict",
    "PrimeField",
    "RamificationData",
    "Rotation",
    "Stabilizer",
    "SurfaceInvariants",
    "TranslationClass",
    "ValidationError",
    "build_report",
    "cartier_manin",
    "check_supersingular_corollary",
    "classify_fiber",
    "decide",
    "ext_field_ops",
    "genus_cover_tower",
    "h2_frobenius_matrix",
    "hasse_divisor",
    "hasse_invariant",
    "hasse_poly_z2",
    "j_invariant_and_aut",
    "line_bundle_degrees",
    "matrix_rank_det",
    "p_rank_hyperelliptic",
    "point_count_oracle",
    "poly_pow_coeff",
    "singular_fibers",
    "surface_invariants",
    "validate_spec",
    "zeta_prank_oracle",
]

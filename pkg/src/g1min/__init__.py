"""Minimisation of genus one equations of degree at most 4."""
from .arith import INF, LocalContext
from .errors import (
    DegreeMismatch,
    DerivationFailed,
    DimensionMismatch,
    G1MinError,
    NonIntegralCoefficient,
    NonIntegralLevel,
    PositionViolation,
    SingularGenericFiber,
    SingularInput,
    UnsupportedResidueField,
)
from .fiber import FiberClass, FiberKind, NormalityVerdict, classify_fiber, normality
from .invariants import derive_scalings, discriminant, invariants, standard_model
from .jacobian import jacobian, level, minimal_discriminant_global, minimal_discriminant_local
from .minimise import (
    GeometricStatus,
    MinimisationCertificate,
    Move,
    Status,
    geometric_status,
    is_minimal,
    minimise_global,
    minimise_local,
    nonminimal_step,
)
from .models import T1, T2, T3, T4, GenusOneEquation, apply, compose, det, inverse, weierstrass
from .testgen import generate_instance

__version__ = "0.1.0"

__all__ = [
    "INF", "LocalContext", "DegreeMismatch", "DerivationFailed", "DimensionMismatch", "G1MinError",
    "NonIntegralCoefficient", "NonIntegralLevel", "PositionViolation", "SingularGenericFiber", "SingularInput",
    "UnsupportedResidueField", "FiberClass", "FiberKind", "NormalityVerdict", "classify_fiber", "normality",
    "derive_scalings", "discriminant", "invariants", "standard_model", "jacobian", "level",
    "minimal_discriminant_global", "minimal_discriminant_local", "GeometricStatus", "MinimisationCertificate",
    "Move", "Status", "geometric_status", "is_minimal", "minimise_global", "minimise_local", "nonminimal_step",
    "T1", "T2", "T3", "T4", "GenusOneEquation", "apply", "compose", "det", "inverse", "weierstrass",
    "generate_instance",
]

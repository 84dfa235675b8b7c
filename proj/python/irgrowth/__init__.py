"""Dyadic zero lattice, its canonical product, Borel transform and growth diagnostics."""

from ._core import (
    BorelEvaluator,
    CoefficientStream,
    DomainError,
    F_eval,
    F_via_identity,
    GrowthProfile,
    InsufficientSamples,
    IntervalSet,
    LatticeExhausted,
    LogComplex,
    NonConvergence,
    ProductEvaluator,
    U_DECAY_CONSTANT,
    WindowStats,
    ZeroLattice,
    borel_inversion,
    classify,
    control_profile,
    geometric_radii,
    relative_measure,
    splitting_residual,
    type_estimate,
    u_eval,
    u_eval_log,
    verify_lattice,
    window_stats,
)

__all__ = [
    "BorelEvaluator",
    "CoefficientStream",
    "DomainError",
    "F_eval",
    "F_via_identity",
    "GrowthProfile",
    "InsufficientSamples",
    "IntervalSet",
    "LatticeExhausted",
    "LogComplex",
    "NonConvergence",
    "ProductEvaluator",
    "U_DECAY_CONSTANT",
    "WindowStats",
    "ZeroLattice",
    "borel_inversion",
    "classify",
    "control_profile",
    "geometric_radii",
    "relative_measure",
    "splitting_residual",
    "type_estimate",
    "u_eval",
    "u_eval_log",
    "verify_lattice",
    "window_stats",
]

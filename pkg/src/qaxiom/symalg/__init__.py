"""Exact symbolic core: coefficients, noncommutative polynomials, commutator tables."""

from .algebra import (
    IDENTITY, PRESETS, SUBSTITUTION_PRESETS, Algebra, Substitution, bounded_motion_momentum,
    default_order, epsilon, heisenberg, magnetic2, momentum_from_field, preset, substitution_preset,
)
from .checks import (
    GEOMETRIC_UNITS, DimensionMap, DimensionReport, EquivalenceReport, JacobiReport,
    MixedCommutatorResult, bounded_motion_matrix, dimension_check, equivalence_check,
    jacobi_check, jacobi_residual, mixed_commutator,
)
from .coefficient import BUILTIN_CONSTANTS, HBAR, I, ONE, ZERO, Coefficient, GaussianRational
from .polynomial import Generator, NCPolynomial, commutator_formal, gen
from .rewrite import commutator, is_normal_ordered, normal_order, substitute

__all__ = [
    "Algebra", "Substitution", "IDENTITY", "PRESETS", "SUBSTITUTION_PRESETS", "preset",
    "substitution_preset", "heisenberg", "magnetic2", "momentum_from_field",
    "bounded_motion_momentum", "default_order", "epsilon",
    "Coefficient", "GaussianRational", "BUILTIN_CONSTANTS", "HBAR", "I", "ONE", "ZERO",
    "Generator", "NCPolynomial", "gen", "commutator_formal",
    "normal_order", "commutator", "substitute", "is_normal_ordered",
    "jacobi_check", "jacobi_residual", "JacobiReport", "equivalence_check", "EquivalenceReport",
    "dimension_check", "DimensionMap", "DimensionReport", "GEOMETRIC_UNITS",
    "mixed_commutator", "MixedCommutatorResult", "bounded_motion_matrix",
]

"""Spectral Camassa-Holm/Novikov toolkit with a Littlewood-Paley/Besov engine."""

from .besov import (
    BesovIndex,
    CutoffSystem,
    besov_norm,
    build_cutoffs,
    dyadic_sup_norm,
    lebesgue_norm,
    lipschitz_norm,
    lp_block,
)
from .equations import EquationKind, ch_source, drift, helmholtz_inverse, novikov_sources, rhs
from .errors import (
    BesovLabError,
    BlowUpError,
    ConfigurationError,
    GridMismatchError,
    ResolutionError,
    ResourceCapError,
    UnsupportedIndexError,
)
from .experiments import (
    run_approx_suite,
    run_drift_law,
    run_family_suite,
    run_gap,
    run_oscillation_limit,
)
from .families import FamilyParams, make_family, recommend_grid, synthesize_envelope
from .spectral import (
    Field,
    Grid,
    Multiplier,
    apply_multiplier,
    dealias,
    derivative,
    make_grid,
)
from .timestepping import SolveConfig, SolveResult, energy, solve

__all__ = [
    "BesovIndex",
    "BesovLabError",
    "BlowUpError",
    "ConfigurationError",
    "CutoffSystem",
    "EquationKind",
    "FamilyParams",
    "Field",
    "Grid",
    "GridMismatchError",
    "Multiplier",
    "ResolutionError",
    "ResourceCapError",
    "SolveConfig",
    "SolveResult",
    "UnsupportedIndexError",
    "apply_multiplier",
    "besov_norm",
    "build_cutoffs",
    "ch_source",
    "dealias",
    "derivative",
    "drift",
    "dyadic_sup_norm",
    "energy",
    "helmholtz_inverse",
    "lebesgue_norm",
    "lipschitz_norm",
    "lp_block",
    "make_family",
    "make_grid",
    "novikov_sources",
    "recommend_grid",
    "rhs",
    "run_approx_suite",
    "run_drift_law",
    "run_family_suite",
    "run_gap",
    "run_oscillation_limit",
    "solve",
    "synthesize_envelope",
]

__version__ = "0.1.0"

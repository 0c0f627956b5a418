"""Boundary-layer equilibria, spectra, and metastable dynamics of the viscous
Burgers equation on [-1, 1]."""

from ._core import (  # noqa: F401
    EPS_PRECISION_FLOOR,
    BoundaryPair,
    BoundednessReport,
    CompositeProfile,
    ConfigError,
    DecayFit,
    EquilibriumSource,
    Field,
    Grid,
    L2BoundCheck,
    LineFit,
    MatchReport,
    NumericalError,
    SpectrumResult,
    SteadyResult,
    SweepResult,
    SweepRow,
    Trajectory,
    bound_constant,
    boundary_mismatch,
    boundedness_check,
    composite,
    default_resolution,
    evolve,
    fit_decay,
    inner_solution,
    integrate,
    integrate_squared,
    l2_bound_check,
    l2_norm,
    linearized_spectrum,
    make_grid,
    matching_check,
    metastability_sweep,
    newton_solve_steady,
    outer_solutions,
    perturbed_initial,
    stationary_residual,
    steady_residual,
    step_implicit,
    symmetrization_weight,
    turning_point_model,
    validate_bc,
)

__version__ = "0.1.0"

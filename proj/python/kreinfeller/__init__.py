"""Krein-Feller operators d/dmu d/dx on [0, 1].

Numerics for generalized monomials, hyperbolic and trigonometric functions,
resolvents, spectral decompositions, heat semigroups, and measure-convergence
experiments for non-atomic Borel probability measures on the unit interval.
"""

from ._kreinfeller import (
    Boundary,
    ConfigError,
    ExperimentReport,
    ExperimentRow,
    FamilyKind,
    FamilySpec,
    Gap,
    GridFunction,
    HeatKernel,
    HeatSolution,
    HyperbolicFunctions,
    InvariantViolation,
    Measure,
    MeasureFamily,
    MonomialTable,
    NumericalError,
    ResolventDensity,
    SemigroupMethod,
    SpectralDecomposition,
    TrigFunctions,
    apply_krein_feller,
    apply_resolvent,
    apply_semigroup,
    build_family,
    cdf_distance,
    composed_limit_demo,
    eigen_matrix_oracle,
    eigen_shooting,
    embed,
    graph_norm_convergence,
    heat_kernel,
    hyperbolic,
    integrate,
    make_grid,
    monomial_table,
    orthonormality_defect,
    resolvent_convergence,
    resolvent_density,
    resolvent_error_bound,
    rhs_from_descriptor,
    semigroup_convergence,
    solve_heat,
    sup_distance,
    trig,
    truncation_order,
    uniform_grid,
    verify_resolvent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

"""Discrete Laplace eigenvalues and how far down the spectrum to trust them.

Closed-form dispersion spectra for the classical uniform-mesh methods,
banded stiffness/mass pencil assembly with dense and banded symmetric
solvers, 2D mode-lattice enumeration orders, and reliability counting
against the exact Dirichlet spectrum.
"""

from .core import (
    DiscreteSpectrum,
    DomainSpec,
    Method,
    ModeIndex,
    UniformMesh,
    bilinear_consistent_2d,
    closed_form_2d,
    exact_modes_1d,
    exact_modes_2d,
    exact_spectrum,
    extrapolated_1d,
    extrapolated_2d,
    five_point_lumped_2d,
    linear_fem_1d,
    lumped_fd_1d,
    middle_mode,
    nine_point_lumped_2d,
)
from .ordering import (
    LevelGroup,
    OrderingStrategy,
    apply_ordering,
    circular_levels,
    enumerate_lattice,
    levels,
    square_levels,
    tensorize,
    triangular_levels,
)
from .pencils import (
    MatrixPencil,
    assemble_bilinear_2d,
    assemble_legendre_1d,
    assemble_linear_1d,
    assemble_linear_triangle_2d,
    assemble_quadratic_1d,
    band_to_dense,
    dump_pencil,
    lumped_pencil,
    parse_pencil,
)
from .reliability import (
    Pairing,
    ReliabilityReport,
    TheoremParams,
    assess,
    count_reliable,
    fit_growth_exponent,
    li_yau_individual_bound,
    li_yau_sum_bound,
    pleijel_law,
    polya_bound,
    predicted_jn,
    relative_errors,
    weyl_law,
)
from .solvers import (
    BANDED_MAX_ORDER,
    DENSE_MAX_ORDER,
    ConvergenceError,
    EigenSolveOptions,
    FactorizationError,
    SolverError,
    StructureError,
    solve_banded,
    solve_dense,
    tridiagonal_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteSpectrum",
    "DomainSpec",
    "Method",
    "ModeIndex",
    "UniformMesh",
    "bilinear_consistent_2d",
    "closed_form_2d",
    "exact_modes_1d",
    "exact_modes_2d",
    "exact_spectrum",
    "extrapolated_1d",
    "extrapolated_2d",
    "five_point_lumped_2d",
    "linear_fem_1d",
    "lumped_fd_1d",
    "middle_mode",
    "nine_point_lumped_2d",
    "LevelGroup",
    "OrderingStrategy",
    "apply_ordering",
    "circular_levels",
    "enumerate_lattice",
    "levels",
    "square_levels",
    "tensorize",
    "triangular_levels",
    "MatrixPencil",
    "assemble_bilinear_2d",
    "assemble_legendre_1d",
    "assemble_linear_1d",
    "assemble_linear_triangle_2d",
    "assemble_quadratic_1d",
    "band_to_dense",
    "dump_pencil",
    "lumped_pencil",
    "parse_pencil",
    "Pairing",
    "ReliabilityReport",
    "TheoremParams",
    "assess",
    "count_reliable",
    "fit_growth_exponent",
    "li_yau_individual_bound",
    "li_yau_sum_bound",
    "pleijel_law",
    "polya_bound",
    "predicted_jn",
    "relative_errors",
    "weyl_law",
    "BANDED_MAX_ORDER",
    "DENSE_MAX_ORDER",
    "ConvergenceError",
    "EigenSolveOptions",
    "FactorizationError",
    "SolverError",
    "StructureError",
    "solve_banded",
    "solve_dense",
    "tridiagonal_eigenvalues",
    "__version__",
]

"""Normal modes, symmetries and spectra of harmonic oscillator chains.

The package builds the structural matrices of circular and linear chains
with exact integer entries, derives their closed-form spectra, verifies
every symmetry and commutant identity by exact arithmetic, cross-checks
all eigenvalues against an independent in-house eigensolver, and evolves
the chains in time both analytically and with a symplectic integrator.
"""

from .chebyshev import (
    Polynomial,
    eval_matrix,
    eval_scalar,
    p_poly_explicit,
    p_poly_recurrence,
    scale_argument,
    u_poly,
    u_roots,
)
from .commutant import (
    CommutantDecomposition,
    DimensionProbe,
    EXACT_CAP,
    ExactCapError,
    NotInSpanReport,
    StructuralReport,
    cayley_hamilton_check,
    commutant_basis,
    commutant_dimension_probe,
    decompose,
    fill_commuting_from_first_row,
    path_adjacency,
    structural_checks,
)
from .dynamics import (
    SimulationConfig,
    TrajectoryState,
    acceleration,
    analytic_evolution,
    default_dt,
    energy_drift,
    max_deviation_from_analytic,
    max_frequency,
    total_energy,
    total_momentum,
    verlet_simulate,
)
from .eigensolver import (
    ConvergenceError,
    EigenResult,
    jacobi_eigenvalues,
    residual,
    sturm_eigenvalues,
)
from .matrices import (
    CIRCULAR,
    LINEAR,
    ChainConfig,
    DimensionMismatchError,
    SquareMatrix,
    anticommutator,
    circular_coupling_matrix,
    commutator,
    coupling_matrix,
    exchange_matrix,
    identity,
    linear_coupling_matrix,
    reconstruct_circular_from_shift,
    shift_matrix,
    sign_matrix,
)
from .spectra import (
    ModeShape,
    Spectrum,
    circular_modes,
    circular_spectrum,
    degeneracy_clusters,
    linear_modes,
    linear_spectrum,
    spectral_reflection_check,
    spectrum_for,
)

__version__ = "0.1.0"

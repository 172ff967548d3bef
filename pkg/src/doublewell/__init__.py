"""Bound states of a particle in an asymmetric square double well.

Two independent solvers for the same spectrum: a sine-basis matrix route
(`spectral`, eigenproblem solved by the in-package symmetric eigensolver) and
a piecewise matching route (`analytic`, transcendental quantization condition
solved by seeded bisection). `observables` integrates states into per-well
occupancies and density profiles, `toymodel` reduces the lowest pair to a
two-state system with a fitted tunnelling element, and `cli` drives sweeps
and CSV artifacts.

Units throughout: energies in the ground energy of the empty box, lengths in
the box width.
"""

from .errors import (
    ConvergenceError,
    DomainError,
    InconsistentDataError,
    NumericalError,
    PartialRootsError,
    PreconditionError,
    ValidationError,
)
from .potential import PotentialSpec, evaluate, load_spec, make_symmetric
from .eigensolver import eigh_symmetric
from .spectral import (
    DEFAULT_BASIS_SIZE,
    HamiltonianMatrix,
    SpectralSolution,
    build_hamiltonian,
    diagonalize,
    solve,
    wavefunction_on_grid,
)
from .analytic import (
    AnalyticState,
    amplitude_ratio,
    assemble_state,
    find_levels,
    quantization_residual,
)
from .observables import (
    DensityProfile,
    WellOccupancy,
    density_profile,
    occupancy,
    pair_splitting,
)
from .toymodel import (
    OccupancyCurve,
    TwoStateModel,
    energy_pair,
    estimate_t_exponential,
    fit_from_sweep,
    fit_t,
    occupancies,
    occupancy_curve,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "InconsistentDataError",
    "NumericalError",
    "PartialRootsError",
    "PreconditionError",
    "ValidationError",
    "PotentialSpec",
    "evaluate",
    "load_spec",
    "make_symmetric",
    "eigh_symmetric",
    "DEFAULT_BASIS_SIZE",
    "HamiltonianMatrix",
    "SpectralSolution",
    "build_hamiltonian",
    "diagonalize",
    "solve",
    "wavefunction_on_grid",
    "AnalyticState",
    "amplitude_ratio",
    "assemble_state",
    "find_levels",
    "quantization_residual",
    "DensityProfile",
    "WellOccupancy",
    "density_profile",
    "occupancy",
    "pair_splitting",
    "OccupancyCurve",
    "TwoStateModel",
    "energy_pair",
    "estimate_t_exponential",
    "fit_from_sweep",
    "fit_t",
    "occupancies",
    "occupancy_curve",
    "__version__",
]

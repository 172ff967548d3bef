"""Measured quantities: per-well probabilities, pair splittings, densities.

Occupancies from an analytic state use the closed-form region integrals; for
a spectral solution the state is evaluated on per-region grids whose
endpoints sit exactly on the well/barrier interfaces (no smearing of the
region boundaries) and integrated by composite Simpson.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticState, _region_norms
from .errors import PreconditionError, ValidationError
from .potential import PotentialSpec
from .spectral import SpectralSolution, wavefunction_on_grid

__all__ = [
    "WellOccupancy",
    "DensityProfile",
    "occupancy",
    "pair_splitting",
    "density_profile",
]

DEFAULT_GRID_SIZE = 2001


@dataclass(frozen=True)
class WellOccupancy:
    """Integrated probability in each region; components sum to 1."""

    p_left: float
    p_barrier: float
    p_right: float


@dataclass(frozen=True)
class DensityProfile:
    """|psi|^2 sampled on a uniform grid over the box."""

    grid: np.ndarray
    density: np.ndarray


def _simpson_uniform(y: np.ndarray, h: float) -> float:
    n = y.size
    if n < 3 or n % 2 == 0:
        raise ValidationError(f"Simpson needs an odd number of points >= 3, got {n}")
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())


def _odd_at_least(n: int, floor: int) -> int:
    n = max(n, floor)
    return n if n % 2 == 1 else n + 1


def _region_edges(spec: PotentialSpec) -> tuple[float, float]:
    return spec.w, spec.w + spec.b


def _spectral_region_integrals(
    sol: SpectralSolution, spec: PotentialSpec, state_index: int, total_points: int
) -> tuple[float, float, float]:
    left_edge, right_edge = _region_edges(spec)
    out = []
    for x0, x1 in ((0.0, left_edge), (left_edge, right_edge), (right_edge, 1.0)):
        npts = _odd_at_least(int(round(total_points * (x1 - x0))), 501)
        x = np.linspace(x0, x1, npts)
        psi = wavefunction_on_grid(sol, state_index, x)
        out.append(_simpson_uniform(psi * psi, x[1] - x[0]))
    return tuple(out)


def occupancy(state, spec: PotentialSpec, state_index: int = 0) -> WellOccupancy:
    """Probability in left well / barrier / right well for one state.

    `state` is an AnalyticState (closed-form integrals) or a SpectralSolution
    plus state_index (composite Simpson, >= 2001 points with the interfaces
    as grid nodes). Raises PreconditionError if the state is not normalized
    to 1 within 1e-6.
    """
    if isinstance(state, AnalyticState):
        a, bt, c, d = state.coeffs
        parts = _region_norms(
            a, bt, c, d, state.bp, state.k, state.q, state.kappa, spec.w, spec.b
        )
    elif isinstance(state, SpectralSolution):
        parts = _spectral_region_integrals(state, spec, state_index, DEFAULT_GRID_SIZE)
    else:
        raise TypeError(f"cannot compute occupancy of {type(state).__name__}")
    total = sum(parts)
    if abs(total - 1.0) > 1e-6:
        raise PreconditionError(
            f"state is not normalized: region integrals sum to {total!r}"
        )
    return WellOccupancy(p_left=parts[0], p_barrier=parts[1], p_right=parts[2])


def pair_splitting(energies) -> list[tuple[float, float]]:
    """Reduce an ascending energy list to per-pair (mean, gap).

    Consecutive energies are paired as (e1, e2), (e3, e4), ...; a trailing
    unpaired energy is ignored.
    """
    e = np.asarray(energies, dtype=np.float64)
    if e.size < 2:
        raise ValidationError("need at least two energies to form a pair")
    if np.any(np.diff(e) < 0.0):
        raise ValidationError("energies must be sorted ascending")
    out = []
    for i in range(0, e.size - 1, 2):
        out.append((0.5 * (e[i] + e[i + 1]), e[i + 1] - e[i]))
    return out


def _eval_state(state, state_index: int, grid: np.ndarray) -> np.ndarray:
    if isinstance(state, AnalyticState):
        return state.wavefunction(grid)
    if isinstance(state, SpectralSolution):
        return wavefunction_on_grid(state, state_index, grid)
    raise TypeError(f"cannot evaluate {type(state).__name__} on a grid")


def density_profile(state, grid_size: int = DEFAULT_GRID_SIZE, state_index: int = 0) -> DensityProfile:
    """|psi|^2 on a uniform grid of odd size >= 101 over [0, 1]."""
    if grid_size < 101 or grid_size % 2 == 0:
        raise ValidationError(
            f"grid_size must be odd and at least 101, got {grid_size}"
        )
    x = np.linspace(0.0, 1.0, grid_size)
    psi = _eval_state(state, state_index, x)
    return DensityProfile(grid=x, density=psi * psi)

"""Truncated-basis route: Hamiltonian in the infinite-box sine basis.

The basis is phi_n(x) = sqrt(2) sin(n pi x), n = 1..N. Against this basis the
piecewise-constant potential has closed-form matrix elements built from

    sinc(j) = sin(pi j w) / (pi j),   sinc(0) = w,

giving H = diag(n^2) + v0*I + (vl - v0)*D + (vr - v0)*S*D*S with
D_nm = sinc(n - m) - sinc(n + m) and S = diag((-1)^n). The same expression in
expanded form: diagonal n^2 + (vl + vr)*w + v0*b + (2*v0 - vl - vr)*sinc(2n),
off-diagonal D_nm * ((vl - v0) + (vr - v0)*(-1)^(n+m)).

For a symmetric well the off-diagonal factor carries (1 + (-1)^(n+m)), so
every element with odd n + m is exactly zero and the matrix splits into
decoupled parity blocks; diagonalize() exploits that split (it keeps the
members of near-degenerate pairs parity-pure instead of arbitrarily mixed).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigensolver import eigh_symmetric
from .errors import DomainError, ValidationError
from .potential import PotentialSpec

__all__ = [
    "HamiltonianMatrix",
    "SpectralSolution",
    "build_hamiltonian",
    "diagonalize",
    "solve",
    "wavefunction_on_grid",
]

DEFAULT_BASIS_SIZE = 400


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense symmetric matrix of basis-space Hamiltonian elements.

    entries[n-1, m-1] is the element between phi_n and phi_m. `spec` records
    the potential the matrix was built from (None for hand-built matrices).
    """

    order: int
    entries: np.ndarray
    spec: PotentialSpec | None = None

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.shape != (self.order, self.order):
            raise ValidationError(
                f"entries shape {entries.shape} does not match order {self.order}"
            )
        if not np.array_equal(entries, entries.T):
            raise ValidationError("Hamiltonian entries must be exactly symmetric")
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class SpectralSolution:
    """Eigenvalues and basis coefficients of a truncated Hamiltonian.

    energies are ascending; coefficients[:, k] is the unit-norm coefficient
    vector c_n of eigenstate k. Eigenvalue accuracy is limited by roughly
    10 * eps * ||H|| with ||H|| ~ N^2 in these units, so N must be sized
    against the smallest splitting that has to be resolved.
    """

    basis_size: int
    energies: np.ndarray
    coefficients: np.ndarray
    spec: PotentialSpec | None = None


def _sinc_w(j, w: float):
    """sin(pi j w)/(pi j) elementwise, with the j = 0 limit w."""
    j = np.asarray(j, dtype=np.float64)
    den = np.where(j == 0, 1.0, np.pi * j)
    return np.where(j == 0, w, np.sin(np.pi * j * w) / den)


def build_hamiltonian(spec: PotentialSpec, basis_size: int) -> HamiltonianMatrix:
    """Matrix elements of the double-well Hamiltonian in the sine basis."""
    if basis_size < 2:
        raise ValidationError(f"basis_size must be at least 2, got {basis_size}")
    w = spec.w
    n = np.arange(1, basis_size + 1)
    d = _sinc_w(n[:, None] - n[None, :], w) - _sinc_w(n[:, None] + n[None, :], w)
    sign = np.where((n[:, None] + n[None, :]) % 2 == 0, 1.0, -1.0)
    h = (spec.vl - spec.v0) * d + (spec.vr - spec.v0) * sign * d
    h += np.diag(n.astype(np.float64) ** 2 + spec.v0)
    # mirror the upper triangle so symmetry is exact by construction
    h = np.triu(h) + np.triu(h, 1).T
    return HamiltonianMatrix(order=basis_size, entries=h, spec=spec)


def _as_entries(h) -> tuple[np.ndarray, PotentialSpec | None]:
    if isinstance(h, HamiltonianMatrix):
        return h.entries, h.spec
    entries = np.asarray(h, dtype=np.float64)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {entries.shape}")
    if not np.array_equal(entries, entries.T):
        raise ValidationError("matrix must be exactly symmetric")
    return entries, None


def diagonalize(h) -> SpectralSolution:
    """Eigenvalues (ascending) and orthonormal coefficient vectors.

    When the matrix has the exact checkerboard structure of a symmetric well
    (all elements with odd n + m zero), the even and odd sectors are solved
    separately so each eigenvector has definite parity; otherwise the full
    matrix goes through the solver in one piece. Note that when the true
    splitting of a pair is below the basis-truncation error the ordering
    within that pair is not meaningful either way.
    """
    entries, spec = _as_entries(h)
    n = entries.shape[0]
    idx = np.arange(n)
    checker = (idx[:, None] + idx[None, :]) % 2 == 1
    if n >= 2 and np.all(entries[checker] == 0.0):
        values = np.empty(n)
        vectors = np.zeros((n, n))
        parts = []
        for rows in (idx[0::2], idx[1::2]):
            vals, vecs = eigh_symmetric(entries[np.ix_(rows, rows)])
            parts.append((rows, vals, vecs))
        all_vals = np.concatenate([vals for _, vals, _ in parts])
        order = np.argsort(all_vals, kind="stable")
        sizes = [len(vals) for _, vals, _ in parts]
        for col, src in enumerate(order):
            part, local = (0, src) if src < sizes[0] else (1, src - sizes[0])
            rows, vals, vecs = parts[part]
            values[col] = vals[local]
            vectors[rows, col] = vecs[:, local]
    else:
        values, vectors = eigh_symmetric(entries)
    return SpectralSolution(
        basis_size=n, energies=values, coefficients=vectors, spec=spec
    )


def solve(spec: PotentialSpec, basis_size: int = DEFAULT_BASIS_SIZE) -> SpectralSolution:
    """Build and diagonalize in one step."""
    return diagonalize(build_hamiltonian(spec, basis_size))


def _basis_integrals(n: np.ndarray, x0: float, x1: float) -> np.ndarray:
    """Integrals of phi_n over [x0, x1] in closed form."""
    return np.sqrt(2.0) * (np.cos(n * np.pi * x0) - np.cos(n * np.pi * x1)) / (n * np.pi)


def _canonical_sign(coeffs: np.ndarray, right_edge: float) -> float:
    """Sign that makes the integral over the right well non-negative.

    Tie-break: non-negative integral over the left well (mirror region).
    """
    n = np.arange(1, coeffs.size + 1)
    s = float(coeffs @ _basis_integrals(n, right_edge, 1.0))
    if s == 0.0:
        s = float(coeffs @ _basis_integrals(n, 0.0, 1.0 - right_edge))
    return -1.0 if s < 0.0 else 1.0


def wavefunction_on_grid(sol: SpectralSolution, state_index: int, grid) -> np.ndarray:
    """psi(x_i) = sum_n c_n sqrt(2) sin(n pi x_i) on the given grid.

    The overall sign is fixed so the integral of psi over the right well is
    non-negative (tie: left well non-negative), which keeps sweep outputs
    continuous. If the solution carries no potential the right region is
    taken as [1/2, 1].
    """
    if not 0 <= state_index < sol.energies.size:
        raise ValidationError(
            f"state_index {state_index} outside 0..{sol.energies.size - 1}"
        )
    x = np.asarray(grid, dtype=np.float64)
    if x.size and (x.min() < 0.0 or x.max() > 1.0):
        raise DomainError("grid points must lie inside the box [0, 1]")
    coeffs = sol.coefficients[:, state_index]
    right_edge = sol.spec.w + sol.spec.b if sol.spec is not None else 0.5
    sign = _canonical_sign(coeffs, right_edge)
    n = np.arange(1, sol.basis_size + 1)
    return sign * (np.sqrt(2.0) * np.sin(np.pi * np.outer(x, n))) @ coeffs

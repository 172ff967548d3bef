"""Spectral route: diagonalization, convergence from above, wavefunctions."""

import numpy as np
import pytest

from doublewell import spectral
from doublewell.errors import DomainError, ValidationError


def test_plain_diagonal_matrix_round_trip():
    sol = spectral.diagonalize(np.diag([1.0, 4.0, 9.0]))
    assert np.array_equal(sol.energies, [1.0, 4.0, 9.0])
    assert np.array_equal(sol.coefficients, np.eye(3))
    assert sol.spec is None


def test_energies_ascending(sol500):
    assert np.all(np.diff(sol500.energies) >= 0.0)


def test_eigenpair_residual_bound(sym500, sol500):
    """||H v - e v|| stays below 1e-8 ||H|| for every kept eigenpair."""
    h = spectral.build_hamiltonian(sym500, sol500.basis_size).entries
    norm = np.max(np.abs(sol500.energies))  # 2-norm of a symmetric matrix
    residual = h @ sol500.coefficients - sol500.coefficients * sol500.energies
    assert np.max(np.linalg.norm(residual, axis=0)) <= 1e-8 * norm


def test_coefficients_orthonormal(sol500):
    v = sol500.coefficients
    gram = v.T @ v
    assert np.max(np.abs(gram - np.eye(v.shape[1]))) < 1e-12


def test_matches_external_eigensolver(sym500, sol500):
    h = spectral.build_hamiltonian(sym500, sol500.basis_size).entries
    reference = np.linalg.eigvalsh(h)  # test-only oracle
    assert np.max(np.abs(sol500.energies - reference)) < 1e-8


def test_energies_converge_from_above(sym500):
    e200 = spectral.solve(sym500, 200).energies[0]
    e400 = spectral.solve(sym500, 400).energies[0]
    e800 = spectral.solve(sym500, 800).energies[0]
    assert e400 <= e200 + 1e-12
    assert e800 <= e400 + 1e-12
    # doubling the basis shrinks the increment
    assert e200 - e400 < 1e-4
    assert e400 - e800 < e200 - e400


def test_near_degenerate_pair_structure(sol500):
    e = sol500.energies
    assert e[1] - e[0] < 1e-4
    assert e[2] - e[1] > 1.0


def test_ground_energy_cross_check(sol500, levels500):
    assert abs(sol500.energies[0] - levels500[0]) < 1e-5
    assert abs(sol500.energies[1] - levels500[1]) < 1e-5


def test_ground_energy_cross_check_deeper_barrier(sym1000, levels1000):
    sol = spectral.solve(sym1000, 600)
    assert abs(sol.energies[0] - levels1000[0]) < 1e-5
    assert abs(sol.energies[1] - levels1000[1]) < 1e-5


def test_symmetric_ground_state_is_even(sol500):
    grid = np.linspace(0.0, 1.0, 2001)
    psi = spectral.wavefunction_on_grid(sol500, 0, grid)
    assert np.max(np.abs(psi - psi[::-1])) < 1e-8


def test_symmetric_first_excited_state_is_odd(sol500):
    grid = np.linspace(0.0, 1.0, 2001)
    psi = spectral.wavefunction_on_grid(sol500, 1, grid)
    assert np.max(np.abs(psi + psi[::-1])) < 1e-8


def test_tilted_ground_state_lives_in_the_lower_well(sol_flea):
    grid = np.linspace(0.0, 1.0, 2001)
    psi = spectral.wavefunction_on_grid(sol_flea, 0, grid)
    assert grid[np.argmax(np.abs(psi))] > 0.6


def test_sign_convention_right_well_integral_non_negative(sol500, sol_flea):
    grid = np.linspace(0.6, 1.0, 801)
    for sol in (sol500, sol_flea):
        for state in range(4):
            psi = spectral.wavefunction_on_grid(sol, state, grid)
            assert np.trapezoid(psi, grid) >= 0.0


def test_wavefunction_grid_must_stay_in_the_box(sol500):
    with pytest.raises(DomainError):
        spectral.wavefunction_on_grid(sol500, 0, np.array([-0.1, 0.5]))
    with pytest.raises(DomainError):
        spectral.wavefunction_on_grid(sol500, 0, np.array([0.5, 1.2]))


def test_state_index_validated(sol500):
    with pytest.raises(ValidationError):
        spectral.wavefunction_on_grid(sol500, -1, np.array([0.5]))
    with pytest.raises(ValidationError):
        spectral.wavefunction_on_grid(sol500, 400, np.array([0.5]))


def test_solve_rejects_tiny_basis(sym500):
    with pytest.raises(ValidationError):
        spectral.solve(sym500, 1)

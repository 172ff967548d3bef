"""Hamiltonian assembly against direct quadrature of the defining integrals.

The matrix element between box modes n and m is n^2 delta_nm plus
2 int_0^1 sin(n pi x) V(x) sin(m pi x) dx; the oracle below evaluates that
integral with adaptive quadrature split at the interfaces, independently of
the closed forms used by the builder.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from doublewell.errors import ValidationError
from doublewell.potential import PotentialSpec, evaluate
from doublewell.spectral import HamiltonianMatrix, build_hamiltonian


def element_by_quadrature(spec, n, m):
    def integrand(x):
        return 2.0 * math.sin(n * math.pi * x) * math.sin(m * math.pi * x) * evaluate(
            spec, x
        )

    edges = (0.0, spec.w, spec.w + spec.b, 1.0)
    total = sum(
        quad(integrand, lo, hi, limit=200)[0] for lo, hi in zip(edges, edges[1:])
    )
    if n == m:
        total += float(n * n)
    return total


def worst_oracle_gap(spec, size):
    h = build_hamiltonian(spec, size).entries
    worst = 0.0
    for i in range(size):
        for j in range(i, size):
            gap = abs(h[i, j] - element_by_quadrature(spec, i + 1, j + 1))
            worst = max(worst, gap)
    return worst


def test_quadrature_oracle_tilted_well():
    spec = PotentialSpec(v0=500.0, vl=0.0, vr=-1e-5, b=0.2)
    assert worst_oracle_gap(spec, 20) < 1e-10


def test_quadrature_oracle_strongly_asymmetric_well():
    spec = PotentialSpec(v0=800.0, vl=2.0, vr=-3.0, b=0.25)
    assert worst_oracle_gap(spec, 12) < 1e-10


def test_flat_potential_gives_pure_kinetic_diagonal():
    spec = PotentialSpec(v0=0.0, vl=0.0, vr=0.0, b=0.2)
    h = build_hamiltonian(spec, 6)
    assert np.array_equal(h.entries, np.diag([1.0, 4.0, 9.0, 16.0, 25.0, 36.0]))


def test_symmetric_well_has_exact_checkerboard_zeros():
    spec = PotentialSpec(v0=500.0, vl=0.0, vr=0.0, b=0.2)
    h = build_hamiltonian(spec, 30).entries
    n = np.arange(1, 31)
    odd_parity_pairs = (n[:, None] + n[None, :]) % 2 == 1
    assert np.all(h[odd_parity_pairs] == 0.0)
    assert np.any(h[~odd_parity_pairs] != 0.0)


def test_entries_exactly_symmetric():
    spec = PotentialSpec(v0=500.0, vl=1.0, vr=-1e-5, b=0.2)
    h = build_hamiltonian(spec, 40).entries
    assert np.array_equal(h, h.T)


def test_basis_size_floor():
    spec = PotentialSpec(v0=500.0, vl=0.0, vr=0.0, b=0.2)
    with pytest.raises(ValidationError):
        build_hamiltonian(spec, 1)


class TestHamiltonianMatrix:
    def test_accepts_symmetric_entries(self):
        m = HamiltonianMatrix(order=2, entries=np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert m.order == 2

    def test_rejects_asymmetric_entries(self):
        with pytest.raises(ValidationError):
            HamiltonianMatrix(order=2, entries=np.array([[1.0, 2.0], [2.1, 1.0]]))

    def test_rejects_mismatched_order(self):
        with pytest.raises(ValidationError):
            HamiltonianMatrix(order=3, entries=np.eye(2))

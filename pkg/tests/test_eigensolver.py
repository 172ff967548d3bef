"""Dense symmetric eigensolver against closed forms and an external oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublewell.eigensolver import eigh_symmetric
from doublewell.errors import ConvergenceError, ValidationError

EPS = np.finfo(np.float64).eps


def second_difference(n):
    """Tridiagonal (2 on the diagonal, 1 off) with known spectrum."""
    return 2.0 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1)


def test_identity_matrix():
    values, vectors = eigh_symmetric(np.eye(4))
    assert np.allclose(values, 1.0, atol=4 * EPS)
    assert np.allclose(vectors.T @ vectors, np.eye(4), atol=16 * EPS)


def test_diagonal_matrix_sorted_ascending():
    values, vectors = eigh_symmetric(np.diag([3.0, 1.0, 2.0]))
    assert np.array_equal(values, [1.0, 2.0, 3.0])
    # each column picks out one coordinate axis
    assert np.allclose(np.abs(vectors), np.eye(3)[:, [1, 2, 0]], atol=4 * EPS)


def test_tridiagonal_closed_form_spectrum():
    """lambda_k = 2 + 2 cos(k pi / (n+1)), accurate to a few ulp of ||H||."""
    n = 60
    values, vectors = eigh_symmetric(second_difference(n))
    k = np.arange(n, 0, -1)
    exact = 2.0 + 2.0 * np.cos(k * np.pi / (n + 1))
    scale = np.max(np.abs(exact))
    assert np.max(np.abs(values - exact)) < 10 * EPS * scale
    assert np.allclose(vectors.T @ vectors, np.eye(n), atol=1e-13)


def test_residual_and_orthonormality_random_matrix():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((40, 40))
    a = (a + a.T) / 2.0
    values, vectors = eigh_symmetric(a)
    residual = a @ vectors - vectors * values
    norm = np.linalg.norm(a, 2)
    assert np.linalg.norm(residual, 2) < 100 * EPS * norm
    assert np.allclose(vectors.T @ vectors, np.eye(40), atol=1e-13)
    assert np.all(np.diff(values) >= 0.0)


@settings(max_examples=25)
@given(n=st.integers(min_value=2, max_value=16), seed=st.integers(0, 2**32 - 1))
def test_matches_external_eigensolver(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-5.0, 5.0, size=(n, n))
    a = (a + a.T) / 2.0
    values, _ = eigh_symmetric(a)
    reference = np.linalg.eigvalsh(a)  # test-only oracle
    scale = 1.0 + np.max(np.abs(reference))
    assert np.max(np.abs(values - reference)) < 1e-12 * scale


def test_single_element():
    values, vectors = eigh_symmetric(np.array([[5.0]]))
    assert np.array_equal(values, [5.0])
    assert np.array_equal(np.abs(vectors), [[1.0]])


def test_empty_matrix_rejected():
    with pytest.raises(ValidationError):
        eigh_symmetric(np.zeros((0, 0)))


def test_non_square_rejected():
    with pytest.raises(ValidationError):
        eigh_symmetric(np.zeros((3, 2)))


def test_iteration_budget_exhaustion_reported():
    with pytest.raises(ConvergenceError) as excinfo:
        eigh_symmetric(second_difference(30), max_iter=1)
    assert excinfo.value.iterations > 1

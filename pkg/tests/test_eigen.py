import numpy as np
import pytest

from uefg.eigen import JacobiDidNotConverge, jacobi_eigenvalues


def test_diagonal_matrix_is_fixed_point():
    vals = jacobi_eigenvalues(np.diag([3.0, -1.0, 2.0]))
    assert sorted(vals) == [-1.0, 2.0, 3.0]


def test_two_by_two():
    vals = sorted(jacobi_eigenvalues([[2.0, 1.0], [1.0, 2.0]]))
    assert vals == pytest.approx([1.0, 3.0], abs=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3, 7, 16, 51])
def test_random_symmetric_matches_lapack(N):
    rng = np.random.default_rng(N)
    X = rng.standard_normal((N, N))
    A = X + X.T
    vals, info = jacobi_eigenvalues(A, return_info=True)
    assert np.allclose(np.sort(vals), np.linalg.eigvalsh(A), atol=1e-9)
    assert info["off"] < 1e-10


def test_degenerate_spectrum():
    # complete graph K_9: eigenvalues 8 and -1 (x8)
    A = np.ones((9, 9)) - np.eye(9)
    assert np.allclose(np.sort(jacobi_eigenvalues(A)), [-1] * 8 + [8], atol=1e-10)


def test_input_is_not_modified():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    jacobi_eigenvalues(A)
    assert A[0, 1] == 1.0


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        jacobi_eigenvalues([[0.0, 1.0], [2.0, 0.0]])
    assert len(jacobi_eigenvalues(np.zeros((0, 0)))) == 0


def test_sweep_limit():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((30, 30))
    with pytest.raises(JacobiDidNotConverge):
        jacobi_eigenvalues(X + X.T, max_sweeps=1)

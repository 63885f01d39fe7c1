import numpy as np
import scipy.linalg
from scipy import sparse

from vacuum_correlations.service.spectrum import (
    bandwidth, block_spectrum, hermitian_spectrum, tridiagonal_spectrum,
)


def _symmetric(rng, n):
    x = rng.standard_normal((n, n))
    return (x + x.T) / 2


def test_block_spectrum_matches_dense(rng):
    blocks = [_symmetric(rng, n) for n in (1, 2, 2, 3, 5, 1)]
    matrix = scipy.linalg.block_diag(*blocks)
    # scramble the ordering so blocks are not contiguous
    perm = rng.permutation(matrix.shape[0])
    matrix = matrix[np.ix_(perm, perm)]
    np.testing.assert_allclose(block_spectrum(sparse.csr_array(matrix)),
                               np.linalg.eigvalsh(matrix), atol=1e-12)


def test_block_spectrum_zero_matrix():
    eigenvalues = block_spectrum(sparse.csr_array((4, 4)))
    np.testing.assert_array_equal(eigenvalues, np.zeros(4))


def test_tridiagonal_spectrum_uses_moduli(rng):
    n = 12
    diagonal = rng.standard_normal(n)
    upper = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    matrix = np.diag(diagonal) + np.diag(upper, 1) + np.diag(upper.conj(), -1)
    np.testing.assert_allclose(tridiagonal_spectrum(diagonal, upper),
                               np.linalg.eigvalsh(matrix), atol=1e-12)


def test_tridiagonal_spectrum_single_entry():
    np.testing.assert_array_equal(tridiagonal_spectrum(np.array([0.25]), np.zeros(0)), [0.25])


def test_hermitian_spectrum_general_complex(rng):
    n = 6
    real = _symmetric(rng, n)
    y = rng.standard_normal((n, n))
    imag = (y - y.T) / 2
    expected = np.linalg.eigvalsh(real + 1j * imag)
    np.testing.assert_allclose(
        hermitian_spectrum(sparse.csr_array(real), sparse.csr_array(imag)), expected, atol=1e-12)


def test_hermitian_spectrum_banded_complex(rng):
    n = 9
    real = np.diag(rng.standard_normal(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    imag = np.diag(0.5 * np.ones(n - 1), 1) - np.diag(0.5 * np.ones(n - 1), -1)
    expected = np.linalg.eigvalsh(real + 1j * imag)
    np.testing.assert_allclose(
        hermitian_spectrum(sparse.csr_array(real), sparse.csr_array(imag)), expected, atol=1e-12)


def test_hermitian_spectrum_real_ignores_empty_imaginary_part(rng):
    real = _symmetric(rng, 5)
    np.testing.assert_allclose(
        hermitian_spectrum(sparse.csr_array(real), sparse.csr_array((5, 5))),
        np.linalg.eigvalsh(real), atol=1e-12)


def test_bandwidth():
    assert bandwidth(sparse.csr_array(np.eye(3))) == 0
    assert bandwidth(sparse.csr_array(np.diag([1.0, 1.0], 1))) == 1
    assert bandwidth(sparse.csr_array((3, 3))) == 0
    assert bandwidth(sparse.csr_array(np.diag([2.0], -2))) == 2

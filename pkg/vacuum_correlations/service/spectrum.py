"""
Eigenvalues of the sparse symmetric / Hermitian matrices built here.

The joint state and its partial transpose split into many small decoupled
blocks; conditional states are tridiagonal. Both structures are detected
from the sparsity pattern, so the routines stay correct for arbitrary input.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from vacuum_correlations.models.exception import NumericalError

logger = logging.getLogger(__name__)


def _coo(matrix) -> sparse.coo_array:
    coo = sparse.coo_array(matrix)
    coo.sum_duplicates()
    coo.eliminate_zeros()
    return coo


def _bandwidth(coo: sparse.coo_array) -> int:
    if coo.nnz == 0:
        return 0
    return int(np.max(np.abs(coo.row - coo.col)))


def bandwidth(matrix) -> int:
    """Largest |i - j| over the stored nonzeros."""
    return _bandwidth(_coo(matrix))


def block_spectrum(matrix) -> np.ndarray:
    """Sorted eigenvalues of a real symmetric sparse matrix, block by block."""
    n = matrix.shape[0]
    coo = _coo(matrix)
    n_comp, labels = connected_components(sparse.csr_array(coo), directed=False)

    sizes = np.bincount(labels, minlength=n_comp)
    order = np.argsort(labels, kind='stable')
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    position = np.empty(n, dtype=np.intp)
    position[order] = np.arange(n) - np.repeat(starts, sizes)

    eigenvalues = []
    row_comp = labels[coo.row]
    for size in np.unique(sizes):
        comps = np.flatnonzero(sizes == size)
        slot = np.full(n_comp, -1, dtype=np.intp)
        slot[comps] = np.arange(comps.size)

        batch = np.zeros((comps.size, size, size))
        mask = slot[row_comp] >= 0
        np.add.at(
            batch,
            (slot[row_comp[mask]], position[coo.row[mask]], position[coo.col[mask]]),
            coo.data[mask],
        )
        try:
            eigenvalues.append(np.linalg.eigvalsh(batch).ravel())
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"Eigensolver failed on {comps.size} blocks of size {size}: {e}")

    return np.sort(np.concatenate(eigenvalues)) if eigenvalues else np.zeros(0)


def tridiagonal_spectrum(diagonal: np.ndarray, off_diagonal: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian tridiagonal matrix.

    Only the moduli of the off-diagonal enter: a diagonal unitary maps any
    Hermitian tridiagonal matrix onto the real one with |e_k|.
    """
    diagonal = np.asarray(diagonal, dtype=float)
    if diagonal.size == 1:
        return diagonal.copy()
    try:
        return scipy.linalg.eigvalsh_tridiagonal(diagonal, np.abs(off_diagonal))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericalError(f"Tridiagonal eigensolver failed (dim {diagonal.size}): {e}")


def hermitian_spectrum(real, imag: Optional[object] = None) -> np.ndarray:
    """Sorted eigenvalues of real + i * imag (real symmetric, imag antisymmetric)."""
    n = real.shape[0]
    if n == 0:
        return np.zeros(0)

    real_coo = _coo(real)
    imag_coo = _coo(imag) if imag is not None else None
    is_real = imag_coo is None or imag_coo.nnz == 0

    tridiagonal = _bandwidth(real_coo) <= 1 and (is_real or _bandwidth(imag_coo) <= 1)
    if tridiagonal and n > 2:
        diagonal = real.diagonal()
        upper = sparse.csr_array(real).diagonal(1)
        if not is_real:
            upper = np.hypot(upper, sparse.csr_array(imag).diagonal(1))
        return tridiagonal_spectrum(diagonal, upper)

    if is_real:
        return block_spectrum(real_coo)

    # real embedding [[A, -B], [B, A]] carries every eigenvalue twice
    embedding = sparse.bmat([[real_coo, -imag_coo], [imag_coo, real_coo]], format='csr')
    doubled = block_spectrum(embedding)
    return doubled[::2]

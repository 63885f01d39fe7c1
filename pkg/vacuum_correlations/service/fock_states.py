"""
Truncated alpha-vacuum states and the Alice-RobI density matrix.

Joint basis |a, n>: Alice excitation a in {0, 1}, region-I Fock level
n in {0, ..., n_dim - 1}, flat index a * n_dim + n with n_dim = n_max + 2
so the |1, n_max + 1> entries of the mixed state fit.
"""

import logging

import numpy as np
from scipy import sparse

from vacuum_correlations.enums.common import Basis
from vacuum_correlations.models.exception import BasisMismatch, InvalidParameter
from vacuum_correlations.models.states import DensityMatrix, TruncatedState
from vacuum_correlations.service.vacuum_core import check_T, tail_mass

logger = logging.getLogger(__name__)


def _check_level(n_max: int) -> int:
    if n_max is None or int(n_max) != n_max or n_max < 0:
        raise InvalidParameter(f"n_max must be a nonnegative integer, got {n_max}")
    return int(n_max)


def _powers(T: float, n_max: int) -> np.ndarray:
    with np.errstate(under='ignore'):
        return np.power(T, np.arange(n_max + 1, dtype=float))


def alpha_vacuum_state(T: float, n_max: int) -> TruncatedState:
    """sqrt(1 - T^2) * T^n on |n_I; n_II>."""
    check_T(T)
    n_max = _check_level(n_max)
    amplitudes = np.sqrt(1.0 - T * T) * _powers(T, n_max)
    with np.errstate(under='ignore'):
        tail = float(np.power(T * T, n_max + 1))
    return TruncatedState(amplitudes=amplitudes, T=T, n_dim=n_max + 2, tail_mass=tail, excitation=0)


def one_particle_state(T: float, n_max: int) -> TruncatedState:
    """(1 - T^2) * T^n * sqrt(n + 1) on |(n+1)_I; n_II>."""
    check_T(T)
    n_max = _check_level(n_max)
    s = T * T
    levels = np.arange(n_max + 1, dtype=float)
    amplitudes = (1.0 - s) * _powers(T, n_max) * np.sqrt(levels + 1.0)
    N = n_max + 1
    with np.errstate(under='ignore'):
        tail = float(np.power(s, N) * ((N + 1) * (1.0 - s) + s))
    return TruncatedState(amplitudes=amplitudes, T=T, n_dim=n_max + 2, tail_mass=tail, excitation=1)


def joint_density_matrix(T: float, n_max: int) -> DensityMatrix:
    """rho_{A,RI} after tracing region II out of (|0>|0_a> + |1>|1_a>) / sqrt(2).

    Each pair level n contributes the rank-1 block spanned by |0, n> and
    |1, n + 1> with weight w_n = (1/2) T^2n (1 - T^2).
    """
    check_T(T)
    n_max = _check_level(n_max)
    eps = 1.0 - T * T
    n_dim = n_max + 2
    levels = np.arange(n_max + 1)

    weights = 0.5 * eps * _powers(T, n_max) ** 2
    coupling = weights * np.sqrt((levels + 1) * eps)
    excited = weights * (levels + 1) * eps

    i0 = levels
    i1 = n_dim + levels + 1
    rows = np.concatenate((i0, i0, i1, i1))
    cols = np.concatenate((i0, i1, i0, i1))
    data = np.concatenate((weights, coupling, coupling, excited))

    dim = 2 * n_dim
    entries = sparse.csr_array(sparse.coo_array((data, (rows, cols)), shape=(dim, dim)))
    entries.eliminate_zeros()
    return DensityMatrix(entries=entries, basis=Basis.JOINT, n_dim=n_dim,
                         trace_deficit=tail_mass(T, n_max))


def joint_density_matrix_from_pure_state(T: float, n_max: int) -> DensityMatrix:
    """Same state, assembled from the two-mode amplitudes with region II
    traced out by explicit index contraction. Used as a cross-check."""
    vacuum = alpha_vacuum_state(T, n_max)
    particle = one_particle_state(T, n_max)
    n_dim = vacuum.n_dim
    levels = np.arange(n_max + 1)

    # psi[a, n_I, n_II]
    psi = np.zeros((2, n_dim, n_max + 1))
    psi[0, levels, levels] = vacuum.amplitudes / np.sqrt(2.0)
    psi[1, levels + 1, levels] = particle.amplitudes / np.sqrt(2.0)

    rho = np.einsum('aik,bjk->aibj', psi, psi).reshape(2 * n_dim, 2 * n_dim)
    deficit = 0.5 * (vacuum.tail_mass + particle.tail_mass)
    return DensityMatrix.from_dense(rho, basis=Basis.JOINT, n_dim=n_dim, trace_deficit=deficit)


def require_basis(rho: DensityMatrix, basis: Basis):
    if rho.basis != basis:
        raise BasisMismatch(f"Expected a {basis.value} density matrix, got {rho.basis.value}")


def _contract(part, n_dim: int, keep_alice: bool, shape):
    if part is None:
        return None
    coo = sparse.coo_array(part)
    a, n = np.divmod(coo.row, n_dim)
    b, m = np.divmod(coo.col, n_dim)
    if keep_alice:
        mask = n == m
        rows, cols = a[mask], b[mask]
    else:
        mask = a == b
        rows, cols = n[mask], m[mask]
    reduced = sparse.coo_array((coo.data[mask], (rows, cols)), shape=shape)
    return sparse.csr_array(reduced)  # duplicates are summed


def reduce_alice(rho: DensityMatrix) -> DensityMatrix:
    """Partial trace over the Fock index."""
    require_basis(rho, Basis.JOINT)
    entries = _contract(rho.entries, rho.n_dim, True, (2, 2))
    imag = _contract(rho.imag, rho.n_dim, True, (2, 2))
    return DensityMatrix(entries=entries, imag=imag, basis=Basis.ALICE, n_dim=rho.n_dim,
                         trace_deficit=rho.trace_deficit)


def reduce_rob(rho: DensityMatrix) -> DensityMatrix:
    """Partial trace over the Alice qubit."""
    require_basis(rho, Basis.JOINT)
    shape = (rho.n_dim, rho.n_dim)
    entries = _contract(rho.entries, rho.n_dim, False, shape)
    imag = _contract(rho.imag, rho.n_dim, False, shape)
    return DensityMatrix(entries=entries, imag=imag, basis=Basis.ROB, n_dim=rho.n_dim,
                         trace_deficit=rho.trace_deficit)


def _swap_alice(part, n_dim: int):
    if part is None:
        return None
    coo = sparse.coo_array(part)
    a, n = np.divmod(coo.row, n_dim)
    b, m = np.divmod(coo.col, n_dim)
    swapped = sparse.coo_array((coo.data, (b * n_dim + n, a * n_dim + m)), shape=part.shape)
    return sparse.csr_array(swapped)


def partial_transpose_alice(rho: DensityMatrix) -> DensityMatrix:
    """((a, n), (b, m)) <- ((b, n), (a, m)). Involutive and trace preserving."""
    require_basis(rho, Basis.JOINT)
    return DensityMatrix(
        entries=_swap_alice(rho.entries, rho.n_dim),
        imag=_swap_alice(rho.imag, rho.n_dim),
        basis=Basis.JOINT,
        n_dim=rho.n_dim,
        trace_deficit=rho.trace_deficit,
        is_psd=False,
    )

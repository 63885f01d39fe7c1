import numpy as np
import pytest

from vacuum_correlations.enums.common import Basis
from vacuum_correlations.models.exception import BasisMismatch, InvalidParameter
from vacuum_correlations.models.states import DensityMatrix
from vacuum_correlations.service.fock_states import (
    alpha_vacuum_state, joint_density_matrix, joint_density_matrix_from_pure_state,
    one_particle_state, partial_transpose_alice, reduce_alice, reduce_rob,
)
from vacuum_correlations.service.vacuum_core import tail_mass


@pytest.mark.parametrize("T", [0.0, 0.3, 0.733, 0.95])
def test_truncated_states_normalised_up_to_tail(T):
    for state in (alpha_vacuum_state(T, 60), one_particle_state(T, 60)):
        assert state.squared_norm + state.tail_mass == pytest.approx(1.0, abs=1e-14)
        assert state.n_max == 60
        assert state.n_dim == 62


def test_one_particle_amplitudes():
    T = 0.5
    state = one_particle_state(T, 3)
    expected = [(1 - T ** 2) * T ** n * np.sqrt(n + 1) for n in range(4)]
    np.testing.assert_allclose(state.amplitudes, expected, rtol=1e-15)
    assert state.excitation == 1


def test_flat_space_vacuum():
    state = alpha_vacuum_state(0.0, 4)
    np.testing.assert_array_equal(state.amplitudes, [1.0, 0.0, 0.0, 0.0, 0.0])
    assert state.tail_mass == 0.0


def test_rejects_bad_level():
    with pytest.raises(InvalidParameter):
        alpha_vacuum_state(0.5, -1)
    with pytest.raises(InvalidParameter):
        joint_density_matrix(0.5, 2.5)
    with pytest.raises(InvalidParameter):
        joint_density_matrix(1.0, 3)


@pytest.mark.parametrize("T", [0.0, 0.5, 0.9])
def test_joint_state_trace_and_symmetry(T):
    rho = joint_density_matrix(T, 80)
    assert rho.basis == Basis.JOINT
    assert rho.dim == 2 * 82
    assert rho.trace() + rho.trace_deficit == pytest.approx(1.0, abs=1e-14)
    assert rho.trace_deficit == tail_mass(T, 80)
    dense = rho.dense()
    np.testing.assert_array_equal(dense, dense.T)


def test_joint_state_entries():
    T = 0.6
    eps = 1 - T ** 2
    rho = joint_density_matrix(T, 10)
    n_dim = rho.n_dim
    assert rho.element(0, 0) == pytest.approx(0.5 * eps)
    assert rho.element(0, n_dim + 1) == pytest.approx(0.5 * eps * np.sqrt(eps))
    assert rho.element(n_dim + 1, n_dim + 1) == pytest.approx(0.5 * eps ** 2)
    assert rho.element(2, n_dim + 3) == pytest.approx(0.5 * eps * T ** 4 * np.sqrt(3 * eps))
    # |1, 0> is never populated
    assert rho.dense()[n_dim].sum() == 0.0


@pytest.mark.parametrize("T", [0.0, 0.4, 0.733])
def test_joint_state_matches_index_contraction(T):
    rho = joint_density_matrix(T, 30)
    oracle = joint_density_matrix_from_pure_state(T, 30)
    np.testing.assert_allclose(rho.dense(), oracle.dense(), atol=1e-15)
    assert rho.trace_deficit == pytest.approx(oracle.trace_deficit, rel=1e-12, abs=1e-300)


def test_reduce_alice_is_diagonal_and_nearly_maximally_mixed():
    rho_a = reduce_alice(joint_density_matrix(0.7, 200))
    assert rho_a.basis == Basis.ALICE
    dense = rho_a.dense()
    assert dense.shape == (2, 2)
    assert dense[0, 1] == 0.0 and dense[1, 0] == 0.0
    np.testing.assert_allclose(np.diag(dense), [0.5, 0.5], atol=1e-12)


def test_reduce_rob_diagonal():
    T = 0.5
    eps = 1 - T ** 2
    rho_r = reduce_rob(joint_density_matrix(T, 20))
    assert rho_r.basis == Basis.ROB
    dense = rho_r.dense()
    np.testing.assert_array_equal(dense, np.diag(np.diag(dense)))
    # <0|rho_RI|0> = w_0, <1|rho_RI|1> = w_1 + w_0 eps
    assert dense[0, 0] == pytest.approx(0.5 * eps)
    assert dense[1, 1] == pytest.approx(0.5 * eps * T ** 2 + 0.5 * eps ** 2)
    assert rho_r.trace() == pytest.approx(joint_density_matrix(T, 20).trace())


def test_partial_transpose_involutive_and_trace_preserving():
    rho = joint_density_matrix(0.8, 50)
    transposed = partial_transpose_alice(rho)
    assert not transposed.is_psd
    assert transposed.trace() == pytest.approx(rho.trace(), abs=1e-15)
    back = partial_transpose_alice(transposed)
    np.testing.assert_array_equal(back.dense(), rho.dense())


def test_partial_transpose_moves_coherences():
    rho = joint_density_matrix(0.5, 5)
    n_dim = rho.n_dim
    transposed = partial_transpose_alice(rho)
    # <0,0|rho|1,1> lands on <1,0|rho^TA|0,1>
    assert transposed.element(n_dim, 1) == rho.element(0, n_dim + 1)
    assert transposed.element(0, n_dim + 1) == 0.0


def test_basis_mismatch():
    rho_a = reduce_alice(joint_density_matrix(0.5, 5))
    with pytest.raises(BasisMismatch):
        reduce_alice(rho_a)
    with pytest.raises(BasisMismatch):
        partial_transpose_alice(rho_a)


def test_reduce_alice_of_product_state():
    n_dim = 5
    ket = np.zeros(2 * n_dim)
    ket[3] = 1.0  # |0>_A x |3>_RI
    rho = DensityMatrix.from_dense(np.outer(ket, ket), basis=Basis.JOINT, n_dim=n_dim)
    np.testing.assert_array_equal(reduce_alice(rho).dense(), np.diag([1.0, 0.0]))
    np.testing.assert_array_equal(reduce_rob(rho).dense(), np.diag([0.0, 0.0, 0.0, 1.0, 0.0]))

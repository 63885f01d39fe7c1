from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import sparse

from vacuum_correlations.enums.common import Basis


class TruncatedState(BaseModel):
    """Real amplitudes over the pair levels n = 0..n_max of a two-mode state.

    Level n stands for |n_I; n_II> (vacuum) or |(n+1)_I; n_II> (one particle).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    amplitudes: Any  # np.ndarray, shape (n_max + 1,)
    T         : float
    n_dim     : int  # Fock dimension of region I that holds every level, n_max + 2
    tail_mass : float
    excitation: int = 0  # 0 for the alpha-vacuum, 1 for the one-particle state

    @property
    def n_max(self) -> int:
        return len(self.amplitudes) - 1

    @property
    def squared_norm(self) -> float:
        return float(np.dot(self.amplitudes, self.amplitudes))


class DensityMatrix(BaseModel):
    """Sparse density matrix.

    ``entries`` is the real part. ``imag`` is the (antisymmetric) imaginary
    part, only set for conditional states after a complex-phase measurement.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    entries      : Any  # scipy.sparse.csr_array
    basis        : Basis
    n_dim        : int
    trace_deficit: float = 0.0
    imag         : Optional[Any] = None
    is_psd       : bool = True  # False after partial transposition

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_complex(self) -> bool:
        return self.imag is not None and self.imag.count_nonzero() > 0

    def trace(self) -> float:
        return float(self.entries.diagonal().sum())

    def dense(self) -> np.ndarray:
        if self.is_complex:
            return self.entries.toarray() + 1j * self.imag.toarray()
        return self.entries.toarray()

    def element(self, i: int, j: int) -> float:
        return float(self.entries[i, j])

    @classmethod
    def from_dense(cls, matrix: np.ndarray, basis: Basis, n_dim: int,
                   trace_deficit: float = 0.0) -> "DensityMatrix":
        matrix = np.asarray(matrix)
        imag = None
        if np.iscomplexobj(matrix):
            imag = sparse.csr_array(matrix.imag)
            matrix = matrix.real
        return cls(entries=sparse.csr_array(matrix), basis=basis, n_dim=n_dim,
                   trace_deficit=trace_deficit, imag=imag)

from enum import Enum


class Basis(str, Enum):
    JOINT = 'joint'    # (a, n), flat index a * n_dim + n
    ALICE = 'alice'    # a in {0, 1}
    ROB   = 'rob'      # Fock level n of region I

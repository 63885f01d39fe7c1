"""
Negativity, entropies, mutual information and discord of the Alice-RobI state.

The spectral values (eigenvalues of the truncated matrices) are the
reference; the printed series are evaluated next to them and the absolute
differences are kept in every report.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import sparse
from scipy.special import entr, xlogy

from vacuum_correlations.enums.common import Basis
from vacuum_correlations.enums.config import NegativityVariant
from vacuum_correlations.models.common import MeasurementDirection
from vacuum_correlations.models.config import MinimizerConfig
from vacuum_correlations.models.exception import (
    DegenerateMeasurement, InvalidParameter, InvalidSpectrum, MinimizerFailure, NumericalError,
)
from vacuum_correlations.models.report import CorrelationReport
from vacuum_correlations.models.states import DensityMatrix
from vacuum_correlations.service.fock_states import (
    joint_density_matrix, partial_transpose_alice, reduce_alice, reduce_rob, require_basis,
)
from vacuum_correlations.service.minimizer import golden_section_minimize, grid_argmin
from vacuum_correlations.service.spectrum import bandwidth as _bandwidth, hermitian_spectrum, tridiagonal_spectrum
from vacuum_correlations.service.vacuum_core import check_T

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
CLIP_TOL = 1e-9          # eigenvalues above -CLIP_TOL are rounding noise
NORM_TOL = 1e-6
MIN_PROBABILITY = 1e-12
MINIMIZER_SLACK = 1e-9
ORACLE_TOL = 1e-8


class Projector(BaseModel):
    """Rank-1 qubit projector as real and imaginary 2x2 parts."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    real: np.ndarray
    imag: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return self.real + 1j * self.imag


def spectrum_of(rho: DensityMatrix) -> np.ndarray:
    eigenvalues = hermitian_spectrum(rho.entries, rho.imag)
    if rho.is_psd and eigenvalues.size and eigenvalues[0] < -CLIP_TOL:
        raise NumericalError(f"{rho.basis.value} density matrix has eigenvalue {eigenvalues[0]:.3e}")
    return eigenvalues


def von_neumann_entropy(rho: Union[DensityMatrix, np.ndarray, List[float]]) -> float:
    """-sum(l log2 l) in bits, with 0 log 0 = 0."""
    if isinstance(rho, DensityMatrix):
        spectrum = spectrum_of(rho)
    else:
        spectrum = np.asarray(rho, dtype=float)

    if spectrum.size and spectrum.min() < -CLIP_TOL:
        raise InvalidSpectrum(f"Spectrum has negative value {spectrum.min():.3e}")
    if spectrum.sum() > 1.0 + NORM_TOL:
        raise InvalidSpectrum(f"Spectrum sums to {spectrum.sum():.12g} > 1")

    spectrum = np.clip(spectrum, 0.0, None)
    return float(entr(spectrum).sum() / LN2)


def negativity_spectral(rho: DensityMatrix) -> float:
    """Absolute sum of the negative eigenvalues of the partial transpose."""
    require_basis(rho, Basis.JOINT)
    transposed = partial_transpose_alice(rho)
    eigenvalues = hermitian_spectrum(transposed.entries, transposed.imag)
    return float(-eigenvalues[eigenvalues < 0].sum())


def negativity_closed(T: float, variant: NegativityVariant, n_max: int,
                      q: Optional[float] = None) -> float:
    """Partial sum of the printed negativity series up to n_max.

    Both variants read coth^2(r) / f^2 as 1 / T^2 under the square root.
    The last term is n (1 - coth^2 r) / f^2 = n (q^2 - 1) / T^2 as printed,
    and n (1 - 1 / T^2) for VARIANT_B. ``q`` defaults to T (Euclidean, f = 1),
    where both coincide.
    """
    check_T(T)
    if n_max < 0:
        raise InvalidParameter(f"n_max must be nonnegative, got {n_max}")
    if q is None:
        q = T
    if not 0.0 <= q <= T:
        raise InvalidParameter(f"q must lie in [0, T = {T}], got {q}")
    if T == 0.0:
        return 0.5

    variant = NegativityVariant(variant)
    s = T * T
    eps = 1.0 - s
    n = np.arange(n_max + 1, dtype=float)
    with np.errstate(under='ignore'):
        weights = 0.25 * eps * np.power(s, n)

    root = np.sqrt((s + n * (eps / s)) ** 2 + 4.0 * eps)
    if variant == NegativityVariant.VARIANT_B:
        last = n * (s - 1.0) / s
    else:
        last = n * (q * q - 1.0) / s
    return float(np.sum(weights * np.abs(root - s + last)))


def _entropies(rho: DensityMatrix) -> Dict[str, float]:
    return {
        'entropy_A'    : von_neumann_entropy(reduce_alice(rho)),
        'entropy_RI'   : von_neumann_entropy(reduce_rob(rho)),
        'entropy_joint': von_neumann_entropy(rho),
    }


def _mutual_informations(entropies: Dict[str, float]) -> Tuple[float, float]:
    s_a, s_r, s_ar = entropies['entropy_A'], entropies['entropy_RI'], entropies['entropy_joint']
    # the tripartite state is pure: S(RII) = S(A,RI), S(A,RII) = S(RI)
    mutual_info_I = s_a + s_r - s_ar
    mutual_info_II = s_a + s_ar - s_r
    return mutual_info_I, mutual_info_II


def mutual_information_spectral(T: float, n_max: int) -> Tuple[float, float]:
    return _mutual_informations(_entropies(joint_density_matrix(T, n_max)))


def mutual_information_closed(T: float, n_max: int) -> float:
    """Partial sum of the printed mutual-information series, coth^2 r / f^2 = 1 / T^2.

    Runs over every Rob level the truncated state holds, n = 0 .. n_max + 1; the
    top level carries only one-particle mass, which is not part of the tail.
    """
    check_T(T)
    if n_max < 0:
        raise InvalidParameter(f"n_max must be nonnegative, got {n_max}")
    if T == 0.0:
        return 2.0

    s = T * T
    eps = 1.0 - s
    n = np.arange(n_max + 2, dtype=float)
    first = 1.0 + n * (eps / s)           # 1 - n + n coth^2 r / f^2
    second = 1.0 + (n + 1.0) * eps        # n + 2 - (n + 1) T^2
    with np.errstate(under='ignore'):
        powers = np.power(s, n)
    bracket = (xlogy(first, first) - xlogy(second, second)) / LN2
    return float(1.0 - 0.5 * math.log2(s) - 0.5 * eps * np.sum(powers * bracket))


def block_eigenvalues(T: float, n_max: int) -> np.ndarray:
    """Nonzero eigenvalues of the joint state, one per rank-1 block."""
    check_T(T)
    s = T * T
    eps = 1.0 - s
    n = np.arange(n_max + 1, dtype=float)
    with np.errstate(under='ignore'):
        return 0.5 * eps * np.power(s, n) * (1.0 + (n + 1.0) * eps)


def joint_entropy_closed(T: float, n_max: int) -> float:
    return von_neumann_entropy(block_eigenvalues(T, n_max))


def measurement_projectors(direction: MeasurementDirection) -> Tuple[Projector, Projector]:
    """Pi_pm = (1 pm x.sigma) / 2 with x the Bloch vector of ``direction``."""
    x, y, z = direction.bloch_vector
    identity = np.eye(2)
    sigma_real = np.array([[z, x], [x, -z]])
    sigma_imag = np.array([[0.0, -y], [y, 0.0]])
    plus = Projector(real=0.5 * (identity + sigma_real), imag=0.5 * sigma_imag)
    minus = Projector(real=0.5 * (identity - sigma_real), imag=-0.5 * sigma_imag)
    return plus, minus


class _RobBlocks:
    """The four Rob-space blocks rho_ab = <a| rho |b> of a joint state.

    Measuring Alice with Pi leaves Rob in Tr_A[(Pi x 1) rho (Pi x 1)] = sum_ab Pi_ba rho_ab.
    """

    def __init__(self, rho: DensityMatrix):
        require_basis(rho, Basis.JOINT)
        N = rho.n_dim
        self.n_dim = N

        def split(part):
            part = sparse.csr_array(part)
            return [[part[a * N:(a + 1) * N, b * N:(b + 1) * N] for b in range(2)] for a in range(2)]

        self.real = split(rho.entries)
        self.imag = split(rho.imag) if rho.is_complex else None

        # every block within one band of the diagonal: conditional states are tridiagonal
        self.bands = None
        if self.imag is None and all(
            _bandwidth(self.real[a][b]) <= 1 for a in range(2) for b in range(2)
        ):
            self.bands = [[(self.real[a][b].diagonal(0), self.real[a][b].diagonal(1))
                           for b in range(2)] for a in range(2)]

    def conditional(self, projector: Projector) -> Tuple[float, DensityMatrix]:
        real = sparse.csr_array((self.n_dim, self.n_dim))
        imag = sparse.csr_array((self.n_dim, self.n_dim))
        for a in range(2):
            for b in range(2):
                pr, pi = float(projector.real[b, a]), float(projector.imag[b, a])
                block = self.real[a][b]
                if pr:
                    real = real + pr * block
                if pi:
                    imag = imag + pi * block
                if self.imag is not None:
                    block_i = self.imag[a][b]
                    if pi:
                        real = real - pi * block_i
                    if pr:
                        imag = imag + pr * block_i

        p = float(real.diagonal().sum())
        if p < MIN_PROBABILITY:
            raise DegenerateMeasurement(f"Measurement outcome has probability {p:.3e}")
        state = DensityMatrix(entries=real / p, imag=imag / p, basis=Basis.ROB, n_dim=self.n_dim)
        return p, state

    def _banded_entropy(self, projector: Projector) -> float:
        """p * S(rho_RI|Pi) straight from the diagonals."""
        pi = projector.matrix
        diagonal = np.zeros(self.n_dim)
        upper = np.zeros(self.n_dim - 1, dtype=complex)
        for a in range(2):
            for b in range(2):
                d, u = self.bands[a][b]
                diagonal += (pi[b, a] * d).real
                upper += pi[b, a] * u

        p = float(diagonal.sum())
        if p < MIN_PROBABILITY:
            raise DegenerateMeasurement(f"Measurement outcome has probability {p:.3e}")
        eigenvalues = tridiagonal_spectrum(diagonal / p, np.abs(upper) / p)
        if eigenvalues[0] < -CLIP_TOL:
            raise NumericalError(f"Conditional state has eigenvalue {eigenvalues[0]:.3e}")
        return p * von_neumann_entropy(np.clip(eigenvalues, 0.0, None))

    def conditional_entropy(self, direction: MeasurementDirection) -> float:
        total = 0.0
        for projector in measurement_projectors(direction):
            if self.bands is not None and self.n_dim > 1:
                total += self._banded_entropy(projector)
            else:
                p, state = self.conditional(projector)
                total += p * von_neumann_entropy(state)
        return total


def conditional_states(rho: DensityMatrix,
                       direction: MeasurementDirection) -> List[Tuple[float, DensityMatrix]]:
    """(p_j, rho_RI|j) for the outcomes + and - of measuring Alice along ``direction``."""
    blocks = _RobBlocks(rho)
    return [blocks.conditional(projector) for projector in measurement_projectors(direction)]


def conditional_entropy(rho: DensityMatrix, direction: MeasurementDirection) -> float:
    """sum_j p_j S(rho_RI|j)."""
    return _RobBlocks(rho).conditional_entropy(direction)


def minimize_conditional_entropy(rho: DensityMatrix,
                                 minimizer: MinimizerConfig) -> Tuple[float, MeasurementDirection]:
    """Coarse theta x phi grid, then golden-section refinement of theta and then phi.

    Grid values within ``entropy_tol`` of the best are ties, won by the smallest
    theta and then the smallest phi. A refined angle replaces the grid angle only
    when it lowers the entropy by more than ``entropy_tol``, so directions along
    which the entropy is flat (phi, or every direction at T = 0) stay on the grid.
    """
    blocks = _RobBlocks(rho)
    tol = minimizer.entropy_tol

    def at(theta: float, phi: float) -> float:
        return blocks.conditional_entropy(MeasurementDirection(theta=theta, phi=phi))

    thetas = np.linspace(0.0, math.pi, minimizer.theta_points)
    phis = np.linspace(0.0, 2 * math.pi, minimizer.phi_points, endpoint=False)
    grid = np.array([[at(theta, phi) for phi in phis] for theta in thetas])
    i, j = grid_argmin(grid, tol=tol)
    grid_best = float(grid[i, j])
    theta, phi = float(thetas[i]), float(phis[j])
    logger.debug("Grid minimum %.12g at theta=%.6f phi=%.6f", grid_best, theta, phi)

    # golden section pins x down to ~sqrt of the tolerance on the objective
    x_tol = math.sqrt(tol)
    window = minimizer.refine_window
    best = grid_best

    def accept(value: float) -> bool:
        if not math.isfinite(value) or value > grid_best + MINIMIZER_SLACK:
            raise MinimizerFailure(
                f"Refined value {value:.12g} is above the grid minimum {grid_best:.12g}")
        return value < best - tol

    d_theta = thetas[1] - thetas[0]
    lo, hi = max(0.0, theta - window * d_theta), min(math.pi, theta + window * d_theta)
    theta_new, value = golden_section_minimize(lambda t: at(t, phi), lo, hi, x_tol)
    if accept(value):
        theta, best = theta_new, value

    if minimizer.phi_points > 1:
        d_phi = phis[1] - phis[0]
        phi_new, value = golden_section_minimize(
            lambda p: at(theta, p), phi - window * d_phi, phi + window * d_phi, x_tol)
        if accept(value):
            phi, best = phi_new, value

    return best, MeasurementDirection(theta=theta, phi=phi)


def _discord_terms(rho: DensityMatrix) -> Tuple[float, float]:
    return von_neumann_entropy(reduce_alice(rho)), von_neumann_entropy(rho)


def discord(T: float, n_max: int,
            minimizer: Optional[MinimizerConfig] = None) -> Tuple[float, MeasurementDirection]:
    """D = S(A) - S(A,RI) + min over Alice projectors of S(RI|A)."""
    minimizer = minimizer or MinimizerConfig()
    rho = joint_density_matrix(T, n_max)
    s_a, s_ar = _discord_terms(rho)
    cond, argmin = minimize_conditional_entropy(rho, minimizer)
    return s_a - s_ar + cond, argmin


def discord_at(T: float, n_max: int, direction: MeasurementDirection) -> float:
    """Discord-like quantity for one fixed measurement direction."""
    rho = joint_density_matrix(T, n_max)
    s_a, s_ar = _discord_terms(rho)
    return s_a - s_ar + conditional_entropy(rho, direction)


def correlation_report(T: float, n_max: int, tail_mass: float,
                       minimizer: Optional[MinimizerConfig] = None,
                       q: Optional[float] = None,
                       theta: Optional[float] = None,
                       truncation_clamped: bool = False) -> CorrelationReport:
    """Every measure for one effective parameter.

    ``q`` feeds the as-printed negativity (defaults to T). With ``theta`` set the
    discord is evaluated at (theta, phi = 0) instead of minimized.
    """
    check_T(T)
    if q is not None:
        q = min(q, T)  # q <= T holds exactly, rounding can break it
    minimizer = minimizer or MinimizerConfig()
    rho = joint_density_matrix(T, n_max)

    entropies = _entropies(rho)
    mutual_info_I, mutual_info_II = _mutual_informations(entropies)

    if theta is None:
        cond, direction = minimize_conditional_entropy(rho, minimizer)
    else:
        direction = MeasurementDirection(theta=theta, phi=0.0)
        cond = conditional_entropy(rho, direction)
    discord_value = entropies['entropy_A'] - entropies['entropy_joint'] + cond

    negativity = negativity_spectral(rho)
    negativity_printed = negativity_closed(T, NegativityVariant.AS_PRINTED, n_max, q=q)
    negativity_b = negativity_closed(T, NegativityVariant.VARIANT_B, n_max)
    mutual_info_closed = mutual_information_closed(T, n_max)
    entropy_joint_closed = joint_entropy_closed(T, n_max)

    deltas = {
        'negativity_variantB'    : abs(negativity_b - negativity),
        'negativity_as_printed'  : abs(negativity_printed - negativity),
        'mutual_info'            : abs(mutual_info_closed - mutual_info_I),
        'entropy_joint'          : abs(entropy_joint_closed - entropies['entropy_joint']),
        'mutual_info_conservation': abs(mutual_info_I + mutual_info_II - 2.0),
    }
    if deltas['negativity_variantB'] > ORACLE_TOL or deltas['mutual_info'] > ORACLE_TOL:
        logger.warning("Closed form disagrees with the spectral value at T = %.12g: %s", T, deltas)

    return CorrelationReport(
        T                            = T,
        negativity_spectral          = negativity,
        negativity_closed_as_printed = negativity_printed,
        negativity_closed_variantB   = negativity_b,
        entropy_A                    = entropies['entropy_A'],
        entropy_RI                   = entropies['entropy_RI'],
        entropy_joint                = entropies['entropy_joint'],
        entropy_joint_closed         = entropy_joint_closed,
        mutual_info_I                = mutual_info_I,
        mutual_info_II               = mutual_info_II,
        mutual_info_closed           = mutual_info_closed,
        discord                      = discord_value,
        discord_argmin               = direction,
        discord_minimized            = theta is None,
        classical_correlation        = mutual_info_I - discord_value,
        n_max_used                   = n_max,
        tail_mass                    = tail_mass,
        truncation_clamped           = truncation_clamped,
        closed_vs_oracle_deltas      = deltas,
    )

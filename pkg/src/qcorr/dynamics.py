"""Qubit Lindblad dynamics over the operator basis {I, sigma_x, sigma_y, sigma_z}.

Superoperators act on column-stacked density matrices:
``vec(X) = X.reshape(-1, order="F")``, so ``vec(A X B) = (B^T kron A) vec(X)``.
"""

from dataclasses import dataclass

import numpy as np

from ._tol import TOL, Tolerances
from .channels import KrausChannel, extend_on_B
from .correlation import one_way_deficit, quantum_discord
from .linalg import PAULIS, as_matrix, dagger, frobenius_norm, matrix_exp
from .states import InvalidStateError, assemble_cq_state, validate_density

BASIS = PAULIS
_EYE = np.eye(2, dtype=complex)
_EVOLVE_TOL = Tolerances(hermitian=TOL.evolve_state, trace=TOL.evolve_state, psd=TOL.evolve_state)


@dataclass(frozen=True)
class LindbladGenerator:
    """Hamiltonian ``hamiltonian`` (hbar = 1) and 4x4 Hermitian coefficient
    matrix ``gamma`` indexed by (I, sigma_x, sigma_y, sigma_z).

    With ``check_psd`` the dissipative block (indices 1..3) must be positive
    semidefinite so the evolution stays physical.
    """

    hamiltonian: np.ndarray
    gamma: np.ndarray
    check_psd: bool = True

    def __post_init__(self):
        h = as_matrix(self.hamiltonian)
        g = as_matrix(self.gamma)
        if h.shape != (2, 2) or g.shape != (4, 4):
            raise ValueError("need a 2x2 Hamiltonian and a 4x4 coefficient matrix")
        if frobenius_norm(h - dagger(h)) > TOL.hermitian:
            raise ValueError("Hamiltonian is not Hermitian")
        if frobenius_norm(g - dagger(g)) > TOL.hermitian:
            raise ValueError("coefficient matrix is not Hermitian")
        if self.check_psd:
            lowest = np.linalg.eigvalsh(g[1:, 1:])[0]
            if lowest < -TOL.psd:
                raise ValueError(f"dissipative block is not positive semidefinite ({lowest:.3g})")
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "gamma", g)


def vec(x):
    return np.asarray(x).reshape(-1, order="F")


def unvec(v, d=2):
    return np.asarray(v).reshape(d, d, order="F")


def lindblad_rhs(g, rho):
    """L(rho) evaluated term by term."""
    rho = as_matrix(rho)
    h = g.hamiltonian
    out = -1j * (h @ rho - rho @ h)
    for a, fa in enumerate(BASIS):
        for b, fb in enumerate(BASIS):
            c = g.gamma[a, b]
            if c == 0:
                continue
            fbd_fa = dagger(fb) @ fa
            out = out + c * (fa @ rho @ dagger(fb) - 0.5 * (fbd_fa @ rho + rho @ fbd_fa))
    return out


def build_superoperator(g):
    """4x4 matrix of L acting on column-stacked qubit operators."""
    h = g.hamiltonian
    sup = -1j * (np.kron(_EYE, h) - np.kron(h.T, _EYE))
    for a, fa in enumerate(BASIS):
        for b, fb in enumerate(BASIS):
            c = g.gamma[a, b]
            if c == 0:
                continue
            fbd_fa = dagger(fb) @ fa
            sup = sup + c * (np.kron(fb.conj(), fa)
                             - 0.5 * (np.kron(_EYE, fbd_fa) + np.kron(fbd_fa.T, _EYE)))
    return sup


@dataclass(frozen=True)
class ClassicalityCheck:
    """Outcome of the classicality-preservation test.

    ``preserves`` comes from ||L(I)||_F; ``imag_test`` is the equivalent
    condition that the dissipative block of gamma is real.
    """

    preserves: bool
    identity_defect: float
    imag_defect: float
    imag_test: bool

    @property
    def consistent(self):
        return self.preserves == self.imag_test


def preserves_classicality(g, tol=TOL.lindblad_identity):
    identity_defect = frobenius_norm(lindblad_rhs(g, _EYE))
    imag = np.abs(g.gamma[1:, 1:].imag)
    imag_defect = float(imag.max())
    # ||L(I)||_F = 4 sqrt(2) * sqrt(sum_{a<b} (Im gamma_ab)^2) on the Pauli block
    imag_norm = 4 * np.sqrt(2) * np.sqrt(np.sum(np.triu(imag, 1) ** 2))
    return ClassicalityCheck(bool(identity_defect < tol), identity_defect, imag_defect,
                             bool(imag_norm < tol))


def propagator(g, t):
    if t < 0:
        raise ValueError("time must be non-negative")
    return matrix_exp(build_superoperator(g) * t)


def evolve(g, rho0, t):
    """exp(L t) applied to ``rho0``."""
    rho0 = validate_density(rho0)
    rho = unvec(propagator(g, t) @ vec(rho0))
    rho = (rho + dagger(rho)) / 2
    try:
        return validate_density(rho, _EVOLVE_TOL)
    except InvalidStateError as exc:
        raise InvalidStateError(f"evolved state is unphysical, check gamma: {exc}") from exc


def superoperator_to_channel(sup, d=2):
    """Kraus form of a completely positive superoperator via its Choi matrix."""
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            eij = np.zeros((d, d), dtype=complex)
            eij[i, j] = 1
            choi += np.kron(eij, unvec(sup @ vec(eij), d))
    lam, vecs = np.linalg.eigh((choi + dagger(choi)) / 2)
    if lam[0] < -TOL.evolve_state:
        raise ValueError(f"superoperator is not completely positive ({lam[0]:.3g})")
    kraus = [np.sqrt(l) * vecs[:, k].reshape(d, d).T for k, l in enumerate(lam) if l > 1e-14]
    return KrausChannel(tuple(kraus))


def channel_at(g, t):
    """The channel exp(L t) in Kraus form."""
    return superoperator_to_channel(propagator(g, t))


def dephasing_generator(rate):
    """Pure dephasing: gamma_zz = rate, so coherences decay as exp(-2 rate t)."""
    gamma = np.zeros((4, 4), dtype=complex)
    gamma[3, 3] = rate
    return LindbladGenerator(np.zeros((2, 2)), gamma)


def amplitude_damping_generator(rate):
    """Decay |1> -> |0> at ``rate`` with jump operator |0><1| = (sigma_x + i sigma_y) / 2."""
    c = np.array([0, 0.5, 0.5j, 0])
    return LindbladGenerator(np.zeros((2, 2)), rate * np.outer(c, c.conj()))


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    deficit: float
    discord: float
    converged: bool


def discord_trajectory(g, ensemble, times, settings=None):
    """Deficit and discord of (I kron exp(L t)) applied to a two-qubit cq state."""
    if tuple(ensemble.dims) != (2, 2):
        raise ValueError("trajectories are defined for two-qubit ensembles")
    rho0 = assemble_cq_state(ensemble)
    return state_trajectory(g, rho0, times, settings)


def state_trajectory(g, rho0, times, settings=None):
    """Deficit and discord of (I kron exp(L t)) rho0 for a two-qubit state."""
    rho0 = validate_density(rho0)
    out = []
    for t in times:
        rho = extend_on_B(channel_at(g, float(t)), 2)(rho0)
        rho = (rho + dagger(rho)) / 2
        rho = rho / np.trace(rho).real
        dft = one_way_deficit(rho, (2, 2), settings)
        dsc = quantum_discord(rho, (2, 2), settings)
        out.append(TrajectoryPoint(float(t), dft.value, dsc.value, dft.converged and dsc.converged))
    return out


def random_generator(seed=None, real_block=False, scale=1.0):
    """Random physical generator: Hermitian H and positive semidefinite gamma.

    With ``real_block`` the sigma block of gamma is replaced by its real part,
    which keeps it positive semidefinite and makes the dynamics unital.
    """
    rng = np.random.default_rng(seed)
    h = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    gamma = scale * (g @ dagger(g)) / 4
    if real_block:
        gamma[1:, 1:] = gamma[1:, 1:].real
    return LindbladGenerator((h + dagger(h)) / 2, gamma)

"""Which local qubit channels create correlation from classical states.

A channel on qubit B keeps every half-classical two-qubit state classical
exactly when it is unital or completely decohering. For the remaining
channels :func:`find_witness` builds an explicit classical input whose image
has positive discord. For qutrits unitality is not enough, as
:func:`qutrit_counterexample` shows.
"""

from dataclasses import dataclass, field

import numpy as np

from ._tol import TOL
from .channels import (
    ChannelClass,
    ChannelClassification,
    KrausChannel,
    apply,
    extend_on_B,
    is_mixing,
    qutrit_mixing_channel,
    structural_class,
    QUTRIT_UNITARY,
)
from .correlation import (
    OptimizationSettings,
    _qubit_unitaries,
    basis_from_parameters,
    one_way_deficit,
    quantum_discord,
)
from .linalg import commutator, dagger, frobenius_norm
from .optimize import nelder_mead_batch
from .states import ClassicalQuantumEnsemble, assemble_cq_state, basis_ket, random_cq_ensemble


class WitnessNotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class Witness:
    ensemble: ClassicalQuantumEnsemble
    discord: float
    deficit: float
    basis_params: tuple
    commutator_norm: float
    converged: bool


@dataclass
class ClassificationReport:
    classification: ChannelClassification
    witness: Witness = None
    commutator_scan: list = field(default_factory=list)

    @property
    def channel_class(self):
        return self.classification.channel_class


def _orthogonal_images(ch, u):
    """Lambda(u|0><0|u^dag) and Lambda(u|1><1|u^dag) for a stack of unitaries."""
    k = np.array(ch.kraus)
    out = []
    for i in range(2):
        ket = u[:, :, i]
        img = np.einsum("kab,nb->nka", k, ket)
        out.append(np.einsum("nka,nkb->nab", img, img.conj()))
    return out


def basis_commutator_norm(ch, points):
    """||[Lambda(u|0><0|u^dag), Lambda(u|1><1|u^dag)]||_F over Bloch angles (theta, phi)."""
    r0, r1 = _orthogonal_images(ch, _qubit_unitaries(np.atleast_2d(points)))
    c = r0 @ r1 - r1 @ r0
    return np.linalg.norm(c, axis=(1, 2))


def _scan_grid(n):
    theta = np.linspace(0, np.pi, n)
    phi = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return np.array([(t, p) for t in theta for p in phi])


def _witness_ensemble(params):
    u = basis_from_parameters(2, params).unitary
    blocks = [np.diag([1, 0]).astype(complex), np.diag([0, 1]).astype(complex)]
    return ClassicalQuantumEnsemble.from_terms(
        [(0.5, blocks[0], u[:, 0]), (0.5, blocks[1], u[:, 1])], (2, 2))


def commutator_scan(ch, grid=48):
    pts = _scan_grid(grid)
    return pts, basis_commutator_norm(ch, pts)


def find_witness(ch, grid=48, settings=None, tol=TOL.commutator):
    """Classical input state whose image under I kron ``ch`` carries discord.

    Scans the measurement-basis angles for the largest commutator of the
    images of two orthogonal basis states, refines the best grid point, and
    builds the equal-weight ensemble with A-flags |0>, |1> on that basis.
    Raises :class:`WitnessNotFound` when the commutator stays below ``tol``.
    """
    if ch.dim != 2:
        raise ValueError("witness search is defined for qubit channels")
    pts, norms = commutator_scan(ch, grid)
    top = norms.max()
    if top < tol:
        raise WitnessNotFound(f"largest basis commutator {top:.3g} is below {tol:g}")
    # lowest index among numerical ties
    start = pts[np.flatnonzero(norms >= top - 1e-12)[0]]
    x, f, _ = nelder_mead_batch(lambda p: -basis_commutator_norm(ch, p), start[None],
                                0.5 * np.pi / grid, xatol=1e-9, fatol=1e-14)
    params = tuple(x[0]) if -f[0] >= top else tuple(start)
    c_norm = float(basis_commutator_norm(ch, np.array([params]))[0])

    ensemble = _witness_ensemble(params)
    rho = apply(extend_on_B(ch, 2), assemble_cq_state(ensemble))
    rho = (rho + dagger(rho)) / 2
    dsc = quantum_discord(rho, (2, 2), settings)
    dft = one_way_deficit(rho, (2, 2), settings)
    if dsc.value <= 1e-6 or dft.value <= 1e-6:
        raise WitnessNotFound(f"commutator {c_norm:.3g} but discord {dsc.value:.3g}, "
                              f"deficit {dft.value:.3g}")
    return Witness(ensemble, dsc.value, dft.value, tuple(float(x) for x in params), float(c_norm), dsc.converged and dft.converged)


def classify_qubit_channel(ch, tol=TOL.unitality, grid=48, settings=None):
    """Sort a qubit channel into mixing, completely decohering, both, or neither.

    Channels in the last class come with a witness state.
    """
    if ch.dim != 2:
        raise ValueError("classification is only defined for qubit channels; "
                         "see qutrit_counterexample for qutrits")
    cls = structural_class(ch, tol)
    pts, norms = commutator_scan(ch, grid)
    scan = [(tuple(p), float(c)) for p, c in zip(pts, norms)]
    report = ClassificationReport(cls, None, scan)
    if cls.channel_class is ChannelClass.NEITHER:
        report.witness = find_witness(ch, grid, settings)
    return report


def unitality_commutator_defect(ch, n_states=50, seed=0):
    """max over random states of ||[sum_i E_i E_i^dag, Lambda(rho)]||_F."""
    from .states import random_density_matrix

    rng = np.random.default_rng(seed)
    s = sum(k @ dagger(k) for k in ch.kraus)
    return max(frobenius_norm(commutator(s, apply(ch, random_density_matrix(ch.dim, rng))))
               for _ in range(n_states))


QUTRIT_COMMUTATOR_PATTERN = np.array(
    [
        [0, 0.5, -1 / (2 * np.sqrt(2))],
        [-0.5, 0, -1 / (2 * np.sqrt(2))],
        [1 / (2 * np.sqrt(2)), 1 / (2 * np.sqrt(2)), 0],
    ]
)


@dataclass(frozen=True)
class QutritReport:
    e0: float
    e1: float
    mixing: bool
    unitality_defect: float
    commutator: np.ndarray
    coefficient: float
    shape_error: float
    deficit: float
    discord: float
    converged: bool


def qutrit_counterexample(e0, e1, settings=None, measure=True):
    """Unital qutrit channel that turns a classical state into a discordant one.

    The commutator of the images of |0><0| and |1><1| is a real multiple of
    a fixed antisymmetric matrix; ``coefficient`` is that multiple and
    ``shape_error`` the relative residual after projecting onto the pattern.
    With ``measure=False`` the deficit and discord optimizations are skipped
    and reported as NaN.
    """
    ch = qutrit_mixing_channel(e0, e1)
    mixing, u_def = is_mixing(ch)
    p0 = np.diag([1, 0, 0]).astype(complex)
    p1 = np.diag([0, 1, 0]).astype(complex)
    comm = commutator(apply(ch, p0), apply(ch, p1))
    pat = QUTRIT_COMMUTATOR_PATTERN
    coef = float(np.real(np.vdot(pat, comm)) / np.vdot(pat, pat).real)
    c_norm = frobenius_norm(comm)
    shape_error = frobenius_norm(comm - coef * pat) / c_norm if c_norm > 0 else 0.0

    ensemble = ClassicalQuantumEnsemble.from_terms(
        [(0.5, p0, basis_ket(0, 3)), (0.5, p1, basis_ket(1, 3))], (3, 3))
    if not measure:
        return QutritReport(float(e0), float(e1), bool(mixing), u_def, comm, coef, shape_error,
                            float("nan"), float("nan"), True)
    rho = apply(extend_on_B(ch, 3), assemble_cq_state(ensemble))
    rho = (rho + dagger(rho)) / 2
    dft = one_way_deficit(rho, (3, 3), settings)
    dsc = quantum_discord(rho, (3, 3), settings)
    return QutritReport(float(e0), float(e1), bool(mixing), u_def, comm, coef, shape_error,
                        dft.value, dsc.value, dft.converged and dsc.converged)


@dataclass
class Theorem1Report:
    classification: ChannelClassification
    max_deficit: float
    max_discord: float
    n_states: int
    witness: Witness = None
    converged: bool = True

    @property
    def holds(self):
        """Classical states stay classical for mixing/decohering channels, and a
        discord-creating input exists otherwise."""
        if self.classification.channel_class is ChannelClass.NEITHER:
            return self.witness is not None and self.witness.discord > 1e-6
        return self.max_deficit < 1e-6 and self.max_discord < 1e-6


def verify_theorem1(ch, n_states=50, seed=0, settings=None, include_witness=True):
    """Apply I kron ``ch`` to random classical-quantum states and measure what it creates."""
    if ch.dim != 2:
        raise ValueError("verify_theorem1 is defined for qubit channels")
    cls = structural_class(ch)
    ext = extend_on_B(ch, 2)
    rng = np.random.default_rng(seed)
    ensembles = [random_cq_ensemble((2, 2), rng) for _ in range(n_states)]
    witness = None
    if cls.channel_class is ChannelClass.NEITHER and include_witness:
        witness = find_witness(ch, settings=settings)
        ensembles.append(witness.ensemble)
    max_dft = max_dsc = -np.inf
    converged = True
    for ens in ensembles:
        rho = ext(assemble_cq_state(ens))
        rho = (rho + dagger(rho)) / 2
        dft = one_way_deficit(rho, (2, 2), settings)
        dsc = quantum_discord(rho, (2, 2), settings)
        max_dft, max_dsc = max(max_dft, dft.value), max(max_dsc, dsc.value)
        converged &= dft.converged and dsc.converged
    return Theorem1Report(cls, float(max_dft), float(max_dsc), len(ensembles), witness, converged)

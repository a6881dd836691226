"""One-way quantum deficit and quantum discord.

Both quantities are minima over rank-1 projective measurements on the
second subsystem. The minimization runs a coarse grid over a unitary
parametrization of the measurement basis and refines the best grid points
with Nelder-Mead.
"""

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from ._tol import TOL
from .optimize import nelder_mead_batch
from .linalg import DimensionError, as_matrix, commutator, frobenius_norm, partial_trace, unitary_from_generators
from .states import entropy_of_spectrum, ket_to_dm, validate_density, von_neumann_entropy


@dataclass(frozen=True)
class OptimizationSettings:
    """Knobs for the basis search.

    ``grid_points_per_angle=None`` picks 24 for a qubit and 8 for a qutrit.
    ``refine_iterations`` is the Nelder-Mead budget per free parameter.
    """

    grid_points_per_angle: int = None
    refine_iterations: int = 200
    refine_tolerance: float = 1e-10
    restarts: int = 8

    def __post_init__(self):
        if self.grid_points_per_angle is not None and self.grid_points_per_angle < 1:
            raise ValueError("grid_points_per_angle must be positive")
        if self.refine_iterations < 1 or self.refine_tolerance <= 0 or self.restarts < 1:
            raise ValueError("optimization settings must be positive")

    def grid_for(self, dim_b):
        if self.grid_points_per_angle is not None:
            return self.grid_points_per_angle
        return {2: 24, 3: 8}.get(dim_b, 3)


@dataclass(frozen=True)
class MeasurementBasis:
    dim_b: int
    params: tuple
    unitary: np.ndarray

    @property
    def kets(self):
        return [self.unitary[:, i] for i in range(self.dim_b)]

    @property
    def projectors(self):
        return [ket_to_dm(k) for k in self.kets]


@dataclass(frozen=True)
class CorrelationResult:
    value: float
    basis: MeasurementBasis
    converged: bool


def n_basis_params(dim_b):
    return dim_b * dim_b - dim_b


def _qubit_unitary(theta, phi):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -np.exp(-1j * phi) * s], [np.exp(1j * phi) * s, c]])


def _qutrit_unitaries(points):
    t12, t13, t23, delta, alpha, beta = np.asarray(points, dtype=float).T
    n = len(t12)

    def rotation(i, j, t, phase=None):
        r = np.zeros((n, 3, 3), dtype=complex)
        r[:, 3 - i - j, 3 - i - j] = 1
        r[:, i, i] = r[:, j, j] = np.cos(t)
        ph = 1 if phase is None else np.exp(1j * phase)
        r[:, i, j] = np.sin(t) / ph
        r[:, j, i] = -np.sin(t) * ph
        return r

    phases = np.zeros((n, 3, 3), dtype=complex)
    phases[:, 0, 0] = 1
    phases[:, 1, 1] = np.exp(1j * alpha)
    phases[:, 2, 2] = np.exp(1j * beta)
    return phases @ rotation(1, 2, t23) @ rotation(0, 2, t13, delta) @ rotation(0, 1, t12)


def _qutrit_unitary(*params):
    return _qutrit_unitaries(np.array([params]))[0]


def _offdiag_generator_unitary(params, d):
    # zero weight on the diagonal (Cartan) generators, which only rephase columns
    full = np.zeros(d * d - 1)
    full[: d * d - d] = params
    return unitary_from_generators(full, d)


def basis_unitary(dim_b, params):
    params = np.asarray(params, dtype=float)
    if params.shape != (n_basis_params(dim_b),):
        raise ValueError(f"a {dim_b}-level basis takes {n_basis_params(dim_b)} angles, "
                         f"got {params.size}")
    if dim_b == 2:
        return _qubit_unitary(*params)
    if dim_b == 3:
        return _qutrit_unitary(*params)
    return _offdiag_generator_unitary(params, dim_b)


def basis_from_parameters(dim_b, params):
    """Measurement basis from ``dim_b**2 - dim_b`` real angles.

    Qubit: ``(theta, phi)`` with columns u|0>, u|1> on the Bloch sphere.
    Qutrit: three plane rotations ``(t12, t13, t23)``, a mixing phase
    ``delta`` and two row phases ``(alpha, beta)``.
    """
    return MeasurementBasis(dim_b, tuple(float(x) for x in params), basis_unitary(dim_b, params))


def _angle_grid(dim_b, n, rng=None):
    if dim_b == 2:
        axes = [np.linspace(0, np.pi, n), np.linspace(0, 2 * np.pi, n, endpoint=False)]
    elif dim_b == 3:
        rot = np.linspace(0, np.pi / 2, n)
        ph = np.linspace(0, 2 * np.pi, n, endpoint=False)
        axes = [rot, rot, rot, ph, ph, ph]
    else:
        warnings.warn(f"measurement search on a {dim_b}-level system is slow and sampled, not gridded")
        rng = np.random.default_rng(0)
        return rng.uniform(-np.pi, np.pi, size=(4096, n_basis_params(dim_b)))
    return np.array(list(itertools.product(*axes)))


def _unitaries(dim_b, points):
    return np.array([basis_unitary(dim_b, p) for p in points])


def _qubit_unitaries(points):
    theta, phi = points[:, 0], points[:, 1]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.empty((len(points), 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 0, 1] = -np.exp(-1j * phi) * s
    u[:, 1, 0] = np.exp(1j * phi) * s
    u[:, 1, 1] = c
    return u


def _batch_unitaries(dim_b, points):
    if dim_b == 2:
        return _qubit_unitaries(np.asarray(points, dtype=float))
    if dim_b == 3:
        return _qutrit_unitaries(points)
    return _unitaries(dim_b, points)


def _entropy_1d(lam):
    lam = lam[lam > TOL.entropy_cutoff]
    return -float(np.dot(lam, np.log2(lam)))


class _Objective:
    """Measured entropies of a bipartite state for batches of B bases.

    Measuring B in basis {|b_i>} leaves a block-diagonal state whose blocks
    are the unnormalized conditional states <b_i| rho |b_i> on A, so the
    spectrum of the measured state is the union of the block spectra.
    """

    def __init__(self, rho, dims):
        self.dims = dims
        da, db = dims
        self.tensor = rho.reshape(da, db, da, db)
        self.s_ab = von_neumann_entropy(rho, validate=False)
        self.s_b = von_neumann_entropy(partial_trace(rho, dims, "B"), validate=False)

    def measured(self, u):
        """Return (entropy of the measured state, entropy of the outcome distribution).

        ``u`` is one basis unitary (kets as columns) or a stack of them.
        """
        if u.ndim == 2:
            blocks = np.einsum("ji,ajcl,li->ica", u.conj(), self.tensor, u)
            lam = np.linalg.eigvalsh(blocks)
            return _entropy_1d(lam.ravel()), _entropy_1d(lam.sum(axis=-1))
        blocks = np.einsum("nji,ajcl,nli->nica", u.conj(), self.tensor, u,
                           optimize=len(u) > 64)
        lam = np.linalg.eigvalsh(blocks)
        s_measured = entropy_of_spectrum(lam.reshape(len(u), -1))
        s_outcomes = entropy_of_spectrum(lam.sum(axis=-1))
        return s_measured, s_outcomes

    def deficit(self, u):
        s_d, _ = self.measured(u)
        return s_d - self.s_ab

    def discord(self, u):
        s_d, s_p = self.measured(u)
        return (s_d - s_p) - (self.s_ab - self.s_b)


def _grid_step(dim_b, n):
    if dim_b == 2:
        return 0.5 * np.array([np.pi / max(n - 1, 1), 2 * np.pi / n])
    if dim_b == 3:
        return 0.5 * np.array([np.pi / 2 / max(n - 1, 1)] * 3 + [2 * np.pi / n] * 3)
    return 0.3


def _minimize(fn, dim_b, settings):
    n_grid = settings.grid_for(dim_b)
    points = _angle_grid(dim_b, n_grid)
    values = np.concatenate([fn(_batch_unitaries(dim_b, chunk))
                             for chunk in np.array_split(points, max(1, len(points) // 65536))])
    starts = points[np.argsort(values, kind="stable")[: settings.restarts]]
    x, f, _ = nelder_mead_batch(
        lambda pts: fn(_batch_unitaries(dim_b, pts)), starts, _grid_step(dim_b, n_grid),
        xatol=1e-7, fatol=settings.refine_tolerance,
        max_iter=settings.refine_iterations * n_basis_params(dim_b),
    )
    order = np.argsort(f, kind="stable")
    best = float(f[order[0]])
    converged = len(f) < 2 or f[order[1]] - best <= TOL.converged
    return CorrelationResult(best, basis_from_parameters(dim_b, x[order[0]]), bool(converged))


def _prepare(rho_ab, dims):
    rho_ab = validate_density(rho_ab)
    da, db = dims
    if rho_ab.shape[0] != da * db:
        raise DimensionError(f"state of size {rho_ab.shape[0]} does not match dims {dims}")
    return _Objective(rho_ab, tuple(dims))


def one_way_deficit(rho_ab, dims, settings=None):
    """min over von Neumann measurements on B of S(rho^D) - S(rho_AB), in bits."""
    obj = _prepare(rho_ab, dims)
    return _minimize(obj.deficit, dims[1], settings or OptimizationSettings())


def quantum_discord(rho_ab, dims, settings=None):
    """min over von Neumann measurements on B of S(A|B)_{rho^D} - S(A|B)_rho, in bits."""
    obj = _prepare(rho_ab, dims)
    return _minimize(obj.discord, dims[1], settings or OptimizationSettings())


def post_measurement_state(rho_ab, dims, basis):
    """sum_i (I (x) P_i) rho (I (x) P_i) for the projectors of ``basis``."""
    rho_ab = as_matrix(rho_ab)
    da, db = dims
    if rho_ab.shape[0] != da * db or basis.dim_b != db:
        raise DimensionError(f"state of size {rho_ab.shape[0]} and a {basis.dim_b}-level basis "
                             f"do not match dims {dims}")
    eye = np.eye(da)
    out = np.zeros_like(rho_ab)
    for proj in basis.projectors:
        p = np.kron(eye, proj)
        out += p @ rho_ab @ p
    return out


def zero_discord_separable_check(terms, tol=TOL.commutator):
    """Zero-discord test for a separable decomposition sum_i p_i xiA_i (x) xiB_i.

    The state is classical on B exactly when all B components commute
    pairwise. Returns ``(passes, largest commutator norm)``.
    """
    bs = [as_matrix(xb) for _, _, xb in terms]
    worst = max((frobenius_norm(commutator(a, b)) for a, b in itertools.combinations(bs, 2)),
                default=0.0)
    return worst < tol, worst

"""Kraus channels, standard constructors and structural tests."""

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from ._tol import TOL
from .linalg import (
    PAULIS,
    SIGMA_I,
    SIGMA_Z,
    DimensionError,
    as_matrix,
    commutator,
    dagger,
    frobenius_norm,
    gell_mann_basis,
)
from .states import random_unitary


class InvalidChannelError(ValueError):
    pass


@dataclass(frozen=True)
class KrausChannel:
    """Trace-preserving map rho -> sum_i E_i rho E_i^dag on a d-level system."""

    kraus: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise InvalidChannelError("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise InvalidChannelError(f"Kraus operator of shape {k.shape}, expected {(d, d)}")
        object.__setattr__(self, "kraus", ops)
        defect = frobenius_norm(sum(dagger(k) @ k for k in ops) - np.eye(d))
        if defect > TOL.trace_preserving:
            raise InvalidChannelError(f"not trace preserving (defect {defect:.3g})")

    @property
    def dim(self):
        return self.kraus[0].shape[0]

    def __call__(self, rho):
        return apply(self, rho)


def apply(ch, rho):
    rho = as_matrix(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise DimensionError(f"state of shape {rho.shape} for a {ch.dim}-level channel")
    return sum(k @ rho @ dagger(k) for k in ch.kraus)


def unitality_defect(ch):
    """||sum_i E_i E_i^dag - I||_F."""
    return frobenius_norm(sum(k @ dagger(k) for k in ch.kraus) - np.eye(ch.dim))


def is_mixing(ch, tol=TOL.unitality):
    """Unitality test, returned as ``(passes, defect)``.

    For qubits this is equivalent to the channel never lowering the entropy
    of any input. For larger dimensions it is only the unitality condition,
    which every mixture of unitaries satisfies.
    """
    defect = unitality_defect(ch)
    return defect < tol, defect


def probe_outputs(ch):
    return [apply(ch, p) for p in gell_mann_basis(ch.dim)]


def decoherence_defect(ch):
    """Largest pairwise commutator norm among outputs on the Hermitian basis."""
    outs = probe_outputs(ch)
    return max((frobenius_norm(commutator(a, b)) for a, b in itertools.combinations(outs, 2)),
               default=0.0)


def is_completely_decohering(ch, tol=TOL.commutator, attempts=5):
    """Test whether every output is diagonal in one fixed basis.

    Returns ``(passes, basis, defect)``; ``basis`` is a unitary whose columns
    diagonalize every output, or ``None`` when the test fails.
    """
    defect = decoherence_defect(ch)
    if defect >= tol:
        return False, None, defect
    outs = probe_outputs(ch)
    rng = np.random.default_rng(0)
    for _ in range(attempts):
        mix = sum(w * o for w, o in zip(rng.standard_normal(len(outs)), outs))
        _, v = np.linalg.eigh((mix + dagger(mix)) / 2)
        if all(_offdiag_norm(dagger(v) @ o @ v) < tol for o in outs):
            return True, v, defect
    return False, None, defect


def _offdiag_norm(m):
    return frobenius_norm(m - np.diag(np.diag(m)))


class ChannelClass(enum.Enum):
    MIXING_ONLY = "MixingOnly"
    COMPLETELY_DECOHERING_ONLY = "CompletelyDecoheringOnly"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass
class ChannelClassification:
    channel_class: ChannelClass
    unitality_defect: float
    decoherence_defect: float
    decohering_basis: np.ndarray = field(default=None, repr=False)


def structural_class(ch, tol=TOL.unitality):
    mixing, u_def = is_mixing(ch, tol)
    decoh, basis, d_def = is_completely_decohering(ch, tol)
    cls = {
        (True, True): ChannelClass.BOTH,
        (True, False): ChannelClass.MIXING_ONLY,
        (False, True): ChannelClass.COMPLETELY_DECOHERING_ONLY,
        (False, False): ChannelClass.NEITHER,
    }[(mixing, decoh)]
    return ChannelClassification(cls, u_def, d_def, basis)


def extend_on_B(ch, da):
    """The channel I_A (x) Lambda acting on the second factor."""
    eye = np.eye(da)
    return KrausChannel(tuple(np.kron(eye, k) for k in ch.kraus))


def conjugate_channel(ch):
    """Adjoint map rho -> sum_i E_i^dag rho E_i; only trace preserving for unital input."""
    ok, defect = is_mixing(ch)
    if not ok:
        raise InvalidChannelError(f"adjoint of a non-unital channel is not trace preserving "
                                  f"(unitality defect {defect:.3g})")
    return KrausChannel(tuple(dagger(k) for k in ch.kraus))


def same_action(a, b, tol=1e-10):
    """Compare two channels by their action on the Hermitian operator basis."""
    if a.dim != b.dim:
        return False
    return all(frobenius_norm(apply(a, p) - apply(b, p)) < tol for p in gell_mann_basis(a.dim))


def _check_prob(p):
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")


def identity_channel(dim):
    return KrausChannel((np.eye(dim, dtype=complex),))


def amplitude_damping(p):
    """Qubit decay |1> -> |0> with probability p."""
    _check_prob(p)
    e0 = np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex)
    e1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
    return KrausChannel((e0, e1))


def dephasing(p):
    """Kraus operators sqrt(1-p) I and sqrt(p) sigma_z; p = 1/2 fully dephases."""
    _check_prob(p)
    return KrausChannel((np.sqrt(1 - p) * SIGMA_I, np.sqrt(p) * SIGMA_Z))


def weyl_operators(d):
    """Clock-and-shift operators X^a Z^b, a, b = 0..d-1 (Paulis up to phase for d=2)."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            for a in range(d) for b in range(d)]


def depolarizing(p, dim=2):
    """rho -> (1 - p) rho + p I / dim."""
    _check_prob(p)
    if dim == 2:
        ops = list(PAULIS)
    else:
        ops = weyl_operators(dim)
    n = dim * dim
    w = [1 - p + p / n] + [p / n] * (n - 1)
    return KrausChannel(tuple(np.sqrt(wi) * op for wi, op in zip(w, ops)))


def mixture_of_unitaries(weights, unitaries):
    """sum_i w_i u_i rho u_i^dag, with ``weights`` the probabilities e_i^2."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1) > TOL.structural:
        raise ValueError(f"weights must be non-negative and sum to 1, got {w}")
    us = [as_matrix(u) for u in unitaries]
    for u in us:
        if frobenius_norm(u @ dagger(u) - np.eye(u.shape[0])) > TOL.structural:
            raise ValueError("mixture_of_unitaries needs unitary operators")
    return KrausChannel(tuple(np.sqrt(wi) * u for wi, u in zip(w, us)))


QUTRIT_UNITARY = np.array(
    [
        [0.5, 0.5, 1 / np.sqrt(2)],
        [0.5, 0.5, -1 / np.sqrt(2)],
        [1 / np.sqrt(2), -1 / np.sqrt(2), 0],
    ],
    dtype=complex,
)


def qutrit_mixing_channel(e0, e1):
    """Mixture of the identity and a fixed real qutrit unitary, amplitudes e0 and e1."""
    norm = e0 ** 2 + e1 ** 2
    if e0 < 0 or e1 < 0 or abs(norm - 1) > 1e-6:
        raise ValueError(f"need e0, e1 >= 0 with e0^2 + e1^2 = 1, got {e0}, {e1}")
    # absorb rounding in user-supplied amplitudes
    e0, e1 = e0 / np.sqrt(norm), e1 / np.sqrt(norm)
    return KrausChannel((e0 * np.eye(3, dtype=complex), e1 * QUTRIT_UNITARY))


def random_channel(dim, env_dim, seed=None):
    """Kraus operators <i|U|0>_R of a Haar-random unitary on system (x) environment."""
    if env_dim < 1:
        raise ValueError("env_dim must be at least 1")
    u = random_unitary(dim * env_dim, seed).reshape(dim, env_dim, dim, env_dim)
    return KrausChannel(tuple(np.ascontiguousarray(u[:, i, :, 0]) for i in range(env_dim)))


def random_unital_channel(dim, k, seed=None):
    """Mixture of k Haar-random unitaries with flat-Dirichlet weights."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(k))
    return mixture_of_unitaries(weights, [random_unitary(dim, rng) for _ in range(k)])

"""Maximal singlet fraction and average teleportation fidelity."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._tol import TOL
from .channels import KrausChannel, apply, extend_on_B
from .correlation import OptimizationSettings
from .linalg import DimensionError, dagger, gell_mann_basis, polar_unitary
from .optimize import nelder_mead_batch
from .states import maximally_entangled_ket, random_unitary, validate_density


@dataclass(frozen=True)
class SingletFractionResult:
    F: float
    f: float
    mes: np.ndarray
    converged: bool


def average_fidelity(F, d):
    """Average teleportation fidelity (d F + 1) / (d + 1)."""
    return (d * F + 1) / (d + 1)


def mes_from_unitary(u):
    """(I kron u)|Phi+> for a unitary u (or a stack of them)."""
    u = np.asarray(u)
    d = u.shape[-1]
    return np.swapaxes(u, -1, -2).reshape(*u.shape[:-2], d * d) / np.sqrt(d)


def _check_square_dims(rho, d):
    if rho.shape[0] != d * d:
        raise DimensionError(f"state of size {rho.shape[0]} is not a {d}x{d} bipartite state")


def _polar_ascent(rho, starts, max_iter=5000, ftol=1e-15):
    """Monotone ascent of <Phi|rho|Phi> over Phi = vec(W)/sqrt(d), W unitary.

    ``rho`` is positive semidefinite, so the overlap is convex in Phi and
    moving to the unitary that maximizes the linearization never decreases it.
    """
    w = np.array(starts, dtype=complex)
    d = w.shape[-1]
    prev = None
    for _ in range(max_iter):
        phi = w.reshape(len(w), -1) / np.sqrt(d)
        grad = phi @ rho.T
        val = np.einsum("ki,ki->k", phi.conj(), grad).real
        if prev is not None and np.all(np.abs(val - prev) <= ftol):
            break
        prev = val
        w = polar_unitary(grad.reshape(len(w), d, d))
    return val, phi


def max_singlet_fraction(rho_ab, d=2, settings=None, seed=0):
    """Largest overlap of ``rho_ab`` with a maximally entangled state of two d-level systems."""
    rho_ab = validate_density(rho_ab)
    _check_square_dims(rho_ab, d)
    settings = settings or OptimizationSettings()
    rng = np.random.default_rng(seed)
    starts = [np.eye(d)] + [random_unitary(d, rng) for _ in range(settings.restarts)]
    vals, phis = _polar_ascent(rho_ab, starts)
    order = np.argsort(-vals, kind="stable")
    F = float(vals[order[0]])
    converged = bool(vals[order[0]] - vals[order[1]] <= 1e-9)
    return SingletFractionResult(F, average_fidelity(F, d), phis[order[0]], converged)


def xi_operator(ch, mes, d=2):
    """sum_i (I kron E_i^dag)|Phi><Phi|(I kron E_i)."""
    if ch.dim != d:
        raise DimensionError(f"{ch.dim}-level channel with d={d}")
    mes = np.asarray(mes, dtype=complex).reshape(-1)
    proj = np.outer(mes, mes.conj())
    eye = np.eye(d)
    return sum(np.kron(eye, dagger(k)) @ proj @ np.kron(eye, k) for k in ch.kraus)


def _xi_overlaps(rho, ch, mes_stack, d):
    # batched xi_operator for a stack of maximally entangled vectors
    eye = np.eye(d)
    lifted = np.array([np.kron(eye, dagger(k)) for k in ch.kraus])
    v = np.einsum("kab,mb->mka", lifted, mes_stack)
    xi = np.einsum("mka,mkb->mab", v, v.conj())
    return np.einsum("ab,mba->m", rho, xi).real


def max_overlap_with_xi(rho_ab, ch, d=2, settings=None, seed=0):
    """max over maximally entangled Phi of Tr(rho Xi(Phi)), searched with Nelder-Mead
    over exp(i sum_k x_k g_k) with Gell-Mann generators g_k."""
    rho_ab = validate_density(rho_ab)
    _check_square_dims(rho_ab, d)
    settings = settings or OptimizationSettings()
    gens = np.array(gell_mann_basis(d)[1:])
    rng = np.random.default_rng(seed)
    starts = np.vstack([np.zeros(len(gens)),
                        rng.uniform(-np.pi, np.pi, size=(settings.restarts, len(gens)))])

    def neg_overlap(points):
        u = scipy.linalg.expm(1j * np.tensordot(points, gens, axes=1))
        return -_xi_overlaps(rho_ab, ch, mes_from_unitary(u), d)

    x, f, _ = nelder_mead_batch(neg_overlap, starts, 0.3, xatol=1e-9, fatol=1e-15,
                                max_iter=settings.refine_iterations * len(gens) * 4)
    return float(-f.min())


@dataclass(frozen=True)
class ChannelMSF:
    F_before: float
    F_after: float
    F_after_xi: float

    @property
    def routes_agree(self):
        return abs(self.F_after - self.F_after_xi) <= 1e-8


def msf_after_channel(rho_ab, ch, d=2, settings=None, seed=0, dual_route=True):
    """Singlet fraction before and after applying ``ch`` to the second party.

    ``F_after`` optimizes over the output state directly; ``F_after_xi``
    maximizes Tr(rho Xi) on the input state instead (NaN when
    ``dual_route`` is off).
    """
    rho_ab = validate_density(rho_ab)
    before = max_singlet_fraction(rho_ab, d, settings, seed).F
    out = apply(extend_on_B(ch, d), rho_ab)
    out = (out + dagger(out)) / 2
    after = max_singlet_fraction(out, d, settings, seed).F
    via_xi = max_overlap_with_xi(rho_ab, ch, d, settings, seed) if dual_route else float("nan")
    return ChannelMSF(before, after, via_xi)

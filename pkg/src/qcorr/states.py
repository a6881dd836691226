"""Density matrices, entropies and classical-quantum ensembles."""

from dataclasses import dataclass

import numpy as np

from ._tol import TOL
from .linalg import DimensionError, as_matrix, dagger, partial_trace


class InvalidStateError(ValueError):
    pass


def validate_density(rho, tol=TOL):
    """Check the density-matrix invariants and return ``rho`` as an array.

    Raises :class:`InvalidStateError` when ``rho`` is not Hermitian, not of
    unit trace, or has an eigenvalue below ``-tol.psd``.
    """
    try:
        rho = as_matrix(rho)
    except (ValueError, DimensionError) as exc:
        raise InvalidStateError(str(exc)) from exc
    if rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"state must be square, got {rho.shape}")
    if np.linalg.norm(rho - dagger(rho)) > tol.hermitian:
        raise InvalidStateError("state is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol.trace:
        raise InvalidStateError(f"state has trace {tr!r}")
    lam = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    if lam[0] < -tol.psd:
        raise InvalidStateError(f"state has negative eigenvalue {lam[0]!r}")
    return rho


def entropy_of_spectrum(lam, cutoff=TOL.entropy_cutoff):
    """Shannon entropy in bits of eigenvalue arrays, summed over the last axis.

    Values below ``cutoff`` (including small negative drift) contribute zero.
    """
    lam = np.asarray(lam, dtype=float)
    safe = np.where(lam > cutoff, lam, 1.0)
    return -np.sum(np.where(lam > cutoff, lam * np.log2(safe), 0.0), axis=-1)


def von_neumann_entropy(rho, validate=True):
    """Entropy S(rho) = -Tr rho log2 rho, in bits."""
    if validate:
        rho = validate_density(rho)
    rho = np.asarray(rho)
    lam = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    return float(entropy_of_spectrum(lam))


def binary_entropy(p):
    return float(entropy_of_spectrum([p, 1 - p]))


def conditional_entropy(rho_ab, dims):
    """S(A|B) = S(AB) - S(B)."""
    rho_ab = validate_density(rho_ab)
    if rho_ab.shape[0] != dims[0] * dims[1]:
        raise DimensionError(f"state of size {rho_ab.shape[0]} does not match dims {dims}")
    rho_b = partial_trace(rho_ab, dims, "B")
    return von_neumann_entropy(rho_ab, validate=False) - von_neumann_entropy(rho_b, validate=False)


def purity(rho):
    return float(np.real(np.trace(rho @ rho)))


def ket_to_dm(ket):
    ket = np.asarray(ket, dtype=complex).reshape(-1)
    return np.outer(ket, ket.conj())


def basis_ket(i, d):
    k = np.zeros(d, dtype=complex)
    k[i] = 1
    return k


def maximally_entangled_ket(d):
    """|Phi+> = sum_i |ii> / sqrt(d)."""
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def random_density_matrix(dim, seed=None):
    """Hilbert-Schmidt random state G G^dag / Tr(G G^dag)."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ dagger(g)
    rho = (rho + dagger(rho)) / 2
    return rho / np.trace(rho).real


def random_pure_ket(dim, seed=None):
    """Haar-random unit vector from a normalized complex Gaussian."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_unitary(dim, seed=None):
    """Haar-random unitary via QR with the phase correction on R's diagonal."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


@dataclass(frozen=True)
class ClassicalQuantumEnsemble:
    """A state sum_i w_i rho_A^i (x) |b_i><b_i| with orthonormal kets |b_i>.

    Blocks are stored normalized and the branch weights are carried
    separately.
    """

    weights: tuple
    blocks: tuple
    kets: tuple
    dims: tuple

    def __post_init__(self):
        da, db = self.dims
        if not (len(self.weights) == len(self.blocks) == len(self.kets)) or not self.weights:
            raise InvalidStateError("ensemble needs equally many weights, blocks and kets")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or abs(w.sum() - 1) > TOL.structural:
            raise InvalidStateError(f"weights must be non-negative and sum to 1, got {w}")
        for b in self.blocks:
            if validate_density(b).shape[0] != da:
                raise DimensionError("A block has the wrong dimension")
        kets = np.array([np.asarray(k, dtype=complex).reshape(-1) for k in self.kets])
        if kets.shape[1] != db:
            raise DimensionError("B ket has the wrong dimension")
        gram = kets.conj() @ kets.T
        if np.linalg.norm(gram - np.eye(len(kets))) > TOL.structural:
            raise InvalidStateError("B kets are not orthonormal")

    @classmethod
    def from_terms(cls, terms, dims):
        """Build from an iterable of ``(weight, block, ket)`` triples."""
        w, b, k = zip(*terms)
        return cls(tuple(float(x) for x in w), tuple(np.asarray(x, dtype=complex) for x in b),
                   tuple(np.asarray(x, dtype=complex).reshape(-1) for x in k), tuple(dims))

    @property
    def terms(self):
        return list(zip(self.weights, self.blocks, self.kets))


def assemble_cq_state(ensemble):
    da, db = ensemble.dims
    rho = np.zeros((da * db, da * db), dtype=complex)
    for w, block, ket in ensemble.terms:
        rho += w * np.kron(block, ket_to_dm(ket))
    return rho


def random_cq_ensemble(dims, seed=None):
    """Random half-classical state: Haar basis on B, HS blocks on A, Dirichlet weights."""
    rng = np.random.default_rng(seed)
    da, db = dims
    u = random_unitary(db, rng)
    weights = rng.dirichlet(np.ones(db))
    blocks = [random_density_matrix(da, rng) for _ in range(db)]
    return ClassicalQuantumEnsemble.from_terms(zip(weights, blocks, u.T), dims)

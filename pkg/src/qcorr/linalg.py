"""Dense complex linear algebra for small matrices.

Everything here operates on plain ``numpy`` arrays. Dimensions in this
package never exceed a few dozen, so there is no sparse support.
"""

import numpy as np
import scipy.linalg

from ._tol import TOL

SIGMA_I = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_I, SIGMA_X, SIGMA_Y, SIGMA_Z)


class DimensionError(ValueError):
    pass


def as_matrix(m):
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _square(m):
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m):
    return np.conj(np.transpose(m))


def multiply(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def frobenius_norm(m):
    return float(np.linalg.norm(m))


def tensor_product(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def commutator(a, b):
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise DimensionError(f"commutator of {a.shape} and {b.shape}")
    return a @ b - b @ a


def partial_trace(m, dims, keep):
    """Reduce a bipartite operator to one factor.

    ``dims`` is ``(dA, dB)`` and ``keep`` is ``"A"`` or ``"B"`` (0 and 1 are
    accepted as aliases).
    """
    m = _square(m)
    da, db = dims
    if m.shape[0] != da * db:
        raise DimensionError(f"matrix of size {m.shape[0]} does not match dims {dims}")
    t = m.reshape(da, db, da, db)
    if keep in ("A", 0):
        return np.einsum("ijkj->ik", t)
    if keep in ("B", 1):
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def is_hermitian(m, tol=TOL.hermitian):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.linalg.norm(m - dagger(m)) <= tol


def hermitian_eigh(m, tol=TOL.hermitian):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with ascending real eigenvalues and
    the eigenvectors as the columns of a unitary matrix.
    """
    m = _square(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigh((m + dagger(m)) / 2)


def matrix_exp(m):
    return scipy.linalg.expm(_square(m))


def polar_unitary(m):
    """Unitary factor ``W`` of the polar decomposition ``m = W P``.

    Works on stacks of matrices along the leading axes.
    """
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def gell_mann_basis(d):
    """Hermitian operator basis: identity followed by generalized Gell-Mann matrices.

    The non-identity elements are traceless and satisfy Tr(g_a g_b) = 2 delta_ab.
    """
    basis = [np.eye(d, dtype=complex)]
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((d, d), dtype=complex)
            a[j, k], a[k, j] = -1j, 1j
            basis += [s, a]
    for l in range(1, d):
        g = np.zeros((d, d), dtype=complex)
        g[np.arange(l), np.arange(l)] = 1
        g[l, l] = -l
        basis.append(np.sqrt(2 / (l * (l + 1))) * g)
    return basis


def unitary_from_generators(params, d):
    """exp(i * sum_k params_k g_k) over the traceless Gell-Mann generators."""
    gens = gell_mann_basis(d)[1:]
    h = np.tensordot(np.asarray(params, dtype=float), np.array(gens), axes=1)
    return scipy.linalg.expm(1j * h)

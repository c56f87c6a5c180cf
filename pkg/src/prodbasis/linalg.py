"""Dense complex linear-algebra substrate.

Vectors are 1-D ``complex128`` numpy arrays, operators 2-D arrays.  The
functions here are thin, contract-checked wrappers over numpy/LAPACK
routines; all are pure and safe to invoke concurrently.
"""

from __future__ import annotations

import numpy as np

from .config import TOLERANCES, Tolerances
from .errors import DimensionMismatch, NonOrthonormalInput, NotHermitian

__all__ = [
    "basis_vector",
    "dagger",
    "hermitian_part",
    "kron",
    "projector_from_states",
    "hermitian_eig",
    "top_eigenvector",
    "partial_transpose",
]


def basis_vector(dim: int, k: int) -> np.ndarray:
    """Computational basis vector |k> in dimension ``dim``."""
    if not 0 <= k < dim:
        raise IndexError(f"basis index {k} outside [0, {dim})")
    v = np.zeros(dim, dtype=complex)
    v[k] = 1.0
    return v


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + dagger(m)) / 2


def kron(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Tensor product of two vectors; entry (i*dim(v)+j) equals u_i * v_j."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.ndim != 1 or v.ndim != 1 or u.size < 1 or v.size < 1:
        raise DimensionMismatch("kron needs two nonempty 1-D vectors")
    return np.kron(u, v)


def projector_from_states(states, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """Orthogonal projector sum_i |psi_i><psi_i| over orthonormal states.

    Raises :class:`NonOrthonormalInput` when the Gram matrix of the inputs
    deviates from the identity by more than ``tol.orthonormality``.
    """
    cols = [np.asarray(s, dtype=complex) for s in states]
    if not cols:
        raise DimensionMismatch("need at least one state")
    dim = cols[0].size
    if any(c.ndim != 1 or c.size != dim for c in cols):
        raise DimensionMismatch("states must share a common dimension")
    v = np.column_stack(cols)
    gram = dagger(v) @ v
    deviation = float(np.max(np.abs(gram - np.eye(len(cols)))))
    if deviation > tol.orthonormality:
        raise NonOrthonormalInput(
            f"input states are not orthonormal (max|G - I| = {deviation:.3e})",
            deviation=deviation,
        )
    return hermitian_part(v @ dagger(v))


def hermitian_eig(m: np.ndarray, tol: Tolerances = TOLERANCES):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``v``.  Deterministic for a fixed input.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch("expected a square matrix")
    herm_dev = float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0
    if herm_dev > tol.hermiticity:
        raise NotHermitian(f"max|M - M^dag| = {herm_dev:.3e} exceeds {tol.hermiticity:.1e}")
    w, v = np.linalg.eigh(hermitian_part(m))
    return w, v


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first non-negligible entry is real positive."""
    for x in v:
        if abs(x) > 1e-12:
            return v * (abs(x) / x)
    return v


def top_eigenvector(m: np.ndarray, tie_tol: float = 1e-12):
    """Largest eigenvalue and a deterministically chosen top eigenvector.

    Among eigenvectors whose eigenvalue is within ``tie_tol`` of the maximum,
    the phase-canonical vector with the lexicographically largest real part
    is selected, so degenerate inputs still give a reproducible answer.
    """
    w, v = np.linalg.eigh(hermitian_part(np.asarray(m, dtype=complex)))
    top = w[-1]
    best_key = None
    best_vec = None
    for i in np.nonzero(w >= top - tie_tol)[0]:
        vec = _canonical_phase(v[:, i])
        key = tuple(np.round(vec.real, 12))
        if best_key is None or key > best_key:
            best_key, best_vec = key, vec
    return float(top), best_vec


def partial_transpose(m: np.ndarray, d_a: int, d_b: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on C^dA (x) C^dB.

    Implemented as an index permutation, so applying it twice returns the
    input bit-exactly and the diagonal (hence the trace) is untouched.
    """
    m = np.asarray(m, dtype=complex)
    dim = d_a * d_b
    if m.shape != (dim, dim):
        raise DimensionMismatch(f"matrix shape {m.shape} does not match dims ({d_a}, {d_b})")
    return m.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(dim, dim).copy()

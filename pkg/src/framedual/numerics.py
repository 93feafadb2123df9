"""Dense complex linear-algebra kernel with a shared tolerance policy.

All rank and equality decisions are made relative to the largest
singular value (or matrix scale) with an absolute floor, never by exact
comparison.  Every routine is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotHermitianError,
    NumericalFailureError,
    ZeroMatrixError,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "as_complex_matrix",
    "frobenius",
    "hermitian_eig",
    "psd_inverse_sqrt",
    "svd_rank_nullspace",
    "orthonormal_span_basis",
]


@dataclass(frozen=True)
class Tolerance:
    """Relative threshold with an absolute floor.

    ``threshold(scale)`` is the cut used for rank decisions and residual
    acceptance at the given scale.
    """

    rel_eps: float = 1e-9
    abs_floor: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.rel_eps > 0 and self.abs_floor > 0):
            raise ValueError("rel_eps and abs_floor must be positive")

    def threshold(self, scale: float = 1.0) -> float:
        return max(self.rel_eps * float(scale), self.abs_floor)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class EigenDecomposition:
    """Hermitian eigendecomposition with ascending real eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_complex_matrix(a: np.ndarray) -> np.ndarray:
    """Validate and coerce to a 2-D complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix entries must be finite")
    return m


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def hermitian_eig(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises ``NotHermitianError`` if the symmetry residual exceeds
    ``rel_eps`` times the matrix scale.
    """
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"matrix is not square: {a.shape}")
    scale = frobenius(a)
    if frobenius(a - a.conj().T) > tol.threshold(scale):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    sym = (a + a.conj().T) / 2.0
    try:
        vals, vecs = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(str(exc)) from exc
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs)


def psd_inverse_sqrt(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Pseudo-inverse square root of a Hermitian PSD matrix.

    Eigenvalues below ``rel_eps * lambda_max`` (including roundoff
    negatives, which are clamped) are zeroed, so ``B @ A @ B`` equals the
    projection onto the numerically positive eigenspace.
    """
    dec = hermitian_eig(a, tol)
    vals = dec.eigenvalues
    lam_max = float(vals[-1]) if vals.size else 0.0
    if lam_max <= tol.abs_floor:
        raise ZeroMatrixError("all eigenvalues below the rank threshold")
    cut = tol.threshold(lam_max)
    inv_sqrt = np.where(vals > cut, 1.0 / np.sqrt(np.maximum(vals, cut)), 0.0)
    v = dec.eigenvectors
    return (v * inv_sqrt) @ v.conj().T


def svd_rank_nullspace(
    a: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[int, np.ndarray]:
    """Numerical rank and an orthonormal basis of the right null space.

    The null basis is returned as the columns of an ``n x (n - rank)``
    matrix (possibly with zero columns count).
    """
    a = as_complex_matrix(a)
    try:
        _, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(str(exc)) from exc
    if s.size == 0 or s[0] < tol.abs_floor:
        rank = 0
    else:
        rank = int(np.sum(s > tol.threshold(float(s[0]))))
    null_basis = vh[rank:].conj().T
    return rank, null_basis


def orthonormal_span_basis(
    vectors: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Orthonormal basis of the column space, as matrix columns."""
    a = as_complex_matrix(vectors)
    try:
        u, s, _ = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(str(exc)) from exc
    if s.size == 0 or s[0] < tol.abs_floor:
        rank = 0
    else:
        rank = int(np.sum(s > tol.threshold(float(s[0]))))
    return u[:, :rank]

"""Complex linear algebra with deterministic spectral conventions.

Thin layer over numpy: eigenvalues come back ascending, every eigenvector's
first nonzero entry is made real positive, and eigenvalues closer than a gap
threshold are reported as a cluster with its projector rather than as
individual vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NotHermitianError",
    "EigenCluster",
    "SpectralData",
    "eigh",
    "is_hermitian",
    "is_unitary",
    "tensor",
    "apply",
    "inner",
    "max_abs",
    "HERMITIAN_TOL",
    "CLUSTER_GAP",
    "RECONSTRUCTION_TOL",
]

HERMITIAN_TOL = 1e-10
CLUSTER_GAP = 1e-8
RECONSTRUCTION_TOL = 1e-8
_PHASE_ENTRY_TOL = 1e-8


class NotHermitianError(ValueError):
    """The input matrix is not Hermitian within tolerance."""


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return max_abs(a - a.conj().T) <= tol


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    n = u.shape[0]
    return max_abs(u.conj().T @ u - np.eye(n)) <= tol


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def apply(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return a @ v


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Inner product, conjugate-linear in the first argument."""
    return complex(np.vdot(u, v))


def fix_phase(vector: np.ndarray, entry_tol: float = _PHASE_ENTRY_TOL) -> np.ndarray:
    """Rotate a vector so its first entry above ``entry_tol`` is real positive."""
    idx = np.flatnonzero(np.abs(vector) > entry_tol)
    if idx.size == 0:
        return vector
    pivot = vector[idx[0]]
    return vector * np.conj(pivot / abs(pivot))


@dataclass(frozen=True, eq=False)
class EigenCluster:
    """A group of eigenvalues closer than the gap threshold, with its projector."""

    value: float
    indices: tuple[int, ...]
    projector: np.ndarray

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigendecomposition under the fixed ordering and phase conventions."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    clusters: tuple[EigenCluster, ...]

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def is_nondegenerate(self) -> bool:
        return all(c.multiplicity == 1 for c in self.clusters)

    def vector(self, index: int) -> np.ndarray:
        return self.vectors[:, index]

    def reconstruct(self) -> np.ndarray:
        return self.vectors @ np.diag(self.eigenvalues) @ self.vectors.conj().T


def eigh(
    a: np.ndarray,
    hermitian_tol: float = HERMITIAN_TOL,
    cluster_gap: float = CLUSTER_GAP,
) -> SpectralData:
    """Diagonalize a Hermitian matrix deterministically.

    Raises :class:`NotHermitianError` when the input fails the Hermiticity
    check.  Eigenvalues ascend; vectors are phase-fixed; consecutive
    eigenvalues closer than ``cluster_gap`` share a cluster whose projector is
    basis-independent.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    residual = max_abs(a - a.conj().T)
    if residual > hermitian_tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |A - A^dag| = {residual:.3e} > {hermitian_tol:.1e}"
        )
    values, vectors = np.linalg.eigh(a)
    values = values.real
    vectors = np.array(
        [fix_phase(vectors[:, i]) for i in range(len(values))], dtype=complex
    ).T
    clusters: list[EigenCluster] = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= cluster_gap:
            idxs = tuple(range(start, i))
            block = vectors[:, start:i]
            clusters.append(
                EigenCluster(
                    value=float(np.mean(values[start:i])),
                    indices=idxs,
                    projector=block @ block.conj().T,
                )
            )
            start = i
    return SpectralData(eigenvalues=values, vectors=vectors, clusters=tuple(clusters))

"""Two-level spin components and the maximally anticorrelated pair state.

Conventions: single-spin basis (|+1>, |-1>); two-spin product basis in
lexicographic order (++, +-, -+, --).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .representations import OperatorBundle, bundle_from_matrix

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SpinDirection",
    "spin_component_operator",
    "singlet",
    "delta_operator",
    "anticorrelation_residual",
    "random_directions",
    "AXES",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class SpinDirection:
    """A unit vector selecting a spin component."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = (self.x**2 + self.y**2 + self.z**2) ** 0.5
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"direction must be a unit vector, |a| = {norm!r}")

    @classmethod
    def from_vector(cls, vec: Sequence[float]) -> "SpinDirection":
        arr = np.asarray(vec, dtype=float)
        if arr.shape != (3,):
            raise ValueError("a direction needs exactly three components")
        norm = float(np.linalg.norm(arr))
        if norm < _NORM_TOL:
            raise ValueError("cannot normalize the zero vector")
        arr = arr / norm
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


AXES = (
    SpinDirection(1.0, 0.0, 0.0),
    SpinDirection(0.0, 1.0, 0.0),
    SpinDirection(0.0, 0.0, 1.0),
)


def spin_component_operator(direction: SpinDirection) -> np.ndarray:
    """The component of spin along a unit direction; eigenvalues are always ±1."""
    return direction.x * SIGMA_X + direction.y * SIGMA_Y + direction.z * SIGMA_Z


def singlet() -> np.ndarray:
    """The antisymmetric pair state (0, 1/sqrt2, -1/sqrt2, 0)."""
    return np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def delta_operator() -> OperatorBundle:
    """Sum of the three matched-component products on the pair space.

    The spectrum is computed by diagonalization, not asserted a priori: the
    singlet is a simple eigenvector and the complementary eigenvalue is triply
    degenerate, reported through its cluster projector.
    """
    matrix = (
        linalg.tensor(SIGMA_X, SIGMA_X)
        + linalg.tensor(SIGMA_Y, SIGMA_Y)
        + linalg.tensor(SIGMA_Z, SIGMA_Z)
    )
    return bundle_from_matrix("delta", matrix)


def anticorrelation_residual(direction: SpinDirection) -> float:
    """How far the singlet is from total spin zero along a direction.

    Residual of (a·σ ⊗ I + I ⊗ a·σ) applied to the singlet, max-abs.
    """
    component = spin_component_operator(direction)
    eye = np.eye(2, dtype=complex)
    total = linalg.tensor(component, eye) + linalg.tensor(eye, component)
    return linalg.max_abs(total @ singlet())


def random_directions(count: int, seed: int) -> tuple[SpinDirection, ...]:
    """Seeded uniform directions on the sphere, reproducible across runs."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        vec = rng.normal(size=3)
        norm = float(np.linalg.norm(vec))
        if norm < 1e-6:
            continue
        arr = vec / norm
        out.append(SpinDirection(float(arr[0]), float(arr[1]), float(arr[2])))
    return tuple(out)

"""Unitary representations, coherent state families and operator bundles.

A representation assigns a unitary matrix to every group element.  Acting on a
base state yields the coherent states; grouping those states by the value of a
variable and summing value-weighted projectors yields the Hermitian operator
that asks the variable's question.  The construction is only attempted when
states with different values span orthogonal subspaces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .groups import Permutation, PermutationGroup
from .spaces import ConceptualVariable, DomainMismatchError, PointSpace

__all__ = [
    "CoherentCollisionError",
    "OrthogonalityError",
    "DegenerateBasisError",
    "UnitaryRep",
    "RepDiagnostics",
    "qubit_rep",
    "cyclic_dft_rep",
    "CoherentFamily",
    "InjectivityResult",
    "check_coherent_injectivity",
    "QuestionAnswer",
    "OperatorBundle",
    "build_operator",
    "bundle_from_matrix",
    "ConjugationResult",
    "conjugation_check",
    "BasisExpansion",
    "expand_in_basis",
    "IrreducibilityDiagnostic",
    "commutant_diagnostic",
]

UNITARY_TOL = 1e-10
HOMOMORPHISM_TOL = 1e-8
INJECTIVITY_DISTANCE_TOL = 1e-6
INJECTIVITY_OVERLAP_TOL = 1e-8
ORTHOGONAL_GROUPING_TOL = 1e-8
CONJUGATION_TOL = 1e-8
EXPANSION_TOL = 1e-10
COMMUTANT_TOL = 1e-8
_PAIR_EXHAUSTIVE_LIMIT = 500


class CoherentCollisionError(ValueError):
    """Two distinct group elements produced the same coherent state."""


class OrthogonalityError(ValueError):
    """Outside the orthogonal-coherent scope of the operator construction."""


class DegenerateBasisError(ValueError):
    """Basis expansion needs nondegenerate spectra; use cluster projectors instead."""


class UnitaryRep:
    """A unitary matrix for every element of a permutation group."""

    def __init__(self, group: PermutationGroup, matrices: dict[Permutation, np.ndarray]) -> None:
        if set(matrices) != set(group.elements):
            raise ValueError("representation must cover every group element exactly")
        first = next(iter(matrices.values()))
        dim = first.shape[0]
        for m in matrices.values():
            if m.shape != (dim, dim):
                raise ValueError("representation matrices must share one square shape")
        self.group = group
        self.dim = dim
        self.matrices = {k: np.asarray(m, dtype=complex) for k, m in matrices.items()}

    def __call__(self, k: Permutation) -> np.ndarray:
        return self.matrices[k]

    def diagnostics(self, seed: int = 0, sample_pairs: int = 1000) -> "RepDiagnostics":
        """Measure unitarity, the identity image, and the composition law.

        The composition law is checked up to a global phase per pair, so exact
        and ray representations both validate.  Pair checks are exhaustive for
        small groups and a seeded sample for large ones.
        """
        unitary_residual = max(
            linalg.max_abs(m.conj().T @ m - np.eye(self.dim)) for m in self.matrices.values()
        )
        identity_residual = linalg.max_abs(
            self.matrices[self.group.identity] - np.eye(self.dim)
        )
        els = self.group.elements
        if len(els) <= _PAIR_EXHAUSTIVE_LIMIT:
            pairs = itertools.product(els, els)
            pair_count = len(els) ** 2
        else:
            rng = random.Random(seed)
            pairs = (
                (els[rng.randrange(len(els))], els[rng.randrange(len(els))])
                for _ in range(sample_pairs)
            )
            pair_count = sample_pairs
        hom_residual = 0.0
        for a, b in pairs:
            product = self.matrices[a] @ self.matrices[b]
            expected = self.matrices[a * b]
            idx = np.unravel_index(np.argmax(np.abs(expected)), expected.shape)
            phase = product[idx] / expected[idx]
            mag = abs(phase)
            phase = phase / mag if mag > 0 else 1.0
            hom_residual = max(hom_residual, linalg.max_abs(product - phase * expected))
        return RepDiagnostics(
            unitary_residual=float(unitary_residual),
            identity_residual=float(identity_residual),
            homomorphism_residual=float(hom_residual),
            pairs_checked=pair_count,
        )


@dataclass(frozen=True)
class RepDiagnostics:
    unitary_residual: float
    identity_residual: float
    homomorphism_residual: float
    pairs_checked: int

    def ok(self, unitary_tol: float = UNITARY_TOL, hom_tol: float = HOMOMORPHISM_TOL) -> bool:
        return (
            self.unitary_residual <= unitary_tol
            and self.identity_residual <= unitary_tol
            and self.homomorphism_residual <= hom_tol
        )


def qubit_rep(space: PointSpace | None = None) -> UnitaryRep:
    """The two-element flip representation from the phase rule U|v> = e^{-iv}|flip v>.

    On the two-point value space {+1, -1} with basis |+1> = (1,0), |-1> = (0,1)
    the non-identity element gets [[0, e^{+i}], [e^{-i}, 0]], which squares to
    the identity.
    """
    if space is None:
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
    if space.size != 2:
        raise ValueError("the flip representation lives on a two-point space")
    group = PermutationGroup.generate(space, (Permutation((1, 0)),))
    flip = np.array([[0, np.exp(1j)], [np.exp(-1j), 0]], dtype=complex)
    matrices = {
        group.identity: np.eye(2, dtype=complex),
        Permutation((1, 0)): flip,
    }
    return UnitaryRep(group, matrices)


def cyclic_dft_rep(n: int, space: PointSpace | None = None) -> UnitaryRep:
    """The cyclic shift group diagonalized by the discrete Fourier kernel.

    U(shift-by-s) = F^dag D^s F with F_{jk} = e^{2 pi i jk/n}/sqrt(n) and
    D = diag(e^{2 pi i k/n}); equivalently translation by s acts as a position
    shift in the standard basis.
    """
    if n < 1:
        raise ValueError("cyclic representation needs n >= 1")
    if space is None:
        space = PointSpace(id=f"cycle-{n}", labels=tuple(str(j) for j in range(n)))
    if space.size != n:
        raise ValueError(f"space size {space.size} does not match n={n}")
    shift = Permutation(tuple((j + 1) % n for j in range(n)))
    group = PermutationGroup.generate(space, (shift,))
    js = np.arange(n)
    fourier = np.exp(2j * np.pi * np.outer(js, js) / n) / np.sqrt(n)
    phases = np.exp(2j * np.pi * js / n)
    matrices: dict[Permutation, np.ndarray] = {}
    for k in group.elements:
        s = k.images[0]  # shift amount: 0 -> s
        matrices[k] = fourier.conj().T @ np.diag(phases**s) @ fourier
    return UnitaryRep(group, matrices)


class CoherentFamily:
    """The orbit of a base state under a representation, keyed by group element."""

    def __init__(self, rep: UnitaryRep, base: np.ndarray) -> None:
        base = np.asarray(base, dtype=complex)
        if base.shape != (rep.dim,):
            raise ValueError(f"base state must have dimension {rep.dim}")
        if np.linalg.norm(base) < 1e-12:
            raise ValueError("base state must be nonzero")
        self.rep = rep
        self.base = base
        self.states = {k: rep(k) @ base for k in rep.group.elements}

    @property
    def group(self) -> PermutationGroup:
        return self.rep.group


@dataclass(frozen=True)
class InjectivityResult:
    ok: bool
    min_distance: float
    max_overlap: float
    witness: tuple[Permutation, Permutation] | None

    def __bool__(self) -> bool:
        return self.ok


def check_coherent_injectivity(
    family: CoherentFamily,
    distance_tol: float = INJECTIVITY_DISTANCE_TOL,
    overlap_tol: float = INJECTIVITY_OVERLAP_TOL,
) -> InjectivityResult:
    """Verify distinct elements give distinct states, even up to a global phase."""
    elements = family.group.elements
    min_distance = float("inf")
    max_overlap = 0.0
    witness: tuple[Permutation, Permutation] | None = None
    ok = True
    for i, g in enumerate(elements):
        for h in elements[i + 1 :]:
            a, b = family.states[g], family.states[h]
            distance = float(np.linalg.norm(a - b))
            overlap = abs(linalg.inner(a, b)) / float(np.linalg.norm(a) * np.linalg.norm(b))
            if distance < min_distance:
                min_distance = distance
            if overlap > max_overlap:
                max_overlap = overlap
            if distance <= distance_tol or overlap >= 1 - overlap_tol:
                ok = False
                if witness is None:
                    witness = (g, h)
    if len(elements) < 2:
        min_distance = float("inf")
    return InjectivityResult(ok, min_distance, max_overlap, witness)


@dataclass(frozen=True)
class QuestionAnswer:
    question: str
    answer: str


class OperatorBundle:
    """A Hermitian operator together with its spectral data and value labels."""

    def __init__(
        self,
        variable: ConceptualVariable,
        operator: np.ndarray,
        spectral: linalg.SpectralData,
        projectors: dict[float, np.ndarray],
        qa_labels: dict[float, QuestionAnswer],
    ) -> None:
        self.variable = variable
        self.operator = operator
        self.spectral = spectral
        self.projectors = projectors
        self.qa_labels = qa_labels

    @property
    def dim(self) -> int:
        return self.operator.shape[0]

    def is_nondegenerate(self) -> bool:
        return self.spectral.is_nondegenerate()

    def eigenvalue_multiplicities(self) -> tuple[tuple[float, int], ...]:
        return tuple((c.value, c.multiplicity) for c in self.spectral.clusters)


def _qa_labels(variable: ConceptualVariable) -> dict[float, QuestionAnswer]:
    numeric = variable.numeric_values()
    return {
        numeric[i]: QuestionAnswer(
            question=f"What is {variable.name}?",
            answer=f"{variable.name} = {variable.values[i]}",
        )
        for i in range(len(numeric))
    }


def build_operator(
    theta: ConceptualVariable,
    family: CoherentFamily,
    base_point: int = 0,
    grouping_tol: float = ORTHOGONAL_GROUPING_TOL,
    distance_tol: float = INJECTIVITY_DISTANCE_TOL,
    overlap_tol: float = INJECTIVITY_OVERLAP_TOL,
) -> OperatorBundle:
    """Sum value-weighted projectors onto coherent-state groups.

    Requires the group to act regularly on the variable's domain, so that
    k -> k(base_point) labels the coherent states by points.  States are
    grouped by the variable's value at their point; groups must be pairwise
    orthogonal and jointly spanning.  The operator's eigenvalues are then
    exactly the variable's values, with multiplicities equal to the group
    ranks; the variable is maximal on this labeling iff the spectrum is
    nondegenerate.
    """
    group = family.group
    if group.space != theta.domain:
        raise DomainMismatchError(
            f"representation group acts on {group.space.id!r}, variable lives on "
            f"{theta.domain.id!r}"
        )
    n = theta.domain.size
    points = [k.images[base_point] for k in group.elements]
    if group.order != n or len(set(points)) != n:
        raise ValueError(
            "coherent labeling requires a regular action: the group must match the "
            "domain size and reach every point from the base point exactly once"
        )
    injectivity = check_coherent_injectivity(family, distance_tol, overlap_tol)
    if not injectivity:
        g, h = injectivity.witness
        raise CoherentCollisionError(
            f"coherent states for {list(g.images)} and {list(h.images)} coincide "
            f"(distance {injectivity.min_distance:.3e}, overlap {injectivity.max_overlap:.6f})"
        )
    numeric = theta.numeric_values()
    grouped: dict[int, list[np.ndarray]] = {v: [] for v in range(theta.value_count)}
    for k, point in zip(group.elements, points):
        grouped[theta.assignment[point]].append(family.states[k])
    for va, vb in itertools.combinations(sorted(grouped), 2):
        for sa in grouped[va]:
            for sb in grouped[vb]:
                overlap = abs(linalg.inner(sa, sb)) / float(
                    np.linalg.norm(sa) * np.linalg.norm(sb)
                )
                if overlap > grouping_tol:
                    raise OrthogonalityError(
                        f"outside the orthogonal-coherent scope: states for values "
                        f"{theta.values[va]!r} and {theta.values[vb]!r} overlap by {overlap:.3e}"
                    )
    dim = family.rep.dim
    operator = np.zeros((dim, dim), dtype=complex)
    projectors: dict[float, np.ndarray] = {}
    total_rank = 0
    for v in sorted(grouped):
        stack = np.array(grouped[v]).T
        u, s, _ = np.linalg.svd(stack, full_matrices=False)
        rank = int(np.sum(s > 1e-10 * s[0]))
        basis = u[:, :rank]
        projector = basis @ basis.conj().T
        projectors[numeric[v]] = projector
        operator = operator + numeric[v] * projector
        total_rank += rank
    if total_rank != dim:
        raise OrthogonalityError(
            f"outside the orthogonal-coherent scope: coherent groups span rank "
            f"{total_rank} of a dimension-{dim} space"
        )
    spectral = linalg.eigh(operator)
    got = sorted(
        (c.value, c.multiplicity) for c in spectral.clusters
    )
    expected = sorted(
        (numeric[v], int(np.round(np.trace(projectors[numeric[v]]).real)))
        for v in sorted(grouped)
    )
    for (gv, gm), (ev, em) in zip(got, expected):
        if abs(gv - ev) > 1e-8 or gm != em:
            raise RuntimeError(
                f"spectrum {got} does not reproduce the value grouping {expected}"
            )
    return OperatorBundle(theta, operator, spectral, projectors, _qa_labels(theta))


def bundle_from_matrix(
    name: str,
    operator: np.ndarray,
    hermitian_tol: float = linalg.HERMITIAN_TOL,
    cluster_gap: float = linalg.CLUSTER_GAP,
) -> OperatorBundle:
    """Wrap an explicit Hermitian matrix as a bundle over its own eigenbasis."""
    spectral = linalg.eigh(operator, hermitian_tol, cluster_gap)
    dim = spectral.dim
    space = PointSpace(
        id=f"{name}-eigenbasis", labels=tuple(f"e{i}" for i in range(dim))
    )
    assignment = [0] * dim
    labels = []
    for ci, cluster in enumerate(spectral.clusters):
        labels.append(f"{cluster.value:.12g}")
        for i in cluster.indices:
            assignment[i] = ci
    variable = ConceptualVariable(
        name=name, domain=space, values=tuple(labels), assignment=tuple(assignment)
    )
    projectors = {c.value: c.projector for c in spectral.clusters}
    return OperatorBundle(
        variable, np.asarray(operator, dtype=complex), spectral, projectors, _qa_labels(variable)
    )


@dataclass(frozen=True)
class ConjugationResult:
    element: Permutation
    residual: float
    ok: bool


def conjugation_check(
    theta: ConceptualVariable,
    family: CoherentFamily,
    element: Permutation,
    base_point: int = 0,
    tol: float = CONJUGATION_TOL,
) -> ConjugationResult:
    """Verify T(t)^dag A^theta T(t) equals the operator of theta∘t.

    Both operators go through the same construction; the residual is the
    max-abs difference.
    """
    bundle = build_operator(theta, family, base_point)
    moved = theta.compose(element.images, name=f"{theta.name}~moved")
    moved_bundle = build_operator(moved, family, base_point)
    t_matrix = family.rep(element)
    conjugated = t_matrix.conj().T @ bundle.operator @ t_matrix
    residual = linalg.max_abs(conjugated - moved_bundle.operator)
    return ConjugationResult(element=element, residual=float(residual), ok=residual <= tol)


@dataclass(frozen=True, eq=False)
class BasisExpansion:
    amplitudes: tuple[complex, ...]
    reconstruction_error: float
    weight_sum: float

    def ok(self, tol: float = EXPANSION_TOL) -> bool:
        return self.reconstruction_error <= tol and abs(self.weight_sum - 1.0) <= tol


def expand_in_basis(
    target: OperatorBundle, index: int, basis: OperatorBundle
) -> BasisExpansion:
    """Expand one eigenvector of ``target`` over the eigenbasis of ``basis``.

    Both bundles must be nondegenerate (cluster projectors are the honest
    object otherwise) and share a dimension.  Amplitudes follow the basis
    bundle's ascending eigenvalue order under the fixed phase convention.
    """
    if target.dim != basis.dim:
        raise ValueError(f"dimension mismatch: target {target.dim}, basis {basis.dim}")
    if not target.is_nondegenerate() or not basis.is_nondegenerate():
        raise DegenerateBasisError(
            "expansion is defined for nondegenerate spectra; degenerate clusters "
            "are reported through their projectors"
        )
    if not 0 <= index < target.dim:
        raise ValueError(f"eigenvector index {index} out of range 0..{target.dim - 1}")
    vec = target.spectral.vector(index)
    amplitudes = tuple(
        linalg.inner(basis.spectral.vector(j), vec) for j in range(basis.dim)
    )
    reconstruction = sum(
        a * basis.spectral.vector(j) for j, a in enumerate(amplitudes)
    )
    error = linalg.max_abs(np.asarray(reconstruction) - vec)
    weight = float(sum(abs(a) ** 2 for a in amplitudes))
    return BasisExpansion(amplitudes, float(error), weight)


@dataclass(frozen=True)
class IrreducibilityDiagnostic:
    """Commutant size of a representation; scalar commutant means irreducible.

    Diagnostic only: operator pipelines do not require irreducibility.
    """

    commutant_dimension: int
    irreducible: bool


def commutant_diagnostic(rep: UnitaryRep, tol: float = COMMUTANT_TOL) -> IrreducibilityDiagnostic:
    dim = rep.dim
    twirl = np.zeros((dim * dim, dim * dim), dtype=complex)
    for k in rep.group.elements:
        u = rep(k)
        twirl += np.kron(u, u.conj())
    twirl /= rep.group.order
    eigenvalues = np.linalg.eigvalsh((twirl + twirl.conj().T) / 2)
    commutant_dim = int(np.sum(np.abs(eigenvalues - 1.0) < tol))
    return IrreducibilityDiagnostic(commutant_dim, commutant_dim == 1)

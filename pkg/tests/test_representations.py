"""Representations, coherent families, operator construction and covariance."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finivar import linalg
from finivar.groups import Permutation, PermutationGroup
from finivar.representations import (
    CoherentCollisionError,
    CoherentFamily,
    DegenerateBasisError,
    OrthogonalityError,
    UnitaryRep,
    build_operator,
    bundle_from_matrix,
    check_coherent_injectivity,
    commutant_diagnostic,
    conjugation_check,
    cyclic_dft_rep,
    expand_in_basis,
    qubit_rep,
)
from finivar.spaces import ConceptualVariable, DomainMismatchError, PointSpace

from conftest import space_of, variable_from_assignment

S = 1 / np.sqrt(2)


def qubit_family() -> CoherentFamily:
    rep = qubit_rep()
    return CoherentFamily(rep, np.array([1, 0], dtype=complex))


def cyclic_family(n: int) -> CoherentFamily:
    rep = cyclic_dft_rep(n)
    base = np.zeros(n, dtype=complex)
    base[0] = 1
    return CoherentFamily(rep, base)


def spin_z_variable(space: PointSpace) -> ConceptualVariable:
    return ConceptualVariable("spin-z", space, ("+1", "-1"), (0, 1))


class TestQubitRep:
    def test_flip_matrix_golden(self):
        rep = qubit_rep()
        flip = rep(Permutation((1, 0)))
        expected = np.array([[0, np.exp(1j)], [np.exp(-1j), 0]])
        assert linalg.max_abs(flip - expected) == 0.0

    def test_flip_is_unitary_involution(self):
        rep = qubit_rep()
        flip = rep(Permutation((1, 0)))
        assert linalg.is_unitary(flip)
        assert linalg.max_abs(flip @ flip - np.eye(2)) < 1e-12

    def test_diagnostics_clean(self):
        diag = qubit_rep().diagnostics()
        assert diag.unitary_residual < 1e-12
        assert diag.identity_residual == 0.0
        assert diag.homomorphism_residual < 1e-12
        assert diag.pairs_checked == 4
        assert diag.ok()

    def test_requires_two_points(self):
        with pytest.raises(ValueError, match="two-point"):
            qubit_rep(space_of(3))


class TestCyclicRep:
    @given(st.integers(1, 9))
    @settings(max_examples=9, deadline=None)
    def test_fourier_conjugation_is_position_shift(self, n):
        rep = cyclic_dft_rep(n)
        shift = Permutation(tuple((j + 1) % n for j in range(n)))
        matrix = rep(shift)
        expected = np.zeros((n, n))
        for j in range(n):
            expected[(j + 1) % n, j] = 1.0
        assert linalg.max_abs(matrix - expected) < 1e-12

    def test_exact_homomorphism(self):
        diag = cyclic_dft_rep(6).diagnostics()
        assert diag.ok(1e-12, 1e-12)

    def test_space_size_must_match(self):
        with pytest.raises(ValueError, match="does not match"):
            cyclic_dft_rep(3, space_of(4))

    def test_rep_requires_full_coverage(self):
        space = space_of(2)
        group = PermutationGroup.generate(space, (Permutation((1, 0)),))
        with pytest.raises(ValueError, match="every group element"):
            UnitaryRep(group, {group.identity: np.eye(2)})


class TestCoherentFamily:
    def test_states_keyed_by_element(self):
        family = qubit_family()
        assert np.allclose(family.states[Permutation((0, 1))], [1, 0])
        state = family.states[Permutation((1, 0))]
        assert abs(state[0]) < 1e-12 and abs(abs(state[1]) - 1) < 1e-12

    def test_rejects_zero_base(self):
        with pytest.raises(ValueError, match="nonzero"):
            CoherentFamily(qubit_rep(), np.zeros(2))

    def test_rejects_wrong_dimension(self):
        with pytest.raises(ValueError, match="dimension"):
            CoherentFamily(qubit_rep(), np.array([1, 0, 0], dtype=complex))

    def test_injectivity_holds_for_orbit_bases(self):
        result = check_coherent_injectivity(cyclic_family(4))
        assert result.ok
        assert result.min_distance == pytest.approx(np.sqrt(2))
        assert result.max_overlap == pytest.approx(0.0, abs=1e-12)

    def test_injectivity_fails_for_invariant_base(self):
        # the uniform vector is fixed by every position shift
        rep = cyclic_dft_rep(3)
        base = np.ones(3, dtype=complex) / np.sqrt(3)
        result = check_coherent_injectivity(CoherentFamily(rep, base))
        assert not result.ok
        assert result.witness is not None

    def test_phase_scaled_base_gives_same_operator(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        theta = spin_z_variable(space)
        a = build_operator(theta, qubit_family())
        rep = qubit_rep()
        scaled = CoherentFamily(rep, np.exp(1.3j) * np.array([1, 0], dtype=complex))
        b = build_operator(theta, scaled)
        assert linalg.max_abs(a.operator - b.operator) < 1e-12


class TestBuildOperator:
    def test_qubit_operator_is_diag_plus_minus(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        theta = spin_z_variable(space)
        bundle = build_operator(theta, qubit_family())
        assert linalg.max_abs(bundle.operator - np.diag([1.0, -1.0])) < 1e-12
        assert bundle.eigenvalue_multiplicities() == ((-1.0, 1), (1.0, 1))
        assert bundle.is_nondegenerate()

    def test_cyclic_position_operator(self):
        space = PointSpace(id="cycle-4", labels=("0", "1", "2", "3"))
        position = ConceptualVariable("position", space, ("0", "1", "2", "3"), (0, 1, 2, 3))
        bundle = build_operator(position, cyclic_family(4))
        assert linalg.max_abs(bundle.operator - np.diag([0.0, 1, 2, 3])) < 1e-12

    def test_coarse_variable_gives_degenerate_spectrum(self):
        space = PointSpace(id="cycle-4", labels=("0", "1", "2", "3"))
        parity = ConceptualVariable("parity", space, ("+1", "-1"), (0, 1, 0, 1))
        bundle = build_operator(parity, cyclic_family(4))
        mults = bundle.eigenvalue_multiplicities()
        assert [m for _, m in mults] == [2, 2]
        assert [v for v, _ in mults] == pytest.approx([-1.0, 1.0])
        assert not bundle.is_nondegenerate()
        # projectors pick out the even and odd position subspaces
        minus = bundle.projectors[-1.0]
        assert linalg.max_abs(minus - np.diag([0.0, 1, 0, 1])) < 1e-12

    def test_qa_labels_ask_the_variables_question(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        bundle = build_operator(spin_z_variable(space), qubit_family())
        qa = bundle.qa_labels[1.0]
        assert qa.question == "What is spin-z?"
        assert qa.answer == "spin-z = +1"

    def test_requires_matching_domain(self):
        theta = variable_from_assignment(space_of(2), (0, 1))
        with pytest.raises(DomainMismatchError):
            build_operator(theta, qubit_family())

    def test_requires_regular_action(self):
        # S3 has order 6 on 3 points: not regular, labeling is ambiguous
        space = space_of(3)
        group = PermutationGroup.generate(
            space, (Permutation((1, 0, 2)), Permutation((1, 2, 0)))
        )
        matrices = {k: np.eye(3, dtype=complex) for k in group.elements}
        rep = UnitaryRep(group, matrices)
        family = CoherentFamily.__new__(CoherentFamily)
        family.rep = rep
        family.base = np.array([1, 0, 0], dtype=complex)
        family.states = {k: family.base for k in group.elements}
        theta = variable_from_assignment(space, (0, 0, 1))
        with pytest.raises(ValueError, match="regular"):
            build_operator(theta, family)

    def test_collision_rejected(self):
        rep = cyclic_dft_rep(3)
        base = np.ones(3, dtype=complex) / np.sqrt(3)  # shift-invariant
        family = CoherentFamily(rep, base)
        theta = variable_from_assignment(space_of(3, "cycle"), (0, 1, 2))
        theta = ConceptualVariable("t", rep.group.space, ("0", "1", "2"), (0, 1, 2))
        with pytest.raises(CoherentCollisionError):
            build_operator(theta, family)

    def test_non_orthogonal_groups_rejected(self):
        rep = cyclic_dft_rep(4)
        rng = np.random.default_rng(5)
        base = rng.normal(size=4) + 1j * rng.normal(size=4)
        base /= np.linalg.norm(base)
        family = CoherentFamily(rep, base)
        parity = ConceptualVariable(
            "parity", rep.group.space, ("+1", "-1"), (0, 1, 0, 1)
        )
        # a generic base makes different-value states non-orthogonal
        with pytest.raises(OrthogonalityError):
            build_operator(parity, family)


class TestConjugationLaw:
    @given(st.integers(0, 3))
    @settings(max_examples=4, deadline=None)
    def test_cyclic_covariance_exact(self, power):
        space = PointSpace(id="cycle-4", labels=("0", "1", "2", "3"))
        position = ConceptualVariable("position", space, ("0", "1", "2", "3"), (0, 1, 2, 3))
        family = cyclic_family(4)
        shift = Permutation((1, 2, 3, 0))
        element = Permutation.identity(4)
        for _ in range(power):
            element = shift * element
        result = conjugation_check(position, family, element)
        assert result.ok
        assert result.residual < 1e-12

    def test_qubit_covariance(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        theta = spin_z_variable(space)
        result = conjugation_check(theta, qubit_family(), Permutation((1, 0)))
        assert result.ok
        assert result.residual < 1e-12


class TestExpansion:
    def test_x_in_z_amplitudes_golden(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        z_bundle = build_operator(spin_z_variable(space), qubit_family())
        x_bundle = bundle_from_matrix("x", np.array([[0, 1], [1, 0]], dtype=complex))
        plus = expand_in_basis(x_bundle, 1, z_bundle)
        assert plus.amplitudes[0] == pytest.approx(S)
        assert plus.amplitudes[1] == pytest.approx(S)
        assert plus.ok()
        minus = expand_in_basis(x_bundle, 0, z_bundle)
        assert minus.amplitudes[0] == pytest.approx(-S)
        assert minus.amplitudes[1] == pytest.approx(S)
        assert minus.ok()

    def test_weights_sum_to_one(self):
        space = PointSpace(id="spin-values", labels=("+1", "-1"))
        z_bundle = build_operator(spin_z_variable(space), qubit_family())
        y_bundle = bundle_from_matrix("y", np.array([[0, -1j], [1j, 0]]))
        expansion = expand_in_basis(y_bundle, 0, z_bundle)
        assert expansion.weight_sum == pytest.approx(1.0)
        assert expansion.reconstruction_error < 1e-10

    def test_degenerate_basis_rejected(self):
        degenerate = bundle_from_matrix("flat", np.eye(2, dtype=complex))
        x_bundle = bundle_from_matrix("x", np.array([[0, 1], [1, 0]], dtype=complex))
        with pytest.raises(DegenerateBasisError):
            expand_in_basis(x_bundle, 0, degenerate)
        with pytest.raises(DegenerateBasisError):
            expand_in_basis(degenerate, 0, x_bundle)

    def test_index_range(self):
        x_bundle = bundle_from_matrix("x", np.array([[0, 1], [1, 0]], dtype=complex))
        z_bundle = bundle_from_matrix("z", np.diag([1.0, -1.0]))
        with pytest.raises(ValueError, match="out of range"):
            expand_in_basis(x_bundle, 2, z_bundle)

    def test_dimension_mismatch(self):
        a = bundle_from_matrix("a", np.diag([1.0, -1.0]))
        b = bundle_from_matrix("b", np.diag([0.0, 1.0, 2.0]))
        with pytest.raises(ValueError, match="dimension mismatch"):
            expand_in_basis(a, 0, b)


class TestBundleFromMatrix:
    def test_value_labels_and_eigenbasis_points(self):
        bundle = bundle_from_matrix("z", np.diag([1.0, -1.0]))
        assert bundle.variable.values == ("-1", "1")
        assert bundle.variable.domain.labels == ("e0", "e1")
        assert bundle.eigenvalue_multiplicities() == ((-1.0, 1), (1.0, 1))

    def test_rejects_non_hermitian(self):
        with pytest.raises(linalg.NotHermitianError):
            bundle_from_matrix("bad", np.array([[0, 1], [0, 0]], dtype=complex))


class TestCommutant:
    def test_abelian_two_dim_rep_is_reducible(self):
        diag = commutant_diagnostic(qubit_rep())
        assert diag.commutant_dimension == 2
        assert not diag.irreducible

    def test_trivial_group_commutant_is_full(self):
        space = space_of(2)
        group = PermutationGroup.generate(space, ())
        rep = UnitaryRep(group, {group.identity: np.eye(2, dtype=complex)})
        diag = commutant_diagnostic(rep)
        assert diag.commutant_dimension == 4
        assert not diag.irreducible

"""Execute a scenario's checks and assemble the verification report.

Each handler turns one check request into a record with a status, residuals
and witnesses.  Tolerances resolve from the module defaults, scenario
overrides, then a global scale factor; the resolved table is embedded in
every report.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import linalg, representations, spin
from .groups import (
    NotPermissibleError,
    PermutationGroup,
    are_related,
    flag_trivial_exchange,
    induced_group,
    is_permissible,
)
from .harness import (
    VERDICT_MIXED,
    ThoughtScenario,
    classify_thoughts,
    exhaustive_falsifier,
    theorem_a1_search,
)
from .report import (
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_INFORMATIONAL,
    STATUS_NOT_APPLICABLE,
    STATUS_PASS,
    CheckRecord,
    VerificationReport,
)
from .representations import (
    CoherentFamily,
    build_operator,
    bundle_from_matrix,
    check_coherent_injectivity,
    commutant_diagnostic,
    conjugation_check,
    expand_in_basis,
)
from .scenario import Scenario, ScenarioError
from .spaces import VariableFamily, maximal_accessible

__all__ = ["RunFlags", "run_scenario", "DEFAULT_TOLERANCES", "resolve_tolerances"]

DEFAULT_TOLERANCES: dict[str, float] = {
    "hermitian": 1e-10,
    "unitary": 1e-10,
    "rep_homomorphism": 1e-8,
    "spectral_reconstruction": 1e-8,
    "eigen_cluster_gap": 1e-8,
    "injectivity_distance": 1e-6,
    "injectivity_overlap": 1e-8,
    "orthogonal_grouping": 1e-8,
    "conjugation_residual": 1e-8,
    "expansion_reconstruction": 1e-10,
    "expansion_weight": 1e-10,
    "singlet_eigen": 1e-10,
    "anticorrelation": 1e-10,
    "commutant": 1e-8,
}


def resolve_tolerances(overrides: dict[str, float], scale: float) -> dict[str, float]:
    if scale <= 0:
        raise ValueError("tolerance scale must be positive")
    merged = dict(DEFAULT_TOLERANCES)
    for key, value in overrides.items():
        if key not in merged:
            raise ScenarioError(f"tolerances.{key}: unknown tolerance name")
        merged[key] = value
    return {k: v * scale for k, v in merged.items()}


@dataclass
class RunFlags:
    tolerance_scale: float = 1.0
    exhaustive_relatedness: bool = False
    max_n: int | None = None


@dataclass
class _Context:
    scenario: Scenario
    tolerances: dict[str, float]
    flags: RunFlags
    _family_cache: dict[tuple[Any, ...], Any] = field(default_factory=dict)

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def coherent_family(self) -> CoherentFamily:
        key = ("family",)
        if key not in self._family_cache:
            rep = self.scenario.build_representation()
            base = self.scenario.base_state
            if base is None:
                base = np.zeros(rep.dim, dtype=complex)
                base[0] = 1.0
            self._family_cache[key] = CoherentFamily(rep, base)
        return self._family_cache[key]

    def thought_scenario(
        self, group: PermutationGroup, spec_params: dict[str, Any], path: str
    ) -> ThoughtScenario:
        """Family of candidate thoughts: named members, or every scenario variable."""
        if "members" in spec_params:
            raw = spec_params["members"]
            if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
                raise ScenarioError(f"{path}.members: expected a list of variable names")
            members = tuple(self.scenario.variable(name, f"{path}.members") for name in raw)
        else:
            members = tuple(self.scenario.variables.values())
        return ThoughtScenario(self.scenario.space, VariableFamily(members), group)


def _status(ok: bool) -> str:
    return STATUS_PASS if ok else STATUS_FAIL


def _param_str(spec_params: dict[str, Any], key: str, path: str) -> str:
    if key not in spec_params:
        raise ScenarioError(f"{path}.{key}: required parameter is missing")
    value = spec_params[key]
    if not isinstance(value, str):
        raise ScenarioError(f"{path}.{key}: expected a string")
    return value


def _expectation(params: dict[str, Any]) -> bool:
    value = params.get("expect", True)
    if not isinstance(value, bool):
        raise ScenarioError("expect: expected true or false")
    return value


def _handle_permissibility(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    theta = ctx.scenario.variable(_param_str(spec_params, "variable", path), path)
    group = ctx.scenario.group_for(spec_params, path)
    expect = _expectation(spec_params)
    result = is_permissible(theta, group)
    details: dict[str, Any] = {
        "variable": theta.name,
        "group_order": group.order,
        "permissible": result.ok,
        "expected": expect,
    }
    if result.witness is not None:
        details["witness"] = {
            "k": result.witness.k,
            "phi1": result.witness.phi1,
            "phi2": result.witness.phi2,
        }
    return CheckRecord("", "permissibility", _status(result.ok == expect), details)


def _handle_induced_group(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    theta = ctx.scenario.variable(_param_str(spec_params, "variable", path), path)
    group = ctx.scenario.group_for(spec_params, path)
    try:
        induced, hom = induced_group(theta, group)
    except NotPermissibleError as exc:
        return CheckRecord(
            "",
            "induced-group",
            STATUS_ERROR,
            {
                "variable": theta.name,
                "error": str(exc),
                "witness": {
                    "k": exc.witness.k,
                    "phi1": exc.witness.phi1,
                    "phi2": exc.witness.phi2,
                },
            },
        )
    verified = hom.verify()
    source_transitive = group.is_transitive()
    induced_transitive = induced.is_transitive()
    propagation_ok = induced_transitive if source_transitive else True
    details = {
        "variable": theta.name,
        "source_order": group.order,
        "induced_order": induced.order,
        "induced_elements": list(induced.elements),
        "homomorphism_verified": verified,
        "source_transitive": source_transitive,
        "induced_transitive": induced_transitive,
        "transitivity_propagated": propagation_ok,
    }
    return CheckRecord("", "induced-group", _status(verified and propagation_ok), details)


def _handle_theorem1(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    theta = ctx.scenario.variable(_param_str(spec_params, "variable", path), path)
    base_point = int(spec_params.get("base_point", 0))
    details: dict[str, Any] = {"variable": theta.name}

    if "eta" in spec_params and ctx.scenario.space.product is not None:
        eta = ctx.scenario.variable(spec_params["eta"], path)
        exclusion_group = ctx.scenario.group_for(spec_params, path)
        if flag_trivial_exchange(theta, eta, exclusion_group):
            details["excluded"] = (
                "the pair is related only through the coordinate swap; no "
                "transformation content"
            )
            return CheckRecord("", "theorem1-hypotheses", STATUS_NOT_APPLICABLE, details)

    family = ctx.coherent_family()
    group = family.group
    permissibility = is_permissible(theta, group)
    details["permissible"] = permissibility.ok
    if not permissibility.ok:
        details["witness"] = {
            "k": permissibility.witness.k,
            "phi1": permissibility.witness.phi1,
            "phi2": permissibility.witness.phi2,
        }
        return CheckRecord("", "theorem1-hypotheses", STATUS_NOT_APPLICABLE, details)

    diag = family.rep.diagnostics()
    details["representation"] = {
        "unitary_residual": diag.unitary_residual,
        "identity_residual": diag.identity_residual,
        "homomorphism_residual": diag.homomorphism_residual,
        "pairs_checked": diag.pairs_checked,
    }
    rep_ok = diag.ok(ctx.tol("unitary"), ctx.tol("rep_homomorphism"))

    injectivity = check_coherent_injectivity(
        family, ctx.tol("injectivity_distance"), ctx.tol("injectivity_overlap")
    )
    details["coherent_injectivity"] = {
        "ok": injectivity.ok,
        "min_distance": injectivity.min_distance,
        "max_overlap": injectivity.max_overlap,
    }

    irreducibility = commutant_diagnostic(family.rep, ctx.tol("commutant"))
    details["irreducibility"] = {
        "commutant_dimension": irreducibility.commutant_dimension,
        "irreducible": irreducibility.irreducible,
        "note": "diagnostic only; the construction does not require irreducibility",
    }

    try:
        bundle = build_operator(
            theta,
            family,
            base_point,
            ctx.tol("orthogonal_grouping"),
            ctx.tol("injectivity_distance"),
            ctx.tol("injectivity_overlap"),
        )
    except (representations.CoherentCollisionError, representations.OrthogonalityError, ValueError) as exc:
        details["error"] = str(exc)
        return CheckRecord("", "theorem1-hypotheses", STATUS_ERROR, details)

    clusters = bundle.eigenvalue_multiplicities()
    numeric_values = sorted(theta.numeric_values())
    spectrum_matches = len(clusters) == len(numeric_values) and all(
        abs(cv - nv) <= 1e-8 for (cv, _), nv in zip(clusters, numeric_values)
    )
    nondegenerate = bundle.is_nondegenerate()
    # Here the point space is the maximal variable's own value space, so the
    # finest partition is legitimately accessible.
    scenario_family = VariableFamily(
        tuple(ctx.scenario.variables.values()), inaccessible_total=False
    )
    maximal = theta in set(maximal_accessible(scenario_family))
    details["operator"] = {
        "eigenvalues": [c.value for c in bundle.spectral.clusters],
        "multiplicities": [c.multiplicity for c in bundle.spectral.clusters],
        "spectrum_matches_values": spectrum_matches,
        "nondegenerate": nondegenerate,
        "maximal_in_family": maximal,
        "qa_labels": {
            f"{value:.12g}": [qa.question, qa.answer]
            for value, qa in sorted(bundle.qa_labels.items())
        },
    }
    maximality_law_ok = maximal == nondegenerate
    details["maximal_iff_nondegenerate"] = maximality_law_ok
    ok = rep_ok and injectivity.ok and spectrum_matches and maximality_law_ok
    return CheckRecord("", "theorem1-hypotheses", _status(ok), details)


def _handle_theorem2(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    theta = ctx.scenario.variable(_param_str(spec_params, "variable", path), path)
    family = ctx.coherent_family()
    base_point = int(spec_params.get("base_point", 0))
    permissibility = is_permissible(theta, family.group)
    if not permissibility.ok:
        return CheckRecord(
            "",
            "theorem2",
            STATUS_NOT_APPLICABLE,
            {
                "variable": theta.name,
                "reason": "theta is not permissible under the acting group",
                "witness": {
                    "k": permissibility.witness.k,
                    "phi1": permissibility.witness.phi1,
                    "phi2": permissibility.witness.phi2,
                },
            },
        )
    tol = ctx.tol("conjugation_residual")
    per_element = []
    max_residual = 0.0
    for t in family.group.elements:
        result = conjugation_check(theta, family, t, base_point, tol)
        per_element.append({"element": t, "residual": result.residual})
        max_residual = max(max_residual, result.residual)
    details = {
        "variable": theta.name,
        "elements_checked": len(per_element),
        "max_residual": max_residual,
        "per_element": per_element,
    }
    return CheckRecord("", "theorem2", _status(max_residual <= tol), details)


def _handle_eq1(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    basis_var = ctx.scenario.variable(_param_str(spec_params, "basis", path), path)
    family = ctx.coherent_family()
    base_point = int(spec_params.get("base_point", 0))
    basis_bundle = build_operator(
        basis_var,
        family,
        base_point,
        ctx.tol("orthogonal_grouping"),
        ctx.tol("injectivity_distance"),
        ctx.tol("injectivity_overlap"),
    )
    target_spec = spec_params.get("target")
    if not isinstance(target_spec, dict):
        raise ScenarioError(f"{path}.target: expected a mapping")
    if "direction" in target_spec:
        direction = spin.SpinDirection.from_vector(target_spec["direction"])
        target_bundle = bundle_from_matrix(
            f"spin({direction.x:.6g},{direction.y:.6g},{direction.z:.6g})",
            spin.spin_component_operator(direction),
        )
        target_desc: Any = {"direction": [direction.x, direction.y, direction.z]}
    elif "variable" in target_spec:
        target_var = ctx.scenario.variable(target_spec["variable"], path)
        target_bundle = build_operator(
            target_var,
            family,
            base_point,
            ctx.tol("orthogonal_grouping"),
            ctx.tol("injectivity_distance"),
            ctx.tol("injectivity_overlap"),
        )
        target_desc = {"variable": target_var.name}
    else:
        raise ScenarioError(f"{path}.target: expected a direction or a variable")
    index = spec_params.get("index", 0)
    if not isinstance(index, int):
        raise ScenarioError(f"{path}.index: expected an integer")
    try:
        expansion = expand_in_basis(target_bundle, index, basis_bundle)
    except (representations.DegenerateBasisError, ValueError) as exc:
        return CheckRecord(
            "",
            "eq1-expansion",
            STATUS_ERROR,
            {"basis": basis_var.name, "target": target_desc, "error": str(exc)},
        )
    recon_tol = ctx.tol("expansion_reconstruction")
    weight_tol = ctx.tol("expansion_weight")
    ok = (
        expansion.reconstruction_error <= recon_tol
        and abs(expansion.weight_sum - 1.0) <= weight_tol
    )
    details = {
        "basis": basis_var.name,
        "target": target_desc,
        "eigenvector_index": index,
        "amplitudes": list(expansion.amplitudes),
        "reconstruction_error": expansion.reconstruction_error,
        "weight_sum": expansion.weight_sum,
    }
    return CheckRecord("", "eq1-expansion", _status(ok), details)


def _handle_singlet_delta(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    directions = spec_params.get("directions", 100)
    seed = spec_params.get("seed", 7)
    if not isinstance(directions, int) or directions < 0:
        raise ScenarioError(f"{path}.directions: expected a nonnegative integer")
    if not isinstance(seed, int):
        raise ScenarioError(f"{path}.seed: expected an integer")
    state = spin.singlet()
    bundle = spin.delta_operator()
    eigen_residual = linalg.max_abs(bundle.operator @ state - (-3.0) * state)
    multiplicities = [c.multiplicity for c in bundle.spectral.clusters]
    cluster_values = [c.value for c in bundle.spectral.clusters]
    degenerate = [c for c in bundle.spectral.clusters if c.multiplicity > 1]
    sweep = spin.AXES + spin.random_directions(directions, seed)
    max_anti = max(spin.anticorrelation_residual(d) for d in sweep)
    eigen_tol = ctx.tol("singlet_eigen")
    anti_tol = ctx.tol("anticorrelation")
    ok = (
        eigen_residual <= eigen_tol
        and sorted(multiplicities) == [1, 3]
        and max_anti <= anti_tol
    )
    details = {
        "singlet": list(state),
        "eigenvalue_residual_at_minus_3": eigen_residual,
        "cluster_values": cluster_values,
        "cluster_multiplicities": multiplicities,
        "degenerate_value": degenerate[0].value if degenerate else None,
        "degenerate_value_note": "determined by diagonalization, not asserted a priori",
        "directions_checked": len(sweep),
        "max_anticorrelation_residual": max_anti,
    }
    return CheckRecord("", "singlet-delta", _status(ok), details)


def _relation_payload(relations) -> list[dict[str, Any]]:
    return [
        {
            "pair": [r.left, r.right],
            "witness": r.witness,
            "elements_searched": r.searched,
        }
        for r in relations
    ]


def _hypotheses_payload(hypotheses) -> dict[str, Any]:
    return {
        "transitive": hypotheses.transitive,
        "trivial_isotropy": hypotheses.trivial_isotropy,
        "permissible": {name: ok for name, ok in hypotheses.permissible},
        "trivial_exchange_flagged": hypotheses.trivial_exchange_flagged,
        "satisfied": hypotheses.satisfied,
    }


def _handle_a1_search(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    group = ctx.scenario.group_for(spec_params, path)
    thought = ctx.thought_scenario(group, spec_params, path)
    theta = ctx.scenario.variable(_param_str(spec_params, "theta", path), path)
    eta_name = spec_params.get("eta", theta.name)
    if not isinstance(eta_name, str):
        raise ScenarioError(f"{path}.eta: expected a string")
    eta = ctx.scenario.variable(eta_name, path)
    all_partitions = bool(spec_params.get("all-partitions", False))
    result = theorem_a1_search(
        thought,
        theta,
        eta,
        all_partitions=all_partitions,
        exhaustive=ctx.flags.exhaustive_relatedness,
    )
    details: dict[str, Any] = {
        "theta": theta.name,
        "eta": eta.name,
        "all_partitions": all_partitions,
        "reason": result.reason,
        "candidates_checked": result.candidates_checked,
    }
    if result.witness_partition is not None:
        details["witness_partition"] = list(result.witness_partition)
        details["witness_element"] = result.witness_element
    status = {
        "pass": STATUS_PASS,
        "fail": STATUS_FAIL,
        "not-applicable": STATUS_NOT_APPLICABLE,
    }[result.status]
    return CheckRecord("", "a1-search", status, details)


def _handle_a2_classify(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    group = ctx.scenario.group_for(spec_params, path)
    thought = ctx.thought_scenario(group, spec_params, path)
    result = classify_thoughts(thought, exhaustive=ctx.flags.exhaustive_relatedness)
    details = {
        "classes": [list(c) for c in result.classes],
        "verdict": result.verdict,
        "relations": _relation_payload(result.relations),
        "hypotheses": _hypotheses_payload(result.hypotheses),
    }
    contradiction = result.verdict == VERDICT_MIXED and result.hypotheses.satisfied
    ok = not contradiction
    expected = spec_params.get("expect-verdict")
    if expected is not None:
        if not isinstance(expected, str):
            raise ScenarioError(f"{path}.expect-verdict: expected a string")
        details["expected_verdict"] = expected
        ok = ok and (result.verdict == expected)
    return CheckRecord("", "a2-classify", _status(ok), details)


def _handle_a2_falsify(ctx: _Context, spec_params: dict[str, Any], path: str) -> CheckRecord:
    max_n = spec_params.get("max-n", 4)
    if ctx.flags.max_n is not None:
        max_n = ctx.flags.max_n
    if not isinstance(max_n, int) or max_n < 1:
        raise ScenarioError(f"{path}.max-n: expected a positive integer")
    report = exhaustive_falsifier(max_n)
    details = {
        "max_n": report.max_n,
        "instances": report.instances,
        "families": report.families,
        "verdicts": {k: v for k, v in report.verdict_counts},
        "subgroup_classes_by_degree": {
            str(n): count for n, count in report.subgroup_classes_by_degree
        },
        "mixed_with_satisfied_hypotheses": report.mixed_with_satisfied_hypotheses,
        "complete": report.complete,
    }
    if report.counterexamples:
        details["counterexamples"] = [
            {
                "n": c.n,
                "blocks": c.blocks,
                "family": [list(p) for p in c.family],
                "group": [list(g) for g in c.group_elements],
                "classes": [list(names) for names in c.classes],
            }
            for c in report.counterexamples
        ]
    return CheckRecord(
        "", "a2-falsify", _status(report.mixed_with_satisfied_hypotheses == 0), details
    )


_HANDLERS: dict[str, Callable[[_Context, dict[str, Any], str], CheckRecord]] = {
    "permissibility": _handle_permissibility,
    "induced-group": _handle_induced_group,
    "theorem1-hypotheses": _handle_theorem1,
    "theorem2": _handle_theorem2,
    "eq1-expansion": _handle_eq1,
    "singlet-delta": _handle_singlet_delta,
    "a1-search": _handle_a1_search,
    "a2-classify": _handle_a2_classify,
    "a2-falsify": _handle_a2_falsify,
}


def run_scenario(scenario: Scenario, flags: RunFlags | None = None) -> VerificationReport:
    """Run every requested check once, in order, and assemble the report."""
    flags = flags or RunFlags()
    tolerances = resolve_tolerances(scenario.tolerance_overrides, flags.tolerance_scale)
    ctx = _Context(scenario=scenario, tolerances=tolerances, flags=flags)
    report = VerificationReport(
        scenario=scenario.name,
        tolerances=tolerances,
        flags={
            "tolerance_scale": flags.tolerance_scale,
            "exhaustive_relatedness": flags.exhaustive_relatedness,
            "max_n_override": flags.max_n,
            "informational": scenario.informational,
        },
    )
    for i, spec in enumerate(scenario.checks):
        path = f"checks[{i}]"
        handler = _HANDLERS[spec.type]
        started = time.perf_counter()
        try:
            record = handler(ctx, spec.params, path)
        except ScenarioError:
            raise
        except Exception as exc:  # pragma: no cover - surfaced, not silenced
            record = CheckRecord(
                "", spec.type, STATUS_ERROR, {"error": f"{type(exc).__name__}: {exc}"}
            )
        record.elapsed_ms = (time.perf_counter() - started) * 1000.0
        record.name = spec.label()
        if scenario.informational and record.status in (
            STATUS_PASS,
            STATUS_FAIL,
            STATUS_NOT_APPLICABLE,
        ):
            record.details["underlying_status"] = record.status
            record.status = STATUS_INFORMATIONAL
        report.add(record)
    return report

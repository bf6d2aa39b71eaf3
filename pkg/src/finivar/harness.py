"""Brute-force verification of the relatedness dichotomy claims.

A thought scenario is a family of same-sized maximal variables plus a group
acting on their shared domain.  Classification partitions the family into
relatedness classes; the falsifier enumerates every scenario up to a size
bound (balanced value spaces, all subgroup actions up to conjugacy) and
demands that no mixed verdict survives with the structural hypotheses
(transitivity, trivial isotropy, permissibility, no declared coordinate
exchange) intact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .groups import (
    Permutation,
    PermutationGroup,
    PermissibilityResult,
    are_related,
    flag_trivial_exchange,
    is_permissible,
)
from .spaces import (
    ConceptualVariable,
    PointSpace,
    VariableFamily,
    canonical_partition,
    maximal_accessible,
)
from .subgroups import (
    MAX_EXACT_DEGREE,
    SubgroupClass,
    enumerate_subgroups,
    subgroup_conjugacy_classes,
)

__all__ = [
    "ThoughtScenario",
    "PairRelation",
    "HypothesisReport",
    "ClassificationResult",
    "classify_thoughts",
    "A1SearchResult",
    "theorem_a1_search",
    "ProofConstruction",
    "proof_group_construction",
    "FalsifierCounterexample",
    "FalsifierReport",
    "exhaustive_falsifier",
    "balanced_partitions",
    "partitions_with_block_sizes",
]

A1_PARTITION_ENUM_LIMIT = 6
VERDICT_ALL_RELATED = "all-related"
VERDICT_ALL_DIFFERENT = "all-essentially-different"
VERDICT_MIXED = "mixed"


@dataclass(frozen=True)
class ThoughtScenario:
    """A family of candidate thoughts plus the acting group."""

    space: PointSpace
    family: VariableFamily
    group: PermutationGroup

    def __post_init__(self) -> None:
        if self.family.domain != self.space:
            raise ValueError("family domain must be the scenario space")
        if self.group.space != self.space:
            raise ValueError("group must act on the scenario space")
        members = self.family.generators
        names = [m.name for m in members]
        if len(set(names)) != len(names):
            raise ValueError("family members need distinct names for reporting")
        cardinalities = {m.value_count for m in members}
        if len(cardinalities) != 1:
            raise ValueError(
                f"family members must share one value-space cardinality, got {sorted(cardinalities)}"
            )
        maximal = set(maximal_accessible(self.family))
        for m in members:
            if m not in maximal:
                raise ValueError(f"family member {m.name!r} is not maximal within the family")

    @property
    def members(self) -> tuple[ConceptualVariable, ...]:
        return self.family.generators


@dataclass(frozen=True)
class PairRelation:
    left: str
    right: str
    witness: Permutation | None
    searched: int

    @property
    def related(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class HypothesisReport:
    """Do the structural hypotheses hold for a scenario?"""

    transitive: bool
    trivial_isotropy: bool
    permissible: tuple[tuple[str, bool], ...]
    trivial_exchange_flagged: bool | None

    @property
    def all_permissible(self) -> bool:
        return all(ok for _, ok in self.permissible)

    @property
    def satisfied(self) -> bool:
        exchange_ok = self.trivial_exchange_flagged is not True
        return self.transitive and self.trivial_isotropy and self.all_permissible and exchange_ok


@dataclass(frozen=True)
class ClassificationResult:
    classes: tuple[tuple[str, ...], ...]
    verdict: str
    relations: tuple[PairRelation, ...]
    hypotheses: HypothesisReport


def _hypothesis_report(
    scenario: ThoughtScenario,
    related_pairs: Iterable[tuple[ConceptualVariable, ConceptualVariable]] = (),
) -> HypothesisReport:
    group = scenario.group
    permissible = tuple(
        (m.name, bool(is_permissible(m, group))) for m in scenario.members
    )
    exchange: bool | None = None
    if scenario.space.product is not None:
        exchange = any(
            flag_trivial_exchange(a, b, group) for a, b in related_pairs
        )
    return HypothesisReport(
        transitive=group.is_transitive(),
        trivial_isotropy=group.has_trivial_isotropy(),
        permissible=permissible,
        trivial_exchange_flagged=exchange,
    )


def classify_thoughts(scenario: ThoughtScenario, exhaustive: bool = False) -> ClassificationResult:
    """Partition a family of at least three thoughts into relatedness classes."""
    members = scenario.members
    if len(members) < 3:
        raise ValueError(f"classification needs at least 3 thoughts, got {len(members)}")
    searched = (
        scenario.group.order
        if not exhaustive
        else _factorial(scenario.space.size)
    )
    relations: list[PairRelation] = []
    parent = list(range(len(members)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    related_pairs: list[tuple[ConceptualVariable, ConceptualVariable]] = []
    for i, j in itertools.combinations(range(len(members)), 2):
        witness = are_related(members[i], members[j], scenario.group, exhaustive=exhaustive)
        relations.append(
            PairRelation(members[i].name, members[j].name, witness, searched)
        )
        if witness is not None:
            related_pairs.append((members[i], members[j]))
            parent[find(i)] = find(j)
    grouped: dict[int, list[str]] = {}
    for i, m in enumerate(members):
        grouped.setdefault(find(i), []).append(m.name)
    classes = tuple(tuple(names) for _, names in sorted(grouped.items()))
    if len(classes) == 1:
        verdict = VERDICT_ALL_RELATED
    elif all(len(c) == 1 for c in classes):
        verdict = VERDICT_ALL_DIFFERENT
    else:
        verdict = VERDICT_MIXED
    hypotheses = _hypothesis_report(scenario, related_pairs)
    return ClassificationResult(classes, verdict, tuple(relations), hypotheses)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass(frozen=True)
class A1SearchResult:
    status: str  # "pass" | "fail" | "not-applicable"
    reason: str
    candidates_checked: int
    witness_partition: tuple[int, ...] | None = None
    witness_element: Permutation | None = None


def theorem_a1_search(
    scenario: ThoughtScenario,
    theta: ConceptualVariable,
    eta: ConceptualVariable,
    all_partitions: bool = False,
    exhaustive: bool = False,
) -> A1SearchResult:
    """Look for a maximal variable related to theta yet unrelated to eta.

    Hypotheses (theta and eta maximal and related, theta permissible, group
    transitive with trivial isotropy) are checked first; any failure yields a
    not-applicable result naming the failed hypothesis.  Candidates are the
    family members, plus every partition with theta's block shape when
    ``all_partitions`` is set (small spaces only).  Finding a candidate
    falsifies the claim and is reported as a failure with the witness.
    """
    group = scenario.group
    maximal = set(maximal_accessible(scenario.family))
    if theta not in maximal or eta not in maximal:
        return A1SearchResult(
            "not-applicable", "theta and eta must be maximal within the family", 0
        )
    relating = are_related(theta, eta, group, exhaustive=exhaustive)
    if relating is None:
        return A1SearchResult(
            "not-applicable", "theta and eta are not related under the group", 0
        )
    permissibility = is_permissible(theta, group)
    if not permissibility:
        w = permissibility.witness
        return A1SearchResult(
            "not-applicable",
            f"theta is not permissible: k={list(w.k.images)} splits points "
            f"{w.phi1}, {w.phi2}",
            0,
        )
    if not group.is_transitive():
        return A1SearchResult("not-applicable", "group is not transitive", 0)
    if not group.has_trivial_isotropy():
        return A1SearchResult("not-applicable", "group has nontrivial isotropy", 0)

    skip = {theta.partition(), eta.partition()}
    candidates: list[ConceptualVariable] = [
        m for m in scenario.members if m.partition() not in skip
    ]
    if all_partitions:
        n = scenario.space.size
        if n > A1_PARTITION_ENUM_LIMIT:
            raise ValueError(
                f"partition enumeration is limited to {A1_PARTITION_ENUM_LIMIT} points, "
                f"space has {n}"
            )
        sizes = tuple(sorted((len(b) for b in theta.blocks()), reverse=True))
        seen = {c.partition() for c in candidates} | skip
        for assignment in partitions_with_block_sizes(n, sizes):
            if assignment in seen:
                continue
            seen.add(assignment)
            candidates.append(_variable_from_partition(scenario.space, assignment, "candidate"))
    checked = 0
    for lam in candidates:
        checked += 1
        to_theta = are_related(lam, theta, group, exhaustive=exhaustive)
        if to_theta is None:
            continue
        to_eta = are_related(lam, eta, group, exhaustive=exhaustive)
        if to_eta is None:
            return A1SearchResult(
                "fail",
                "found a maximal variable related to theta but not to eta",
                checked,
                witness_partition=lam.partition(),
                witness_element=to_theta,
            )
    return A1SearchResult("pass", "no qualifying variable exists", checked)


def _variable_from_partition(
    space: PointSpace, assignment: tuple[int, ...], name: str
) -> ConceptualVariable:
    count = max(assignment) + 1
    return ConceptualVariable(
        name=name,
        domain=space,
        values=tuple(f"c{i}" for i in range(count)),
        assignment=assignment,
    )


def partitions_with_block_sizes(n: int, sizes: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All set partitions of 0..n-1 with the given block-size multiset.

    Returned as canonical assignment tuples in lexicographic order.  The
    recursion anchors each block at the smallest unused point, so no partition
    appears twice.
    """
    if sum(sizes) != n:
        raise ValueError(f"block sizes {sizes} do not sum to {n}")
    results: set[tuple[int, ...]] = set()
    sizes_sorted = tuple(sorted(sizes, reverse=True))

    def recurse(remaining: frozenset[int], left: tuple[int, ...], blocks: tuple[tuple[int, ...], ...]):
        if not remaining:
            assignment = [0] * n
            for b_idx, block in enumerate(sorted(blocks)):
                for p in block:
                    assignment[p] = b_idx
            results.add(canonical_partition(tuple(assignment)))
            return
        anchor = min(remaining)
        tried: set[int] = set()
        for size in left:
            if size in tried:
                continue
            tried.add(size)
            rest_sizes = list(left)
            rest_sizes.remove(size)
            pool = sorted(remaining - {anchor})
            for combo in itertools.combinations(pool, size - 1):
                block = (anchor,) + combo
                recurse(remaining - set(block), tuple(rest_sizes), blocks + (block,))

    recurse(frozenset(range(n)), sizes_sorted, ())
    return tuple(sorted(results))


def balanced_partitions(n: int, blocks: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of 0..n-1 into equally sized blocks."""
    if n % blocks != 0:
        raise ValueError(f"{blocks} blocks cannot evenly split {n} points")
    size = n // blocks
    return partitions_with_block_sizes(n, tuple([size] * blocks))


@dataclass(frozen=True)
class ProofConstruction:
    """Outcome of searching for a regular structure-preserving subgroup."""

    found: bool
    group: PermutationGroup | None
    stabilizer_order: int
    subgroups_searched: int
    transitive: bool
    trivial_isotropy: bool
    theta_permissible: bool
    reason: str


def proof_group_construction(
    scenario: ThoughtScenario,
    theta: ConceptualVariable,
    lam: ConceptualVariable,
    xi: ConceptualVariable,
    budget: int = 100_000,
) -> ProofConstruction:
    """Search for a group permuting theta-fibers that acts regularly.

    Candidate elements are the permutations preserving all three fiber
    structures (so only the triple's information moves); among the subgroups
    of that stabilizer the lexicographically smallest transitive one with
    trivial isotropy is selected.  Not finding one is reported, not raised:
    the claim under test asserts existence.
    """
    space = scenario.space
    n = space.size
    if n > 8:
        raise ValueError(f"construction search is limited to 8 points, space has {n}")
    for var in (theta, lam, xi):
        if var.is_constant():
            raise ValueError(f"variable {var.name!r} is constant, hence not maximal")
        if var.domain != space:
            raise ValueError(f"variable {var.name!r} does not live on the scenario space")
    counts = {var.value_count for var in (theta, lam, xi)}
    if len(counts) != 1:
        raise ValueError("the three variables must have matching value-space sizes")
    maximal = set(maximal_accessible(scenario.family))
    for var in (theta, lam, xi):
        if var not in maximal:
            raise ValueError(f"variable {var.name!r} is not maximal within the family")

    def preserves(images: tuple[int, ...], var: ConceptualVariable) -> bool:
        assignment = var.assignment
        for block in var.blocks():
            v0 = assignment[images[block[0]]]
            for p in block[1:]:
                if assignment[images[p]] != v0:
                    return False
        return True

    stabilizer = tuple(
        images
        for images in itertools.permutations(range(n))
        if preserves(images, theta) and preserves(images, lam) and preserves(images, xi)
    )
    subgroups = enumerate_subgroups(stabilizer, n, budget=budget)
    searched = len(subgroups)
    chosen: tuple[tuple[int, ...], ...] | None = None
    for els in subgroups:
        if len(els) != n:
            continue
        candidate = PermutationGroup(
            space, (), tuple(Permutation(t) for t in els)
        )
        if candidate.is_transitive() and candidate.has_trivial_isotropy():
            chosen = els
            break
    if chosen is None:
        return ProofConstruction(
            found=False,
            group=None,
            stabilizer_order=len(stabilizer),
            subgroups_searched=searched,
            transitive=False,
            trivial_isotropy=False,
            theta_permissible=False,
            reason="no transitive subgroup with trivial isotropy preserves the triple",
        )
    group = PermutationGroup(space, (), tuple(Permutation(t) for t in chosen))
    return ProofConstruction(
        found=True,
        group=group,
        stabilizer_order=len(stabilizer),
        subgroups_searched=searched,
        transitive=True,
        trivial_isotropy=True,
        theta_permissible=bool(is_permissible(theta, group)),
        reason="selected the lexicographically smallest regular subgroup",
    )


@dataclass(frozen=True)
class FalsifierCounterexample:
    n: int
    blocks: int
    family: tuple[tuple[int, ...], ...]
    group_elements: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class FalsifierReport:
    max_n: int
    instances: int
    families: int
    verdict_counts: tuple[tuple[str, int], ...]
    mixed_with_satisfied_hypotheses: int
    counterexamples: tuple[FalsifierCounterexample, ...]
    subgroup_classes_by_degree: tuple[tuple[int, int], ...]
    complete: bool

    def verdict_count(self, verdict: str) -> int:
        return dict(self.verdict_counts).get(verdict, 0)


def exhaustive_falsifier(
    max_n: int,
    progress: Callable[[str], None] | None = None,
) -> FalsifierReport:
    """Classify every scenario with balanced value spaces up to ``max_n`` points.

    Families are all 3-subsets of the balanced partitions for each block count;
    groups are all subgroup actions up to conjugacy (covering all conjugates
    because every family relabeling is itself enumerated).  The report counts
    verdicts and must find no mixed verdict whose hypotheses are satisfied.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    if max_n > MAX_EXACT_DEGREE:
        raise ValueError(
            f"exhaustive enumeration is guaranteed exact only up to {MAX_EXACT_DEGREE} points"
        )
    instances = 0
    families_total = 0
    verdict_counts: dict[str, int] = {
        VERDICT_ALL_RELATED: 0,
        VERDICT_ALL_DIFFERENT: 0,
        VERDICT_MIXED: 0,
    }
    mixed_satisfied = 0
    counterexamples: list[FalsifierCounterexample] = []
    classes_by_degree: list[tuple[int, int]] = []
    for n in range(1, max_n + 1):
        shapes: list[tuple[int, tuple[tuple[int, ...], ...]]] = []
        for blocks in range(2, n):
            if n % blocks != 0:
                continue
            partitions = balanced_partitions(n, blocks)
            if len(partitions) >= 3:
                shapes.append((blocks, partitions))
        if not shapes:
            continue
        space = PointSpace(id=f"points-{n}", labels=tuple(str(i) for i in range(n)))
        group_classes: tuple[SubgroupClass, ...] = subgroup_conjugacy_classes(n)
        classes_by_degree.append((n, len(group_classes)))
        groups = [
            PermutationGroup(space, (), tuple(Permutation(t) for t in cls.elements))
            for cls in group_classes
        ]
        for blocks, partitions in shapes:
            for combo in itertools.combinations(partitions, 3):
                families_total += 1
                members = tuple(
                    _variable_from_partition(space, assignment, f"t{i}")
                    for i, assignment in enumerate(combo)
                )
                family = VariableFamily(members)
                for group in groups:
                    scenario = ThoughtScenario(space, family, group)
                    result = classify_thoughts(scenario)
                    instances += 1
                    verdict_counts[result.verdict] += 1
                    if result.verdict == VERDICT_MIXED and result.hypotheses.satisfied:
                        mixed_satisfied += 1
                        counterexamples.append(
                            FalsifierCounterexample(
                                n=n,
                                blocks=blocks,
                                family=combo,
                                group_elements=tuple(p.images for p in group.elements),
                                classes=result.classes,
                            )
                        )
            if progress is not None:
                progress(f"n={n} blocks={blocks}: done ({instances} instances so far)")
    return FalsifierReport(
        max_n=max_n,
        instances=instances,
        families=families_total,
        verdict_counts=tuple(sorted(verdict_counts.items())),
        mixed_with_satisfied_hypotheses=mixed_satisfied,
        counterexamples=tuple(counterexamples),
        subgroup_classes_by_degree=tuple(classes_by_degree),
        complete=True,
    )

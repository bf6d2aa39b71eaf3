"""Exhaustive subgroup enumeration for small symmetric groups.

Every subgroup is reachable by repeatedly joining cyclic subgroups, so a
breadth-first search over class representatives against the full list of
cyclic subgroups enumerates all conjugacy classes.  Exactness is guaranteed
for degree <= 6; everything is ordered deterministically so downstream counts
are stable across runs.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

__all__ = ["SubgroupClass", "subgroup_conjugacy_classes", "enumerate_subgroups", "MAX_EXACT_DEGREE"]

MAX_EXACT_DEGREE = 6


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[b[i]] for i in range(len(a)))


def _inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _conjugate(h: tuple[int, ...], g: tuple[int, ...], g_inv: tuple[int, ...]) -> tuple[int, ...]:
    return _compose(g, _compose(h, g_inv))


def _cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def close_tuples(
    generators: tuple[tuple[int, ...], ...], n: int
) -> frozenset[tuple[int, ...]]:
    ident = tuple(range(n))
    els = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in generators:
            for b in frontier:
                c = _compose(a, b)
                if c not in els:
                    els.add(c)
                    new.append(c)
        frontier = new
    return frozenset(els)


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy-class representative with a small generating set."""

    elements: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _class_invariant(elements: frozenset[tuple[int, ...]]) -> tuple:
    counts = Counter(_cycle_type(p) for p in elements)
    return (len(elements), tuple(sorted(counts.items())))


@lru_cache(maxsize=None)
def subgroup_conjugacy_classes(n: int) -> tuple[SubgroupClass, ...]:
    """All subgroups of the degree-n symmetric group, one per conjugacy class.

    Deterministic: cyclic subgroups are joined in lexicographic order and the
    returned classes are sorted by (order, element list).
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > MAX_EXACT_DEGREE:
        raise ValueError(
            f"exhaustive subgroup enumeration is guaranteed exact only up to degree "
            f"{MAX_EXACT_DEGREE}, got {n}"
        )
    sym = sorted(itertools.permutations(range(n)))
    ident = tuple(range(n))

    # distinct cyclic subgroups, keeping the lexicographically first generator
    cyclic: dict[frozenset[tuple[int, ...]], tuple[int, ...]] = {}
    for g in sym:
        powers = {ident}
        p = g
        while p != ident:
            powers.add(p)
            p = _compose(p, g)
        key = frozenset(powers)
        if key not in cyclic:
            cyclic[key] = g
    cyclics = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    inverses = {g: _inverse(g) for g in sym}

    trivial = frozenset({ident})
    reps: list[tuple[frozenset[tuple[int, ...]], tuple[tuple[int, ...], ...]]] = [
        (trivial, ())
    ]
    by_invariant: dict[tuple, list[int]] = {_class_invariant(trivial): [0]}
    seen_exact: set[frozenset[tuple[int, ...]]] = {trivial}

    def is_known_class(candidate: frozenset[tuple[int, ...]], gens: tuple) -> bool:
        key = _class_invariant(candidate)
        bucket = by_invariant.get(key)
        if bucket is None:
            return False
        for idx in bucket:
            known, known_gens = reps[idx]
            if known == candidate:
                return True
            for g in sym:
                g_inv = inverses[g]
                if all(
                    _conjugate(x, g, g_inv) in candidate for x in known_gens
                ):
                    return True
        return False

    frontier = [0]
    while frontier:
        next_frontier: list[int] = []
        for idx in frontier:
            base, base_gens = reps[idx]
            for cyc_set, cyc_gen in cyclics:
                if cyc_set <= base:
                    continue
                gens = base_gens + (cyc_gen,)
                joined = close_tuples(gens, n)
                if joined in seen_exact:
                    continue
                seen_exact.add(joined)
                if is_known_class(joined, gens):
                    continue
                reps.append((joined, gens))
                new_idx = len(reps) - 1
                by_invariant.setdefault(_class_invariant(joined), []).append(new_idx)
                next_frontier.append(new_idx)
        frontier = next_frontier

    ordered = sorted(
        reps, key=lambda item: (len(item[0]), sorted(item[0]))
    )
    return tuple(
        SubgroupClass(elements=tuple(sorted(els)), generators=gens)
        for els, gens in ordered
    )


def enumerate_subgroups(
    elements: tuple[tuple[int, ...], ...], n: int, budget: int = 100_000
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All subgroups (no conjugacy folding) of an explicitly given group.

    Join-BFS over the group's cyclic subgroups with exact deduplication.
    Raises when more than ``budget`` distinct subgroups appear.
    """
    member_set = set(elements)
    ident = tuple(range(n))
    cyclic: dict[frozenset[tuple[int, ...]], tuple[int, ...]] = {}
    for g in sorted(member_set):
        powers = {ident}
        p = g
        while p != ident:
            powers.add(p)
            p = _compose(p, g)
        key = frozenset(powers)
        if key not in cyclic:
            cyclic[key] = g
    cyclics = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    trivial = frozenset({ident})
    seen: dict[frozenset[tuple[int, ...]], tuple[tuple[int, ...], ...]] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        next_frontier: list[frozenset[tuple[int, ...]]] = []
        for base in frontier:
            base_gens = seen[base]
            for cyc_set, cyc_gen in cyclics:
                if cyc_set <= base:
                    continue
                joined = close_tuples(base_gens + (cyc_gen,), n)
                if joined in seen:
                    continue
                if len(seen) >= budget:
                    raise RuntimeError(
                        f"subgroup enumeration exceeded the budget of {budget} subgroups"
                    )
                seen[joined] = base_gens + (cyc_gen,)
                next_frontier.append(joined)
        frontier = next_frontier
    return tuple(
        tuple(sorted(els)) for els in sorted(seen, key=lambda s: (len(s), sorted(s)))
    )

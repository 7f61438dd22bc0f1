"""Hyperreflection verification on Cayley hypergraphs, plus the structure
theory of special subgroups, sectors, subsystems, and walls."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, Subgroup, conjugate_subgroup, subgroup_generated
from .hypergraph import (
    CayleySystem,
    cayley_hypergraph,
    fixed_edge_set,
    wall_complement_components,
)
from .words import Word, dual_word, length_and_reduced

WRONG_COMPONENT_COUNT = "WrongComponentCount"
NOT_TRANSITIVE = "NotTransitive"
NOT_FREE = "NotFree"


@dataclass(frozen=True)
class HyperreflectionReport:
    """Outcome of the simple-transitivity check for one fundamental subgroup.

    The subgroup passes when the complement of its fixed edges splits into as
    many components as the subgroup has elements and s -> s * C0 is a
    bijection onto the components (C0 is the component of the identity).
    """

    sigma_index: int
    fixed_edges: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, int], ...] | None  # (component label, element) when passing
    passed: bool
    reason: str | None = None
    detail: str | None = None


def is_hyperreflection(system: CayleySystem, sigma_index: int) -> HyperreflectionReport:
    sub = system.sigma[sigma_index]
    grp = system.group
    fixed = tuple(sorted(fixed_edge_set(system, sub)))
    comps = wall_complement_components(system, sub)

    def fail(reason: str, detail: str) -> HyperreflectionReport:
        return HyperreflectionReport(
            sigma_index, fixed, comps, None, False, reason, detail
        )

    if len(comps) != len(sub):
        return fail(
            WRONG_COMPONENT_COUNT,
            f"{len(comps)} components for a subgroup of order {len(sub)}",
        )
    label_of = {v: c[0] for c in comps for v in c}
    block_of = {c[0]: frozenset(c) for c in comps}
    c0 = block_of[label_of[0]]
    seen: dict[int, int] = {}
    for s in sub.elements:
        row = grp.mul_table[s]
        image = frozenset(row[v] for v in c0)
        label = label_of[row[0]]
        if image != block_of[label]:
            return fail(
                NOT_TRANSITIVE,
                f"element {s} maps the identity component off the partition",
            )
        if label in seen:
            return fail(
                NOT_FREE,
                f"elements {seen[label]} and {s} both send the identity "
                f"component to component {label}",
            )
        seen[label] = s
    if len(seen) != len(comps):
        missing = sorted(set(block_of) - set(seen))[0]
        return fail(NOT_TRANSITIVE, f"no element reaches component {missing}")
    action = tuple(sorted(seen.items()))
    return HyperreflectionReport(sigma_index, fixed, comps, action, True)


def verify_system(system: CayleySystem) -> list[HyperreflectionReport]:
    """One report per fundamental subgroup; the system passes when all do."""
    return [is_hyperreflection(system, j) for j in range(len(system.sigma))]


def system_passes(reports: Iterable[HyperreflectionReport]) -> bool:
    return all(r.passed for r in reports)


def special_subgroup(system: CayleySystem, indices: Iterable[int]) -> Subgroup:
    """Subgroup generated by the chosen fundamentals; empty set gives {1}."""
    idx = sorted(set(indices))
    for j in idx:
        if not 0 <= j < len(system.sigma):
            raise ValueError(f"sigma index {j} out of range")
    gens = [a for j in idx for a in system.sigma[j].elements[1:]]
    return subgroup_generated(system.group, gens)


def support(system: CayleySystem, g: int) -> frozenset[int]:
    """Sigma indices appearing in any reduced word for g (well defined)."""
    _, w = length_and_reduced(system, g)
    return frozenset(j for _, j in w.letters)


def sector_decompose(system: CayleySystem, indices: Iterable[int], g: int) -> tuple[int, int]:
    """Split g = h k with h the unique shortest element of g G_A and k in G_A.

    The split is length additive; h = g exactly when g lies in the
    fundamental A-sector.
    """
    grp = system.group
    ga = special_subgroup(system, indices)
    grow = grp.mul_table[g]
    coset = [grow[a] for a in ga.elements]
    h = min(coset, key=lambda x: (system.lengths[x], x))
    ties = sum(1 for x in coset if system.lengths[x] == system.lengths[h])
    assert ties == 1, "sector minimum must be unique"
    k = grp.mul(grp.inv(h), g)
    assert k in ga.element_set
    assert system.lengths[g] == system.lengths[h] + system.lengths[k]
    return h, k


def in_fundamental_sector(system: CayleySystem, indices: Iterable[int], g: int) -> bool:
    return sector_decompose(system, indices, g)[0] == g


def subsystem(system: CayleySystem, indices: Iterable[int]) -> CayleySystem:
    """Cayley system of a special subgroup over the chosen fundamentals.

    Element i of the result is element special_subgroup(system, A).elements[i]
    of the parent (sorted parent ids, identity first); names carry over, so
    the id map is recoverable by name.
    """
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("subsystem needs a nonempty set of sigma indices")
    sub = special_subgroup(system, idx)
    ids = sub.elements
    pos = {g: i for i, g in enumerate(ids)}
    grp = system.group
    mul = tuple(tuple(pos[grp.mul_table[a][b]] for b in ids) for a in ids)
    inv = tuple(pos[grp.inv_table[a]] for a in ids)
    names = tuple(grp.names[a] for a in ids)
    sub_group = FiniteGroup(mul, inv, names)
    new_sigma = [
        Subgroup(sub_group, tuple(sorted(pos[x] for x in system.sigma[j].elements)))
        for j in idx
    ]
    return cayley_hypergraph(sub_group, new_sigma)


@dataclass(frozen=True)
class Wall:
    """A conjugate of a fundamental subgroup together with the edges it fixes."""

    subgroup: Subgroup
    fixed_edges: tuple[int, ...]


def walls(system: CayleySystem) -> tuple[Wall, ...]:
    """All distinct conjugates of fundamentals, in (sigma index, conjugator)
    discovery order; identity is element-set equality."""
    seen: set[tuple[int, ...]] = set()
    out = []
    for j in range(len(system.sigma)):
        base = system.sigma[j]
        for g in system.group.elements():
            conj = conjugate_subgroup(base, g)
            if conj.elements in seen:
                continue
            seen.add(conj.elements)
            out.append(Wall(conj, tuple(sorted(fixed_edge_set(system, conj)))))
    return tuple(out)


def wall_crossings(system: CayleySystem, w: Word) -> tuple[tuple[int, Wall], ...]:
    """Wall crossed at each step: step i crosses the wall of T_i.

    Consecutive partial products always land in different components of the
    T_i complement (t_i is nonidentity), which is asserted.
    """
    dw = dual_word(system, w)
    label_cache: dict[tuple[int, ...], dict[int, int]] = {}
    out = []
    for k, sub in enumerate(dw.subgroups):
        key = sub.elements
        if key not in label_cache:
            comps = wall_complement_components(system, sub)
            label_cache[key] = {v: c[0] for c in comps for v in c}
        labels = label_cache[key]
        assert labels[dw.partials[k]] != labels[dw.partials[k + 1]]
        out.append((k + 1, Wall(sub, tuple(sorted(fixed_edge_set(system, sub))))))
    return tuple(out)


def verification_as_dict(
    system: CayleySystem, reports: Sequence[HyperreflectionReport]
) -> dict:
    """JSON-ready report: per-member verdicts, partitions, and wall list."""
    names = system.group.names
    passed = system_passes(reports)
    members = []
    for r in reports:
        entry: dict = {
            "sigma_index": r.sigma_index,
            "subgroup": [names[x] for x in system.sigma[r.sigma_index].elements],
            "verdict": "pass" if r.passed else "fail",
            "reason": r.reason,
            "detail": r.detail,
            "fixed_edges": list(r.fixed_edges),
            "components": [[names[v] for v in c] for c in r.components],
            "action": None
            if r.action is None
            else [
                {"component": names[label], "element": names[s]}
                for label, s in r.action
            ],
        }
        members.append(entry)
    doc = {
        "passed": passed,
        "order": system.group.order,
        "sigma": [
            {"index": j, "elements": [names[x] for x in sub.elements]}
            for j, sub in enumerate(system.sigma)
        ],
        "members": members,
    }
    if passed:
        doc["walls"] = [
            {
                "subgroup": [names[x] for x in wl.subgroup.elements],
                "fixed_edges": list(wl.fixed_edges),
            }
            for wl in walls(system)
        ]
    return doc

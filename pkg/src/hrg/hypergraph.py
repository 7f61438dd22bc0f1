"""Finite hypergraphs, connected components, and Cayley hypergraphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, Subgroup


class TrivialSubgroup(ValueError):
    """A fundamental family member has fewer than two elements."""


class NotGenerating(ValueError):
    """The family's union fails to generate: the Cayley hypergraph is disconnected."""


@dataclass(frozen=True)
class Hypergraph:
    """Vertex ids plus a list of nonempty vertex sets; edge ids are list indices."""

    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]


def hypergraph(vertices: Iterable[int], edges: Iterable[Iterable[int]]) -> Hypergraph:
    verts = tuple(sorted({int(v) for v in vertices}))
    vset = set(verts)
    out = []
    for k, e in enumerate(edges):
        es = frozenset(int(v) for v in e)
        if not es:
            raise ValueError(f"edge {k} is empty")
        if not es <= vset:
            raise ValueError(f"edge {k} contains unknown vertices")
        out.append(es)
    return Hypergraph(verts, tuple(out))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items: Iterable[int]):
        self.parent = {v: v for v in items}

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _component_blocks(
    vertices: Iterable[int], edges: Iterable[frozenset[int]]
) -> tuple[tuple[int, ...], ...]:
    uf = _UnionFind(vertices)
    for e in edges:
        it = iter(e)
        anchor = next(it)
        for v in it:
            uf.union(anchor, v)
    blocks: dict[int, list[int]] = {}
    for v in uf.parent:
        blocks.setdefault(uf.find(v), []).append(v)
    ordered = sorted((sorted(b) for b in blocks.values()), key=lambda b: b[0])
    return tuple(tuple(b) for b in ordered)


def components(h: Hypergraph) -> tuple[tuple[int, ...], ...]:
    """Partition into walk-connected blocks, each sorted, ordered by least vertex."""
    return _component_blocks(h.vertices, h.edges)


@dataclass(frozen=True)
class Walk:
    """Alternating vertex/edge sequence; every step stays inside its edge."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def walk(h: Hypergraph, vertices: Sequence[int], edge_ids: Sequence[int]) -> Walk:
    if len(vertices) != len(edge_ids) + 1:
        raise ValueError("a walk needs one more vertex than edges")
    for i, eid in enumerate(edge_ids):
        e = h.edges[eid]
        if vertices[i] not in e or vertices[i + 1] not in e:
            raise ValueError(f"step {i + 1} is not inside edge {eid}")
    return Walk(tuple(vertices), tuple(edge_ids))


@dataclass(frozen=True, eq=False)
class CayleySystem:
    """Cayley hypergraph of (group, sigma): vertices are elements, edges are left cosets.

    Construction eagerly computes the word length of every element by BFS;
    this equals hypergraph distance from the identity vertex, so connectivity
    (the family generates) falls out of the same pass.
    """

    group: FiniteGroup
    sigma: tuple[Subgroup, ...]
    hypergraph: Hypergraph
    edge_subgroup: tuple[int, ...]  # sigma index of each edge
    edge_rep: tuple[int, ...]  # least element of each edge's coset
    edge_lookup: tuple[tuple[int, ...], ...]  # [sigma index][vertex] -> edge id
    lengths: tuple[int, ...]  # word length of each element

    def edge_index(self, sigma_index: int, g: int) -> int:
        """Edge id of the coset g * sigma[sigma_index]."""
        return self.edge_lookup[sigma_index][g]

    @property
    def edge_count(self) -> int:
        return len(self.hypergraph.edges)


def cayley_hypergraph(group: FiniteGroup, sigma: Sequence[Subgroup]) -> CayleySystem:
    """Build Cay(G, sigma); sigma members must be nontrivial and jointly generating."""
    members = tuple(sigma)
    if not members:
        raise NotGenerating("sigma is empty")
    seen_sets: set[tuple[int, ...]] = set()
    for j, s in enumerate(members):
        if s.group is not group:
            raise ValueError(f"sigma[{j}] belongs to a different group")
        if not s.nontrivial:
            raise TrivialSubgroup(f"sigma[{j}] is trivial")
        if s.elements in seen_sets:
            raise ValueError(f"sigma[{j}] duplicates an earlier member")
        seen_sets.add(s.elements)

    n = group.order
    mul = group.mul_table
    edges: list[frozenset[int]] = []
    edge_sub: list[int] = []
    edge_rep: list[int] = []
    lookup_rows: list[tuple[int, ...]] = []
    for j, s in enumerate(members):
        row = [-1] * n
        for g in range(n):
            if row[g] >= 0:
                continue
            grow = mul[g]
            coset = frozenset(grow[a] for a in s.elements)
            eid = len(edges)
            edges.append(coset)
            edge_sub.append(j)
            edge_rep.append(g)
            for v in coset:
                row[v] = eid
        lookup_rows.append(tuple(row))

    steps = sorted({a for s in members for a in s.elements if a != 0})
    dist = [-1] * n
    dist[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            row = mul[g]
            d = dist[g] + 1
            for a in steps:
                h = row[a]
                if dist[h] < 0:
                    dist[h] = d
                    nxt.append(h)
        frontier = nxt
    if any(d < 0 for d in dist):
        raise NotGenerating("the union of sigma does not generate the group")

    hg = Hypergraph(tuple(range(n)), tuple(edges))
    return CayleySystem(
        group,
        members,
        hg,
        tuple(edge_sub),
        tuple(edge_rep),
        tuple(lookup_rows),
        tuple(dist),
    )


def fixed_edge_set(system: CayleySystem, t: Subgroup) -> frozenset[int]:
    """Edge ids gS with t contained in the conjugate g S g^-1.

    Only edges can be fixed: left multiplication by a nonidentity element
    moves every vertex, so the fixed set of any nontrivial subgroup is a set
    of edges.
    """
    grp = system.group
    if t.group is not grp:
        raise ValueError("subgroup belongs to a different group")
    mul = grp.mul_table
    fixed = []
    for eid in range(system.edge_count):
        s = system.sigma[system.edge_subgroup[eid]]
        g = system.edge_rep[eid]
        gi = grp.inv_table[g]
        girow = mul[gi]
        sset = s.element_set
        if all(mul[girow[x]][g] in sset for x in t.elements):
            fixed.append(eid)
    return frozenset(fixed)


def wall_complement_components(
    system: CayleySystem, t: Subgroup
) -> tuple[tuple[int, ...], ...]:
    """Components after deleting the edges fixed by t; all vertices stay."""
    removed = fixed_edge_set(system, t)
    keep = (e for i, e in enumerate(system.hypergraph.edges) if i not in removed)
    return _component_blocks(system.hypergraph.vertices, keep)

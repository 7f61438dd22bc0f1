"""Graph products of groups: words and elementary moves, canonical normal
forms, multiplication, enumeration of finite products, and chamber labels for
vertex-group walls."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .groups import FiniteGroup, Subgroup, subgroup
from .hypergraph import CayleySystem, cayley_hypergraph


class InfiniteOrCapExceeded(ValueError):
    """Normal-form enumeration passed its cap without closing."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


@dataclass(frozen=True, eq=False)
class GraphOfGroups:
    """Simple graph with a nontrivial finite group at each vertex.

    The vertex list order is the linear order used by normal forms.
    """

    vertex_ids: tuple[str, ...]
    groups: tuple[FiniteGroup, ...]
    edges: frozenset[tuple[int, int]]  # sorted index pairs

    @cached_property
    def _neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in self.groups]
        for a, b in self.edges:
            out[a].add(b)
            out[b].add(a)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {vid: i for i, vid in enumerate(self.vertex_ids)}

    def adjacent(self, i: int, j: int) -> bool:
        return j in self._neighbors[i]

    def index_of(self, vertex_id: str) -> int:
        try:
            return self._index[vertex_id]
        except KeyError:
            raise ValueError(f"unknown vertex {vertex_id!r}") from None

    @property
    def vertex_count(self) -> int:
        return len(self.groups)

    def rotated(self, v_index: int) -> "GraphOfGroups":
        """Same graph with the vertex order rotated so v_index comes first."""
        n = len(self.groups)
        order = [(v_index + k) % n for k in range(n)]
        pos = {old: new for new, old in enumerate(order)}
        edges = frozenset(
            tuple(sorted((pos[a], pos[b]))) for a, b in self.edges
        )
        return GraphOfGroups(
            tuple(self.vertex_ids[o] for o in order),
            tuple(self.groups[o] for o in order),
            edges,
        )


def graph_of_groups(
    vertex_ids: Sequence[str],
    groups: Sequence[FiniteGroup],
    edge_pairs: Iterable[Sequence],
) -> GraphOfGroups:
    ids = tuple(str(v) for v in vertex_ids)
    if len(set(ids)) != len(ids):
        raise ValueError("vertex ids must be distinct")
    gs = tuple(groups)
    if len(gs) != len(ids):
        raise ValueError("need one group per vertex")
    if not ids:
        raise ValueError("need at least one vertex")
    for vid, g in zip(ids, gs):
        if g.order < 2:
            raise ValueError(f"vertex {vid!r} has a trivial group")
    index = {vid: i for i, vid in enumerate(ids)}

    def resolve(x) -> int:
        if isinstance(x, str):
            if x not in index:
                raise ValueError(f"edge endpoint {x!r} is not a vertex id")
            return index[x]
        x = int(x)
        if not 0 <= x < len(ids):
            raise ValueError(f"edge endpoint {x} out of range")
        return x

    edges = set()
    for pair in edge_pairs:
        a, b = (resolve(x) for x in pair)
        if a == b:
            raise ValueError(f"loop at vertex {ids[a]!r}")
        edges.add((min(a, b), max(a, b)))
    return GraphOfGroups(ids, gs, frozenset(edges))


Syllable = tuple[int, int]  # (vertex index, element id)


@dataclass(frozen=True)
class GPWord:
    """Sequence of syllables (v, g) with g a nonidentity element of the vertex group."""

    syllables: tuple[Syllable, ...]

    def __len__(self) -> int:
        return len(self.syllables)


@dataclass(frozen=True)
class NormalWord(GPWord):
    """Canonical word: no hidden same-vertex merge remains, and each position
    holds the least-ordered vertex whose syllable commutes to the front."""


def gp_word(gp: GraphOfGroups, syllables: Iterable[Sequence[int]]) -> GPWord:
    out = []
    for k, (v, g) in enumerate(syllables):
        if not 0 <= v < gp.vertex_count:
            raise ValueError(f"syllable {k}: vertex index {v} out of range")
        if not 1 <= g < gp.groups[v].order:
            raise ValueError(
                f"syllable {k}: element {g} is not a nonidentity element of the "
                f"group at {gp.vertex_ids[v]!r}"
            )
        out.append((v, g))
    return GPWord(tuple(out))


def is_normal(gp: GraphOfGroups, w: GPWord | Sequence[Syllable]) -> bool:
    """No equal consecutive vertices; adjacent-vertex consecutive pairs ascend."""
    syl = w.syllables if isinstance(w, GPWord) else tuple(w)
    for (v1, _), (v2, _) in zip(syl, syl[1:]):
        if v1 == v2:
            return False
        if v1 > v2 and gp.adjacent(v1, v2):
            return False
    return True


def _merge_hit(gp: GraphOfGroups, syl: Sequence[Syllable]) -> tuple[int, int] | None:
    """Least (i, j) with equal vertices and everything between adjacent to them."""
    for i, (v, _) in enumerate(syl):
        for j in range(i + 1, len(syl)):
            vj = syl[j][0]
            if vj == v:
                return i, j
            if not gp.adjacent(v, vj):
                break
    return None


def _reduce(gp: GraphOfGroups, syl: Sequence[Syllable]) -> list[Syllable]:
    out = list(syl)
    while True:
        hit = _merge_hit(gp, out)
        if hit is None:
            return out
        i, j = hit
        v = out[i][0]
        merged = gp.groups[v].mul(out[i][1], out[j][1])
        del out[j]
        if merged == 0:
            del out[i]
        else:
            out[i] = (v, merged)


def _insert_canonical(gp: GraphOfGroups, out: list[Syllable], s: Syllable) -> None:
    # out is canonical; the new syllable lands after its last non-commuting
    # predecessor and then before the first larger-vertex syllable
    v = s[0]
    start = 0
    for k, (u, _) in enumerate(out):
        if not gp.adjacent(u, v):
            start = k + 1
    j = start
    while j < len(out) and out[j][0] < v:
        j += 1
    out.insert(j, s)


def _sort_canonical(gp: GraphOfGroups, syl: list[Syllable]) -> list[Syllable]:
    """Sort a reduced word into canonical order.

    Equivalent to repeatedly extracting the least-vertex syllable that
    commutes to the front, which is well defined on reduced words (two
    same-vertex syllables can never both be extractable) and constant across
    equivalent reduced words.
    """
    out: list[Syllable] = []
    for s in syl:
        _insert_canonical(gp, out, s)
    return out


def _normal_syllables(gp: GraphOfGroups, syl: Sequence[Syllable]) -> tuple[Syllable, ...]:
    return tuple(_sort_canonical(gp, _reduce(gp, syl)))


def _merge_canonical(
    gp: GraphOfGroups, prefix: tuple[Syllable, ...], tail: tuple[Syllable, ...]
) -> tuple[Syllable, ...]:
    """Greedy merge of two canonical runs (tail follows prefix in word order).

    The concatenation must be reduced.  Each run keeps its internal order; a
    tail syllable is emitted once its last non-commuting prefix syllable is
    out and its vertex beats the next prefix vertex.
    """
    if not tail:
        return prefix  # a prefix of a canonical word is canonical
    n_vertices = gp.vertex_count
    last_block = [0] * n_vertices
    for k, (u, _) in enumerate(prefix):
        for w in range(n_vertices):
            if not gp.adjacent(u, w):
                last_block[w] = k + 1
    out: list[Syllable] = []
    p = 0
    for s in tail:
        v = s[0]
        while p < last_block[v] or (p < len(prefix) and prefix[p][0] < v):
            out.append(prefix[p])
            p += 1
        out.append(s)
    out.extend(prefix[p:])
    return tuple(out)


def _append_one(
    gp: GraphOfGroups, syl: tuple[Syllable, ...], new: Syllable
) -> tuple[Syllable, ...]:
    """Normal form of (canonical word) * (one syllable), in near-linear time."""
    v, g = new
    i = len(syl) - 1
    while i >= 0:
        vi, gi = syl[i]
        if vi == v:
            merged = gp.groups[v].mul(gi, g)
            if merged == 0:
                return _merge_canonical(gp, syl[:i], syl[i + 1 :])
            return syl[:i] + ((v, merged),) + syl[i + 1 :]
        if not gp.adjacent(vi, v):
            break
        i -= 1
    # the scan stopped at the last non-commuting syllable (or ran off the
    # front), so the canonical slot lies at or after i + 1
    out = list(syl)
    j = i + 1
    while j < len(out) and out[j][0] < v:
        j += 1
    out.insert(j, new)
    return tuple(out)


def normalize(gp: GraphOfGroups, w: GPWord) -> NormalWord:
    """Canonical normal form of the represented element.

    Constant on elementary-move classes; idempotent on its own outputs.
    """
    return NormalWord(_normal_syllables(gp, w.syllables))


def normal_word(gp: GraphOfGroups, syllables: Iterable[Sequence[int]]) -> NormalWord:
    """Validate syllables already in canonical form."""
    w = gp_word(gp, syllables)
    canon = _normal_syllables(gp, w.syllables)
    if canon != w.syllables:
        raise ValueError("syllables are not in canonical normal form")
    return NormalWord(canon)


def mu_prepend(gp: GraphOfGroups, v_index: int, g: int, x: NormalWord) -> NormalWord:
    """Normal form of g * x for g in the vertex group at v_index.

    Accepts the identity (returning x unchanged); otherwise the new syllable
    either merges with the first same-vertex syllable it can reach through
    commuting syllables, or takes its canonical position.
    """
    if not 0 <= v_index < gp.vertex_count:
        raise ValueError(f"vertex index {v_index} out of range")
    if not 0 <= g < gp.groups[v_index].order:
        raise ValueError(f"element {g} out of range for vertex {gp.vertex_ids[v_index]!r}")
    if not isinstance(x, NormalWord):
        raise TypeError("mu_prepend needs a NormalWord")
    if g == 0:
        return x
    return NormalWord(_normal_syllables(gp, ((v_index, g),) + x.syllables))


def gp_multiply(gp: GraphOfGroups, x: NormalWord, y: NormalWord) -> NormalWord:
    """Normal form of the concatenation; associative with identity lambda."""
    return NormalWord(_normal_syllables(gp, x.syllables + y.syllables))


def gp_inverse(gp: GraphOfGroups, x: NormalWord) -> NormalWord:
    """Normal form of the reversed, syllable-inverted word."""
    rev = tuple((v, gp.groups[v].inv(g)) for v, g in reversed(x.syllables))
    return NormalWord(_normal_syllables(gp, rev))


def elementary_neighbors(gp: GraphOfGroups, w: GPWord, max_len: int) -> set[GPWord]:
    """Words one elementary move away.

    Moves: delete an adjacent inverse pair, merge same-vertex neighbors, swap
    adjacent-vertex neighbors, split a syllable, or insert an inverse pair.
    The growing moves respect max_len; the others always apply.
    """
    syl = w.syllables
    n = len(syl)
    out: set[GPWord] = set()
    for i in range(n - 1):
        (v1, g1), (v2, g2) = syl[i], syl[i + 1]
        if v1 == v2:
            m = gp.groups[v1].mul(g1, g2)
            if m == 0:
                out.add(GPWord(syl[:i] + syl[i + 2 :]))
            else:
                out.add(GPWord(syl[:i] + ((v1, m),) + syl[i + 2 :]))
        elif gp.adjacent(v1, v2):
            out.add(GPWord(syl[:i] + ((v2, g2), (v1, g1)) + syl[i + 2 :]))
    if n + 2 <= max_len:
        for pos in range(n + 1):
            for v, grp_v in enumerate(gp.groups):
                for g in range(1, grp_v.order):
                    out.add(
                        GPWord(syl[:pos] + ((v, g), (v, grp_v.inv(g))) + syl[pos:])
                    )
    if n + 1 <= max_len:
        for i, (v, k) in enumerate(syl):
            grp_v = gp.groups[v]
            for g in range(1, grp_v.order):
                h = grp_v.mul(grp_v.inv(g), k)
                if h != 0:
                    out.add(GPWord(syl[:i] + ((v, g), (v, h)) + syl[i + 1 :]))
    return out


def _syllable_name(gp: GraphOfGroups, s: Syllable) -> str:
    v, g = s
    return f"{gp.vertex_ids[v]}:{gp.groups[v].names[g]}"


def word_name(gp: GraphOfGroups, w: GPWord) -> str:
    if not w.syllables:
        return "1"
    return ".".join(_syllable_name(gp, s) for s in w.syllables)


@dataclass(frozen=True, eq=False)
class GPRealization:
    """Finite graph product realized on ids: id k is forms[k], sorted by
    syllable count then syllable sequence, so lambda is the identity id 0."""

    gp: GraphOfGroups
    group: FiniteGroup
    forms: tuple[NormalWord, ...]
    embeddings: tuple[tuple[int, ...], ...]  # per vertex: element id -> big id
    sigma: tuple[Subgroup, ...]  # embedded whole vertex groups

    @cached_property
    def _index(self) -> dict[tuple[Syllable, ...], int]:
        return {w.syllables: i for i, w in enumerate(self.forms)}

    def id_of(self, w: NormalWord) -> int:
        return self._index[w.syllables]

    def form_of(self, gid: int) -> NormalWord:
        return self.forms[gid]


def enumerate_group(gp: GraphOfGroups, cap: int) -> GPRealization:
    """Close the normal forms under right multiplication by vertex elements.

    Raises InfiniteOrCapExceeded as soon as more than cap distinct forms
    appear, which is how infinite products are diagnosed.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    seen: set[tuple[Syllable, ...]] = {()}
    frontier: list[tuple[Syllable, ...]] = [()]
    while frontier:
        nxt = []
        for syl in frontier:
            for v, grp_v in enumerate(gp.groups):
                for g in range(1, grp_v.order):
                    prod = _append_one(gp, syl, (v, g))
                    if prod not in seen:
                        if len(seen) >= cap:
                            raise InfiniteOrCapExceeded(
                                f"no closure within {cap} elements", cap
                            )
                        seen.add(prod)
                        nxt.append(prod)
        frontier = nxt
    ordered = sorted(seen, key=lambda s: (len(s), s))
    index = {syl: i for i, syl in enumerate(ordered)}
    mul = tuple(
        tuple(index[_normal_syllables(gp, a + b)] for b in ordered) for a in ordered
    )
    inv = tuple(
        index[
            _normal_syllables(
                gp, tuple((v, gp.groups[v].inv(g)) for v, g in reversed(a))
            )
        ]
        for a in ordered
    )
    forms = tuple(NormalWord(syl) for syl in ordered)
    names = tuple(word_name(gp, w) for w in forms)
    group = FiniteGroup(mul, inv, names)
    embeddings = tuple(
        tuple(
            index[() if g == 0 else ((v, g),)] for g in range(gp.groups[v].order)
        )
        for v in range(gp.vertex_count)
    )
    sigma = tuple(Subgroup(group, tuple(sorted(emb))) for emb in embeddings)
    return GPRealization(gp, group, forms, embeddings, sigma)


def embedded_subgroup(
    real: GPRealization, v_index: int, elements: Iterable[int]
) -> Subgroup:
    """Image of a vertex-group subgroup inside the realized product."""
    emb = real.embeddings[v_index]
    return Subgroup(real.group, tuple(sorted(emb[e] for e in set(elements) | {0})))


def composite_system(
    real: GPRealization,
    vertex_sigma: Mapping[int, Sequence[Subgroup]] | None = None,
) -> CayleySystem:
    """Cayley system on the realized product whose fundamentals are the
    embedded per-vertex fundamentals (whole vertex groups by default)."""
    subs = []
    for v in range(real.gp.vertex_count):
        if vertex_sigma is not None and v in vertex_sigma:
            for s in vertex_sigma[v]:
                if s.group is not real.gp.groups[v]:
                    raise ValueError(f"vertex {v} sigma member is not a subgroup of its group")
                subs.append(embedded_subgroup(real, v, s.elements))
        else:
            subs.append(real.sigma[v])
    return cayley_hypergraph(real.group, subs)


def weight(
    gp: GraphOfGroups,
    x: NormalWord,
    lengths: Mapping[int, Sequence[int]] | None = None,
) -> int:
    """Sum of per-vertex lengths over syllables; 1 per syllable by default."""
    total = 0
    for v, g in x.syllables:
        if lengths is not None and v in lengths:
            total += lengths[v][g]
        else:
            total += 1
    return total


def chamber_of(
    gp: GraphOfGroups,
    v_index: int,
    g: NormalWord,
    wall: Iterable[int] | None = None,
    lengths: Sequence[int] | None = None,
) -> int:
    """Label of g's chamber for the wall of the subgroup S at vertex v_index.

    Identity means g is the minimum-weight element of its right coset S * g;
    otherwise the result is the unique s in S with s^-1 * g of smaller
    weight.  The word is re-normalized under the vertex order rotated to put
    v_index first, and only its head syllable matters, so no enumeration of
    the product is needed and infinite products work.

    wall defaults to the whole vertex group; lengths is the per-element word
    length on the vertex group (1 per nonidentity element by default).
    """
    grp_v = gp.groups[v_index]
    if wall is None:
        elems: tuple[int, ...] = tuple(range(grp_v.order))
    else:
        elems = subgroup(grp_v, wall).elements
    if len(elems) < 2:
        raise ValueError("wall subgroup must be nontrivial")
    if lengths is None:
        ell: Sequence[int] = (0,) + (1,) * (grp_v.order - 1)
    else:
        ell = lengths
    rot = gp.rotated(v_index)
    n = gp.vertex_count
    syl = tuple(((v - v_index) % n, e) for v, e in g.syllables)
    nf = _normal_syllables(rot, syl)
    if not nf or nf[0][0] != 0:
        return 0
    g1 = nf[0][1]
    coset = [grp_v.mul(s, g1) for s in elems]
    best = min(ell[x] for x in coset)
    mins = [x for x in coset if ell[x] == best]
    assert len(mins) == 1, "right-coset minimum must be unique for a wall subgroup"
    m1 = mins[0]
    if m1 == g1:
        return 0
    s = grp_v.mul(g1, grp_v.inv(m1))
    assert s in set(elems)
    return s

"""Words over a Cayley system: dual words, reduction, geodesics, the exchange
trichotomy, and coset/double-coset minima."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .groups import Subgroup, conjugate_subgroup, subgroup_generated
from .hypergraph import CayleySystem, Walk, walk

Letter = tuple[int, int]  # (element id, sigma index)


class NotReduced(ValueError):
    """Operation requires a reduced word."""


@dataclass(frozen=True)
class Word:
    """Sequence of letters (s, i) with s a nonidentity member of sigma[i]."""

    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)


def make_word(system: CayleySystem, letters: Iterable[Sequence[int]]) -> Word:
    out = []
    for k, (s, j) in enumerate(letters):
        if not 0 <= j < len(system.sigma):
            raise ValueError(f"letter {k}: sigma index {j} out of range")
        if s == 0:
            raise ValueError(f"letter {k}: the identity is not a letter")
        if s not in system.sigma[j]:
            raise ValueError(f"letter {k}: element {s} is not in sigma[{j}]")
        out.append((s, j))
    return Word(tuple(out))


def represented(system: CayleySystem, w: Word) -> int:
    """The group element s_1 ... s_n."""
    return system.group.product(s for s, _ in w.letters)


@dataclass(frozen=True)
class DualWord:
    """Partial products g_0..g_n with t_i = g_i g_{i-1}^-1 and the conjugate
    subgroups T_i = g_{i-1} S_i g_{i-1}^-1 stabilizing each step's edge."""

    partials: tuple[int, ...]
    letters: tuple[int, ...]
    subgroups: tuple[Subgroup, ...]


def dual_word(system: CayleySystem, w: Word) -> DualWord:
    grp = system.group
    partials = [0]
    ts: list[int] = []
    subs: list[Subgroup] = []
    g_prev = 0
    for s, j in w.letters:
        g = grp.mul(g_prev, s)
        ts.append(grp.mul(g, grp.inv(g_prev)))
        subs.append(conjugate_subgroup(system.sigma[j], g_prev))
        partials.append(g)
        g_prev = g
    return DualWord(tuple(partials), tuple(ts), tuple(subs))


def word_walk(system: CayleySystem, w: Word) -> Walk:
    """The walk g_0, e_1, g_1, ..., g_n traced in the Cayley hypergraph."""
    dw = dual_word(system, w)
    eids = [
        system.edge_index(j, dw.partials[k]) for k, (_, j) in enumerate(w.letters)
    ]
    return walk(system.hypergraph, dw.partials, eids)


def length_of(system: CayleySystem, g: int) -> int:
    return system.lengths[g]


def length_and_reduced(system: CayleySystem, g: int) -> tuple[int, Word]:
    """Word length of g and the canonical geodesic.

    The geodesic picks, at each position, the least (sigma index, element)
    letter that still shortens the remainder, so the output is deterministic.
    """
    grp = system.group
    letters: list[Letter] = []
    rem = g
    while rem != 0:
        target = system.lengths[rem] - 1
        pick = None
        for j, sub in enumerate(system.sigma):
            for s in sub.elements[1:]:
                if system.lengths[grp.mul(grp.inv(s), rem)] == target:
                    pick = (s, j)
                    break
            if pick:
                break
        assert pick is not None, "BFS lengths admit a shortening letter"
        letters.append(pick)
        rem = grp.mul(grp.inv(pick[0]), rem)
    return system.lengths[g], Word(tuple(letters))


def geodesic_words(system: CayleySystem, g: int) -> Iterator[Word]:
    """All reduced words for g, in per-step (sigma index, element) order."""

    grp = system.group

    def rec(rem: int) -> Iterator[tuple[Letter, ...]]:
        if rem == 0:
            yield ()
            return
        target = system.lengths[rem] - 1
        for j, sub in enumerate(system.sigma):
            for s in sub.elements[1:]:
                nxt = grp.mul(grp.inv(s), rem)
                if system.lengths[nxt] == target:
                    for tail in rec(nxt):
                        yield ((s, j),) + tail

    for letters in rec(g):
        yield Word(letters)


def is_reduced(system: CayleySystem, w: Word) -> bool:
    """A word is reduced exactly when its dual subgroups are pairwise distinct."""
    seen = set()
    for sub in dual_word(system, w).subgroups:
        if sub.elements in seen:
            return False
        seen.add(sub.elements)
    return True


def reduction_trace(system: CayleySystem, w: Word) -> list[Word]:
    """Words from the input down to a reduced word, one rewrite per step.

    Each pass scans for the least pair i < j with T_i = T_j.  When
    t_i = t_j^-1 both letters are deleted; otherwise the letter at i is
    replaced by the member of S_i solving t_j t_i g_{i-1} = g_{i-1} s, and the
    letter at j is deleted.  Every step preserves the represented element and
    strictly shortens the word.
    """
    grp = system.group
    steps = [w]
    cur = w
    while True:
        dw = dual_word(system, cur)
        n = len(cur.letters)
        hit = None
        for i in range(n):
            ti_set = dw.subgroups[i].elements
            for j in range(i + 1, n):
                if dw.subgroups[j].elements == ti_set:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return steps
        i, j = hit
        letters = cur.letters
        if dw.letters[i] == grp.inv(dw.letters[j]):
            nxt = letters[:i] + letters[i + 1 : j] + letters[j + 1 :]
        else:
            g_prev = dw.partials[i]
            tji = grp.mul(dw.letters[j], dw.letters[i])
            s_new = grp.mul(grp.mul(grp.inv(g_prev), tji), g_prev)
            s_idx = letters[i][1]
            assert s_new != 0 and s_new in system.sigma[s_idx]
            nxt = letters[:i] + ((s_new, s_idx),) + letters[i + 1 : j] + letters[j + 1 :]
        cur = Word(nxt)
        steps.append(cur)


def reduce_word(system: CayleySystem, w: Word) -> Word:
    """Equivalent reduced word; the input itself when already reduced."""
    return reduction_trace(system, w)[-1]


@dataclass(frozen=True)
class ExchangeOutcome:
    """Result of prepending s_0^-1 to a reduced word: the length trichotomy.

    case 1: length drops, a letter deletion writes g = s_0 s_1 ... ^s_i ... s_n.
    case 2: length is unchanged, a letter replacement does the same.
    case 3: length rises and no reduced word for g starts inside S_0.
    """

    case: int
    index: int | None = None  # 1-based letter position for cases 1 and 2
    replacement: int | None = None
    witness: Word | None = None


def exchange(system: CayleySystem, w: Word, s0: int, s0_index: int) -> ExchangeOutcome:
    if not is_reduced(system, w):
        raise NotReduced("exchange requires a reduced word")
    if not 0 <= s0_index < len(system.sigma):
        raise ValueError(f"sigma index {s0_index} out of range")
    if s0 == 0 or s0 not in system.sigma[s0_index]:
        raise ValueError(f"element {s0} is not a nonidentity member of sigma[{s0_index}]")
    grp = system.group
    g = represented(system, w)
    n = len(w.letters)
    lg = system.lengths[g]
    ls = system.lengths[grp.mul(grp.inv(s0), g)]
    assert abs(ls - lg) <= 1, "triangle inequality for word length"
    if ls == lg - 1:
        for i in range(n):
            rest = w.letters[:i] + w.letters[i + 1 :]
            if grp.mul(s0, grp.product(s for s, _ in rest)) == g:
                return ExchangeOutcome(1, i + 1, None, Word(((s0, s0_index),) + rest))
        raise AssertionError("a deletion witness exists whenever the length drops")
    if ls == lg:
        for i in range(n):
            pre = grp.product(s for s, _ in w.letters[:i])
            suf = grp.product(s for s, _ in w.letters[i + 1 :])
            s_new = grp.mul(
                grp.mul(grp.inv(grp.mul(s0, pre)), g), grp.inv(suf)
            )
            s_i, s_idx = w.letters[i]
            if s_new != 0 and s_new != s_i and s_new in system.sigma[s_idx]:
                witness = Word(
                    ((s0, s0_index),)
                    + w.letters[:i]
                    + ((s_new, s_idx),)
                    + w.letters[i + 1 :]
                )
                assert represented(system, witness) == g
                return ExchangeOutcome(2, i + 1, s_new, witness)
        raise AssertionError("a replacement witness exists whenever the length is unchanged")
    for s in system.sigma[s0_index].elements[1:]:
        assert system.lengths[grp.mul(grp.inv(s), g)] != lg - 1, (
            "no reduced word starts inside S_0 when the length rises"
        )
    return ExchangeOutcome(3)


def coset_min(system: CayleySystem, s_index: int, g: int, side: str = "right") -> int:
    """Unique minimum-length element of Sg (right) or gS (left); uniqueness is
    asserted by enumerating the coset."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    grp = system.group
    sub = system.sigma[s_index]
    if side == "right":
        members = [grp.mul(a, g) for a in sub.elements]
    else:
        members = [grp.mul(g, a) for a in sub.elements]
    best = min(members, key=lambda x: (system.lengths[x], x))
    ties = sum(1 for x in members if system.lengths[x] == system.lengths[best])
    assert ties == 1, "coset minimum must be unique"
    return best


def _special(system: CayleySystem, indices: Iterable[int]) -> Subgroup:
    idx = sorted(set(indices))
    for j in idx:
        if not 0 <= j < len(system.sigma):
            raise ValueError(f"sigma index {j} out of range")
    gens = [a for j in idx for a in system.sigma[j].elements[1:]]
    return subgroup_generated(system.group, gens)


@dataclass(frozen=True)
class DoubleCosetMin:
    """Minimum of G_A g G_B plus an additive decomposition g = a * minimum * b."""

    minimum: int
    a: int
    b: int


def double_coset_min(
    system: CayleySystem,
    a_indices: Iterable[int],
    b_indices: Iterable[int],
    g: int,
) -> DoubleCosetMin:
    grp = system.group
    ga = _special(system, a_indices)
    gb = _special(system, b_indices)
    coset = {grp.mul(grp.mul(a, g), b) for a in ga.elements for b in gb.elements}
    w = min(coset, key=lambda x: (system.lengths[x], x))
    ties = sum(1 for x in coset if system.lengths[x] == system.lengths[w])
    assert ties == 1, "double coset minimum must be unique"
    wi = grp.inv(w)
    target = system.lengths[g] - system.lengths[w]
    for a in ga.elements:
        b = grp.mul(grp.mul(wi, grp.inv(a)), g)
        if b in gb.element_set and system.lengths[a] + system.lengths[b] == target:
            return DoubleCosetMin(w, a, b)
    raise AssertionError("an additive decomposition exists")

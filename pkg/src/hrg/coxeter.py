"""Finite Coxeter families realized as explicit permutation tables."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .groups import FiniteGroup, subgroup_generated, table_group
from .hypergraph import CayleySystem, cayley_hypergraph


class UnsupportedFamily(ValueError):
    """Family outside the supported finite catalogue."""


@dataclass(frozen=True)
class CoxeterFamily:
    """Family tag plus parameter: A (rank 1..4), B (rank 2..3), I2 (m in 2..12)."""

    family: str
    param: int

    def __post_init__(self) -> None:
        fam, p = self.family, self.param
        if fam == "A":
            if not 1 <= p <= 4:
                raise UnsupportedFamily("A families are supported for rank 1..4")
        elif fam == "B":
            if p not in (2, 3):
                raise UnsupportedFamily("B families are supported for rank 2..3")
        elif fam == "I2":
            if not 2 <= p <= 12:
                raise UnsupportedFamily("I2 families are supported for m in 2..12")
        else:
            raise UnsupportedFamily(
                f"unknown family {fam!r}; only finite families are supported"
            )

    @property
    def rank(self) -> int:
        return 2 if self.family == "I2" else self.param

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Pairwise product orders m(s, t); 1 on the diagonal."""
        if self.family == "I2":
            m = self.param
            return ((1, m), (m, 1))
        r = self.rank
        mat = [[2] * r for _ in range(r)]
        for i in range(r):
            mat[i][i] = 1
        for i in range(r - 1):
            mat[i][i + 1] = mat[i + 1][i] = 3
        if self.family == "B":
            mat[r - 2][r - 1] = mat[r - 1][r - 2] = 4
        return tuple(tuple(row) for row in mat)

    def group_order(self) -> int:
        if self.family == "A":
            return factorial(self.param + 1)
        if self.family == "B":
            return 2 ** self.param * factorial(self.param)
        return 2 * self.param


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # Signed permutations in one-line form: entry at position i is the signed
    # 1-based image of i.  p * q applies q first, then p.
    out = []
    for x in q:
        y = p[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def _gen_names(rank: int) -> tuple[str, ...]:
    if rank == 1:
        return ("s",)
    if rank == 2:
        return ("s", "t")
    return tuple(f"s{i + 1}" for i in range(rank))


def _generators(fam: CoxeterFamily) -> list[tuple[int, ...]]:
    if fam.family == "A":
        k = fam.param + 1
        gens = []
        for i in range(fam.param):
            g = list(range(1, k + 1))
            g[i], g[i + 1] = g[i + 1], g[i]
            gens.append(tuple(g))
        return gens
    if fam.family == "B":
        k = fam.param
        gens = []
        for i in range(k - 1):
            g = list(range(1, k + 1))
            g[i], g[i + 1] = g[i + 1], g[i]
            gens.append(tuple(g))
        flip = list(range(1, k + 1))
        flip[-1] = -flip[-1]
        gens.append(tuple(flip))
        return gens
    # I2(m): two reflections of the 2m-cycle, s: x -> -x and t: x -> 2 - x.
    m = fam.param
    k = 2 * m
    s = tuple((-i) % k + 1 for i in range(k))
    t = tuple((2 - i) % k + 1 for i in range(k))
    return [s, t]


def _realize(fam: CoxeterFamily) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Close the generators; element ids follow shortlex discovery order."""
    gens = _generators(fam)
    gen_names = _gen_names(fam.rank)
    k = len(gens[0])
    ident = tuple(range(1, k + 1))
    states = [ident]
    names = ["1"]
    index = {ident: 0}
    i = 0
    while i < len(states):
        st = states[i]
        nm = names[i]
        for g_state, g_name in zip(gens, gen_names):
            new = _compose(st, g_state)
            if new not in index:
                index[new] = len(states)
                states.append(new)
                names.append(g_name if nm == "1" else nm + g_name)
        i += 1
    mul = tuple(
        tuple(index[_compose(a, b)] for b in states) for a in states
    )
    group = table_group(mul, names)
    gen_ids = tuple(index[g] for g in gens)
    return group, gen_ids


def coxeter_system(fam: CoxeterFamily) -> CayleySystem:
    """Cayley system of the family with one order-2 subgroup per generator.

    The realized product orders are checked against the family matrix, so a
    successful build certifies order(s_i s_j) = m(i, j) for every pair.
    """
    group, gen_ids = _realize(fam)
    if group.order != fam.group_order():
        raise AssertionError(
            f"realization of {fam.family}{fam.param} has order {group.order}, "
            f"expected {fam.group_order()}"
        )
    matrix = fam.matrix()
    for i, gi in enumerate(gen_ids):
        for j, gj in enumerate(gen_ids):
            got = group.order_of(group.mul(gi, gj))
            if got != matrix[i][j]:
                raise AssertionError(
                    f"product order {got} at generators ({i}, {j}), expected {matrix[i][j]}"
                )
    sigma = [subgroup_generated(group, [g]) for g in gen_ids]
    return cayley_hypergraph(group, sigma)

"""Shared fixtures and brute-force oracles."""

from __future__ import annotations

from itertools import product

import pytest

from hrg import (
    CayleySystem,
    CoxeterFamily,
    FiniteGroup,
    Word,
    cayley_hypergraph,
    coxeter_system,
    cyclic_group,
    direct_product,
    subgroup,
    table_group,
)


@pytest.fixture(scope="session")
def s3() -> CayleySystem:
    """The order-6 running example with generators named s and t."""
    return coxeter_system(CoxeterFamily("I2", 3))


@pytest.fixture(scope="session")
def a3() -> CayleySystem:
    return coxeter_system(CoxeterFamily("A", 3))


@pytest.fixture(scope="session")
def z2z2() -> CayleySystem:
    """Klein four-group with elements 1, a, b, ab and sigma = (<a>, <b>)."""
    mul = [[i ^ j for j in range(4)] for i in range(4)]
    grp = table_group(mul, ["1", "a", "b", "ab"])
    return cayley_hypergraph(grp, [subgroup(grp, [1]), subgroup(grp, [2])])


@pytest.fixture(scope="session")
def z3z3() -> CayleySystem:
    """Z3 x Z3 with sigma the two factors; exercises order-3 fundamentals."""
    grp = direct_product(cyclic_group(3), cyclic_group(3))
    x = 3  # (x, 1)
    y = 1  # (1, x)
    return cayley_hypergraph(
        grp, [subgroup(grp, [x, grp.mul(x, x)]), subgroup(grp, [y, grp.mul(y, y)])]
    )


def ids(system: CayleySystem, *names: str) -> tuple[int, ...]:
    return tuple(system.group.id_of(n) for n in names)


def word_of(system: CayleySystem, *names: str) -> Word:
    """Word from letter names, resolving each against the first containing subgroup."""
    letters = []
    for n in names:
        e = system.group.id_of(n)
        j = next(k for k, sub in enumerate(system.sigma) if e in sub)
        letters.append((e, j))
    return Word(tuple(letters))


def naive_closure(group: FiniteGroup, gens) -> frozenset[int]:
    """Fixpoint of pairwise products; independent of the BFS closure engine."""
    cur = frozenset({0}) | frozenset(gens) | frozenset(group.inv(g) for g in gens)
    while True:
        nxt = cur | frozenset(group.mul(a, b) for a in cur for b in cur)
        if nxt == cur:
            return cur
        cur = nxt


def all_words(system: CayleySystem, max_len: int):
    """Every word of length <= max_len, as letter tuples."""
    pool = [
        (s, j) for j, sub in enumerate(system.sigma) for s in sub.elements[1:]
    ]
    for n in range(max_len + 1):
        for combo in product(pool, repeat=n):
            yield combo


def brute_length(system: CayleySystem, g: int, max_len: int) -> int:
    """Least word length representing g, by exhaustive enumeration."""
    for n in range(max_len + 1):
        pool = [
            (s, j) for j, sub in enumerate(system.sigma) for s in sub.elements[1:]
        ]
        for combo in product(pool, repeat=n):
            if system.group.product(s for s, _ in combo) == g:
                return n
    raise AssertionError(f"no word of length <= {max_len} represents {g}")

"""Finite groups as dense multiplication tables, plus subgroup machinery."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import ClassVar, Iterable, Mapping, Sequence

DEFAULT_MAX_ORDER = 20_000
MAX_ORDER_ENV = "HRG_MAX_GROUP_ORDER"

# Associativity is checked on every triple up to this order, sampled above it.
_FULL_ASSOC_LIMIT = 256
_ASSOC_SAMPLES = 50_000


class TableInvalid(ValueError):
    """Multiplication table violates the group axioms."""


class SizeExceeded(ValueError):
    """Requested group exceeds the configured order cap."""


def max_group_order() -> int:
    """Group-order cap: HRG_MAX_GROUP_ORDER if set, else the built-in default."""
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise SizeExceeded(f"{MAX_ORDER_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SizeExceeded(f"{MAX_ORDER_ENV} must be positive, got {value}")
    return value


def _check_cap(order: int, max_order: int | None) -> None:
    cap = max_group_order() if max_order is None else max_order
    if order > cap:
        raise SizeExceeded(f"group order {order} exceeds cap {cap}")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on element ids 0..n-1; id 0 is the identity.

    Immutable; instances compare by object identity, so subgroups of the same
    group share one parent object.
    """

    mul_table: tuple[tuple[int, ...], ...]
    inv_table: tuple[int, ...]
    names: tuple[str, ...]

    identity: ClassVar[int] = 0

    @property
    def order(self) -> int:
        return len(self.mul_table)

    def elements(self) -> range:
        return range(len(self.mul_table))

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.mul_table[self.mul_table[g][a]][self.inv_table[g]]

    def product(self, ids: Iterable[int]) -> int:
        out = 0
        for x in ids:
            out = self.mul_table[out][x]
        return out

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul_table[x][a]
            k += 1
        return k

    def name_of(self, a: int) -> str:
        return self.names[a]

    @cached_property
    def _ids_by_name(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def id_of(self, name: str) -> int:
        try:
            return self._ids_by_name[name]
        except KeyError:
            raise ValueError(f"unknown element name {name!r}") from None


@dataclass(frozen=True)
class Subgroup:
    """Subgroup given by its sorted element ids; equality is element-set equality."""

    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = self.elements
        if not elems or elems[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if any(elems[i] >= elems[i + 1] for i in range(len(elems) - 1)):
            raise ValueError("subgroup elements must be sorted and distinct")
        if elems[-1] >= self.group.order:
            raise ValueError("subgroup element out of range")
        members = frozenset(elems)
        mul = self.group.mul_table
        inv = self.group.inv_table
        for a in elems:
            if inv[a] not in members:
                raise ValueError(f"subgroup not closed under inverse at {a}")
            row = mul[a]
            for b in elems:
                if row[b] not in members:
                    raise ValueError(f"subgroup not closed under product at ({a}, {b})")

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, e: int) -> bool:
        return e in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def nontrivial(self) -> bool:
        return len(self.elements) >= 2


def subgroup(group: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Subgroup from an element collection (identity added, order normalized)."""
    return Subgroup(group, tuple(sorted(set(elements) | {0})))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing gens; the empty set generates the identity."""
    seed = set()
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"generator {g} out of range")
        seed.add(g)
        seed.add(group.inv_table[g])
    seed.discard(0)
    found = {0} | seed
    frontier = list(found)
    mul = group.mul_table
    while frontier:
        a = frontier.pop()
        row = mul[a]
        for g in seed:
            b = row[g]
            if b not in found:
                found.add(b)
                frontier.append(b)
    return Subgroup(group, tuple(sorted(found)))


def conjugate_subgroup(s: Subgroup, g: int) -> Subgroup:
    """The subgroup g S g^-1; same order as S."""
    grp = s.group
    mul = grp.mul_table
    gi = grp.inv_table[g]
    row = mul[g]
    return Subgroup(grp, tuple(sorted(mul[row[a]][gi] for a in s.elements)))


def _check_associative(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    if n <= _FULL_ASSOC_LIMIT:
        for a in range(n):
            ta = table[a]
            for b in range(n):
                tab = table[ta[b]]
                tb = table[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise TableInvalid(f"not associative at ({a}, {b}, {c})")
    else:
        rng = random.Random(0xA55)
        for _ in range(_ASSOC_SAMPLES):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise TableInvalid(f"not associative at ({a}, {b}, {c})")


def table_group(
    mul: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    *,
    max_order: int | None = None,
) -> FiniteGroup:
    """Build a group from an explicit table, validating all the axioms.

    Element 0 must be the identity; inverses are derived from the table.
    """
    n = len(mul)
    if n == 0:
        raise TableInvalid("empty multiplication table")
    _check_cap(n, max_order)
    rows = []
    for i, row in enumerate(mul):
        normalized = tuple(int(x) for x in row)
        if len(normalized) != n:
            raise TableInvalid(f"row {i} has length {len(normalized)}, expected {n}")
        if any(not 0 <= x < n for x in normalized):
            raise TableInvalid(f"row {i} has entries outside 0..{n - 1}")
        rows.append(normalized)
    table = tuple(rows)
    for g in range(n):
        if table[0][g] != g or table[g][0] != g:
            raise TableInvalid("element 0 is not a two-sided identity")
    inv = []
    for g in range(n):
        hits = [h for h in range(n) if table[g][h] == 0]
        if len(hits) != 1 or table[hits[0]][g] != 0:
            raise TableInvalid(f"element {g} has no two-sided inverse")
        inv.append(hits[0])
    _check_associative(table)
    if names is None:
        named = ("1",) + tuple(f"g{i}" for i in range(1, n))
    else:
        named = tuple(str(x) for x in names)
        if len(named) != n:
            raise TableInvalid("names length does not match the group order")
        if len(set(named)) != n:
            raise TableInvalid("element names must be distinct")
    return FiniteGroup(table, tuple(inv), named)


def _power_name(base: str, k: int) -> str:
    if k == 0:
        return "1"
    return base if k == 1 else f"{base}{k}"


def cyclic_group(n: int, *, max_order: int | None = None) -> FiniteGroup:
    """Z_n with elements 1, x, x2, ..."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    _check_cap(n, max_order)
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    names = tuple(_power_name("x", k) for k in range(n))
    return FiniteGroup(table, inv, names)


def dihedral_group(m: int, *, max_order: int | None = None) -> FiniteGroup:
    """Symmetries of the regular m-gon, order 2m.

    Ids 0..m-1 are the rotations r^k, ids m..2m-1 the reflections s r^k,
    with r s = s r^-1.
    """
    if m < 1:
        raise ValueError("dihedral parameter must be positive")
    _check_cap(2 * m, max_order)
    n = 2 * m

    def mid(flip: int, k: int) -> int:
        return flip * m + k

    table = []
    for a in range(n):
        f1, k1 = divmod(a, m)
        row = []
        for b in range(n):
            f2, k2 = divmod(b, m)
            if f2:
                row.append(mid(1 - f1, (k2 - k1) % m))
            else:
                row.append(mid(f1, (k1 + k2) % m))
        table.append(tuple(row))
    inv = tuple(mid(0, (-k) % m) for k in range(m)) + tuple(mid(1, k) for k in range(m))
    names = tuple(_power_name("r", k) for k in range(m)) + tuple(
        "s" if k == 0 else f"s{_power_name('r', k)}" for k in range(m)
    )
    return FiniteGroup(tuple(table), inv, names)


def symmetric_group(k: int, *, max_order: int | None = None) -> FiniteGroup:
    """S_k with one-line-notation names; supported for k <= 5."""
    if not 1 <= k <= 5:
        raise ValueError("symmetric groups are supported for 1 <= k <= 5")
    perms = list(permutations(range(k)))
    _check_cap(len(perms), max_order)
    index = {p: i for i, p in enumerate(perms)}
    # p * q applies q first, then p.
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(k))] for q in perms) for p in perms
    )
    inv = []
    for p in perms:
        ip = [0] * k
        for i, v in enumerate(p):
            ip[v] = i
        inv.append(index[tuple(ip)])
    names = ("1",) + tuple("".join(str(v + 1) for v in p) for p in perms[1:])
    return FiniteGroup(table, tuple(inv), names)


def direct_product(g: FiniteGroup, h: FiniteGroup, *, max_order: int | None = None) -> FiniteGroup:
    """Direct product with ids packed as a * |h| + b."""
    n = g.order * h.order
    _check_cap(n, max_order)
    hn = h.order
    table = []
    for x in range(n):
        a1, b1 = divmod(x, hn)
        grow = g.mul_table[a1]
        hrow = h.mul_table[b1]
        row = []
        for y in range(n):
            a2, b2 = divmod(y, hn)
            row.append(grow[a2] * hn + hrow[b2])
        table.append(tuple(row))
    inv = tuple(g.inv_table[x // hn] * hn + h.inv_table[x % hn] for x in range(n))
    names = tuple(
        "1" if x == 0 else f"({g.names[x // hn]}.{h.names[x % hn]})" for x in range(n)
    )
    return FiniteGroup(tuple(table), inv, names)


def _int_field(spec: Mapping, key: str, where: str) -> int:
    if key not in spec:
        raise ValueError(f"{where}.{key} is missing")
    value = spec[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{where}.{key} must be an integer")
    return value


def build_group(spec: Mapping, *, max_order: int | None = None, where: str = "group") -> FiniteGroup:
    """Build a group from a JSON-style spec dict.

    Forms: {"type": "cyclic", "n": 3} | {"type": "dihedral", "m": 4} |
    {"type": "symmetric", "k": 3} | {"type": "product", "factors": [...]} |
    {"type": "table", "mul": [[...]], "names": [...]}.
    """
    if not isinstance(spec, Mapping):
        raise ValueError(f"{where} must be an object")
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic_group(_int_field(spec, "n", where), max_order=max_order)
    if kind == "dihedral":
        return dihedral_group(_int_field(spec, "m", where), max_order=max_order)
    if kind == "symmetric":
        return symmetric_group(_int_field(spec, "k", where), max_order=max_order)
    if kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, Sequence) or len(factors) < 1:
            raise ValueError(f"{where}.factors must be a nonempty list of group specs")
        groups = [
            build_group(f, max_order=max_order, where=f"{where}.factors[{i}]")
            for i, f in enumerate(factors)
        ]
        out = groups[0]
        for nxt in groups[1:]:
            out = direct_product(out, nxt, max_order=max_order)
        return out
    if kind == "table":
        if "mul" not in spec:
            raise ValueError(f"{where}.mul is missing")
        return table_group(spec["mul"], spec.get("names"), max_order=max_order)
    raise ValueError(f"{where}.type must be one of cyclic, dihedral, symmetric, product, table")

"""Finite groups as multiplication tables: normal subgroups, composition
series, and exhaustive isomorphism testing at desk scale."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence


class GroupBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table of a finite group on indices 0..n-1.

    ``labels`` optionally records what each index stands for in an ambient
    structure (e.g. semigroup element indices).
    """

    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple] = None
    _identity: int = field(default=-1, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.table)
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no identity")
        object.__setattr__(self, "_identity", ident)
        for a in range(n):
            if set(self.table[a]) != set(range(n)):
                raise ValueError("table rows must be permutations")
            if ident not in [self.table[a][b] for b in range(n)]:
                raise ValueError("element has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity:
                return b
        raise AssertionError("unreachable")

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n)
        )

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))

    def subgroup_closure(self, seed: Sequence[int]) -> frozenset[int]:
        members = {self.identity}
        members.update(seed)
        frontier = list(members)
        while frontier:
            x = frontier.pop()
            for y in list(members):
                for z in (self.mul(x, y), self.mul(y, x)):
                    if z not in members:
                        members.add(z)
                        frontier.append(z)
        return frozenset(members)

    def conjugacy_classes(self) -> list[frozenset[int]]:
        n = self.order
        seen: set[int] = set()
        classes = []
        for a in range(n):
            if a in seen:
                continue
            cls = {self.mul(self.mul(self.inv(g), a), g) for g in range(n)}
            seen.update(cls)
            classes.append(frozenset(cls))
        return classes

    def normal_closure(self, seed: Sequence[int]) -> frozenset[int]:
        conj = set()
        for a in seed:
            for g in range(self.order):
                conj.add(self.mul(self.mul(self.inv(g), a), g))
        return self.subgroup_closure(sorted(conj))

    def normal_subgroups(self) -> list[frozenset[int]]:
        """All normal subgroups, by joining normal closures of single elements."""
        found: set[frozenset[int]] = {frozenset({self.identity})}
        frontier = [frozenset({self.identity})]
        while frontier:
            base = frontier.pop()
            for a in range(self.order):
                if a in base:
                    continue
                joined = self.normal_closure(sorted(base | {a}))
                if joined not in found:
                    found.add(joined)
                    frontier.append(joined)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def quotient(self, normal: frozenset[int]) -> "GroupTable":
        cosets: list[frozenset[int]] = []
        coset_of: dict[int, int] = {}
        for a in range(self.order):
            if a in coset_of:
                continue
            cs = frozenset(self.mul(a, h) for h in normal)
            idx = len(cosets)
            cosets.append(cs)
            for x in cs:
                coset_of[x] = idx
        reps = [min(cs) for cs in cosets]
        table = tuple(
            tuple(coset_of[self.mul(ra, rb)] for rb in reps) for ra in reps
        )
        return GroupTable(table)

    def subgroup(self, members: frozenset[int]) -> "GroupTable":
        ordered = sorted(members)
        pos = {m: i for i, m in enumerate(ordered)}
        table = tuple(tuple(pos[self.mul(a, b)] for b in ordered) for a in ordered)
        return GroupTable(table, labels=tuple(ordered))

    def generating_set(self) -> list[int]:
        """A small generating set found greedily."""
        gens: list[int] = []
        span = frozenset({self.identity})
        for a in sorted(range(self.order), key=lambda x: -self.element_order(x)):
            if a not in span:
                gens.append(a)
                span = self.subgroup_closure(gens)
                if len(span) == self.order:
                    break
        return gens

    def isomorphic_to(self, other: "GroupTable") -> bool:
        return find_isomorphism(self, other) is not None


def find_isomorphism(g: GroupTable, h: GroupTable) -> Optional[dict[int, int]]:
    """Exhaustive generator-image search with order-profile pruning."""
    if g.order != h.order:
        return None
    g_orders = sorted(g.element_order(a) for a in range(g.order))
    h_orders = sorted(h.element_order(a) for a in range(h.order))
    if g_orders != h_orders:
        return None
    gens = g.generating_set()
    if not gens:
        return {g.identity: h.identity}
    by_order: dict[int, list[int]] = {}
    for b in range(h.order):
        by_order.setdefault(h.element_order(b), []).append(b)

    def words_closure(images: list[int]) -> Optional[dict[int, int]]:
        # Map each g-element (reached as a word in gens) to its h-image;
        # fails if the map is not a well-defined bijective homomorphism.
        phi = {g.identity: h.identity}
        frontier = [g.identity]
        while frontier:
            x = frontier.pop()
            for k, gen in enumerate(gens):
                y = g.mul(x, gen)
                img = h.mul(phi[x], images[k])
                if y in phi:
                    if phi[y] != img:
                        return None
                else:
                    phi[y] = img
                    frontier.append(y)
        if len(phi) != g.order or len(set(phi.values())) != g.order:
            return None
        for a in phi:
            for k, gen in enumerate(gens):
                if phi[g.mul(a, gen)] != h.mul(phi[a], images[k]):
                    return None
        return phi

    candidates = [by_order[g.element_order(gen)] for gen in gens]
    for images in itertools.product(*candidates):
        phi = words_closure(list(images))
        if phi is not None:
            return phi
    return None


def cyclic_group(n: int) -> GroupTable:
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def symmetric_group(n: int) -> GroupTable:
    perms = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(pos[tuple(q[p[x]] for x in range(n))] for q in perms) for p in perms
    )
    return GroupTable(table, labels=tuple(perms))


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
    pos = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(pos[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs) for (a, b) in pairs
    )
    return GroupTable(table, labels=tuple(pairs))


@dataclass(frozen=True)
class SimpleFactor:
    order: int
    abelian: bool
    cyclic: bool

    def describe(self) -> str:
        return f"C{self.order}" if self.cyclic else f"simple({self.order})"


def composition_series(
    group: GroupTable, bound: int = 2000, prefer_small: bool = False
) -> list[SimpleFactor]:
    """Simple factors of a maximal normal chain, found by exhaustive search.

    ``prefer_small`` switches the tie-breaking used to pick each maximal
    normal subgroup; the factor multiset is independent of the choice.
    """
    if group.order > bound:
        raise GroupBoundExceeded(f"group order {group.order} exceeds bound {bound}")
    factors: list[SimpleFactor] = []
    current = group
    while current.order > 1:
        proper = [
            n for n in current.normal_subgroups() if len(n) < current.order
        ]
        maximal = [
            n for n in proper if not any(n < m for m in proper if m != n)
        ]
        key = min if prefer_small else max
        best_size = key(len(n) for n in maximal)
        chosen = sorted(sorted(n) for n in maximal if len(n) == best_size)[0]
        chosen = frozenset(chosen)
        quot = current.quotient(chosen)
        factors.append(
            SimpleFactor(
                order=quot.order, abelian=quot.is_abelian(), cyclic=quot.is_cyclic()
            )
        )
        current = current.subgroup(chosen)
    return factors

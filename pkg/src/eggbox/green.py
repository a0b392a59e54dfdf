"""Green's relations on finite transformation semigroups.

The L/R/J preorders are decided by reachability in the left/right Cayley
graphs over the generators (principal-ideal containment), H is the common
refinement of L and R, and D is the join of L and R.  Finite semigroups are
stable, so D = J is asserted on every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .semigroup import FiniteSemigroup


def _sccs(n: int, out_edges: list[list[int]]) -> list[int]:
    """Tarjan strongly connected components, iterative.  Returns comp id per node."""
    comp = [-1] * n
    low = [0] * n
    num = [-1] * n
    stack: list[int] = []
    on_stack = [False] * n
    counter = 0
    ncomp = 0
    for root in range(n):
        if num[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                num[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            edges = out_edges[v]
            while pi < len(edges):
                w = edges[pi]
                pi += 1
                if num[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], num[w])
            if recurse:
                continue
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            work.pop()
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comp


def _renumber_by_least(comp: list[int]) -> tuple[list[int], list[list[int]]]:
    """Renumber component ids so classes are ordered by least member index."""
    first: dict[int, int] = {}
    for i, c in enumerate(comp):
        first.setdefault(c, i)
    order = sorted(first, key=lambda c: first[c])
    remap = {c: k for k, c in enumerate(order)}
    new = [remap[c] for c in comp]
    classes: list[list[int]] = [[] for _ in order]
    for i, c in enumerate(new):
        classes[c].append(i)
    return new, classes


def _reachable_pairs(n: int, out_edges: list[list[int]]) -> list[set[int]]:
    """reach[i] = set of nodes reachable from i (including i)."""
    reach: list[set[int]] = []
    for src in range(n):
        seen = {src}
        todo = [src]
        while todo:
            v = todo.pop()
            for w in out_edges[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        reach.append(seen)
    return reach


@dataclass(frozen=True)
class GreenStructure:
    """Partitions of element indices into the five Green's classes.

    ``*_class[i]`` is the class id of element ``i``; ``*_classes[c]`` lists the
    members of class ``c`` in element order.  ``j_order`` holds the pairs
    ``(a, b)`` with ``J_a <= J_b`` (principal-ideal containment).
    """

    l_class: tuple[int, ...]
    r_class: tuple[int, ...]
    j_class: tuple[int, ...]
    h_class: tuple[int, ...]
    d_class: tuple[int, ...]
    l_classes: tuple[tuple[int, ...], ...]
    r_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    d_classes: tuple[tuple[int, ...], ...]
    j_order: frozenset[tuple[int, int]]
    regular_flags: tuple[bool, ...]
    idempotents: tuple[int, ...]

    def j_below(self, a: int, b: int) -> bool:
        """Whether J-class ``a`` lies below ``b`` in the J-order."""
        return (a, b) in self.j_order


def green_structure(sgp: FiniteSemigroup) -> GreenStructure:
    n = len(sgp)
    gens = sgp.generators
    # Right Cayley graph: edges s -> s*g give reachability sS^1.
    right_edges = [[sgp.mul(i, g) for g in gens] for i in range(n)]
    left_edges = [[sgp.mul(g, i) for g in gens] for i in range(n)]
    both_edges = [right_edges[i] + left_edges[i] for i in range(n)]

    r_comp, r_classes = _renumber_by_least(_sccs(n, right_edges))
    l_comp, l_classes = _renumber_by_least(_sccs(n, left_edges))
    j_comp, j_classes = _renumber_by_least(_sccs(n, both_edges))

    # H = L meet R.
    h_key: dict[tuple[int, int], int] = {}
    h_raw = []
    for i in range(n):
        key = (l_comp[i], r_comp[i])
        if key not in h_key:
            h_key[key] = len(h_key)
        h_raw.append(h_key[key])
    h_comp, h_classes = _renumber_by_least(h_raw)

    # D = join of L and R: connected components of the union of the two
    # equivalence relations, via union-find over elements.
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for cls in list(l_classes) + list(r_classes):
        for other in cls[1:]:
            union(cls[0], other)
    d_raw = [find(i) for i in range(n)]
    d_comp, d_classes = _renumber_by_least(d_raw)

    if d_comp != j_comp:
        raise AssertionError("stability violated: D != J on a finite semigroup")

    # J-order between classes from reachability in the two-sided graph.
    reach = _reachable_pairs(n, both_edges)
    j_order = set()
    reps = [cls[0] for cls in j_classes]
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            if ra in reach[rb]:
                j_order.add((a, b))
    for a in range(len(reps)):
        for b in range(len(reps)):
            if a != b and (a, b) in j_order and (b, a) in j_order:
                raise AssertionError("J-order is not antisymmetric")

    idempotents = tuple(sgp.idempotents())
    regular = [False] * len(j_classes)
    for e in idempotents:
        regular[j_comp[e]] = True

    gs = GreenStructure(
        l_class=tuple(l_comp),
        r_class=tuple(r_comp),
        j_class=tuple(j_comp),
        h_class=tuple(h_comp),
        d_class=tuple(d_comp),
        l_classes=tuple(tuple(c) for c in l_classes),
        r_classes=tuple(tuple(c) for c in r_classes),
        j_classes=tuple(tuple(c) for c in j_classes),
        h_classes=tuple(tuple(c) for c in h_classes),
        d_classes=tuple(tuple(c) for c in d_classes),
        j_order=frozenset(j_order),
        regular_flags=tuple(regular),
        idempotents=idempotents,
    )
    _check_green_lemma_cardinalities(gs)
    return gs


def _check_green_lemma_cardinalities(gs: GreenStructure) -> None:
    """Within one J-class all L-classes are equinumerous; same for R and H."""
    for jc in gs.j_classes:
        l_sizes = {}
        r_sizes = {}
        h_sizes = set()
        for i in jc:
            l_sizes.setdefault(gs.l_class[i], 0)
            l_sizes[gs.l_class[i]] += 1
            r_sizes.setdefault(gs.r_class[i], 0)
            r_sizes[gs.r_class[i]] += 1
        for i in jc:
            h_sizes.add(len([x for x in jc if gs.h_class[x] == gs.h_class[i]]))
        if len(set(l_sizes.values())) > 1 or len(set(r_sizes.values())) > 1:
            raise AssertionError("Green lemma: unequal class sizes inside a J-class")
        if len(h_sizes) > 1:
            raise AssertionError("Green lemma: unequal H-class sizes inside a J-class")


def is_regular(sgp: FiniteSemigroup, s: int) -> tuple[bool, Optional[int]]:
    """Whether ``sts = s`` for some t; returns the inverse witness ``tst``.

    The witness is built from the first t in element order, so the output is
    deterministic.  It satisfies both ``s w s = s`` and ``w s w = w``.
    """
    n = len(sgp)
    for t in range(n):
        if sgp.mul(sgp.mul(s, t), s) == s:
            w = sgp.mul(sgp.mul(t, s), t)
            return True, w
    return False, None


def maximal_subgroup(sgp: FiniteSemigroup, e: int, gs: Optional[GreenStructure] = None):
    """The group H_e at an idempotent e, as a GroupTable on the H-class members.

    Asserts the identity ``H_e = eSe intersect J_e`` and verifies closure and
    inverses.
    """
    from .groups import GroupTable

    if sgp.mul(e, e) != e:
        raise ValueError("element is not idempotent")
    if gs is None:
        gs = green_structure(sgp)
    members = [i for i in range(len(sgp)) if gs.h_class[i] == gs.h_class[e]]
    ese = {
        sgp.mul(sgp.mul(e, s), e)
        for s in range(len(sgp))
        if gs.j_class[sgp.mul(sgp.mul(e, s), e)] == gs.j_class[e]
    }
    if ese != set(members):
        raise AssertionError("eSe intersect J_e differs from H_e")
    pos = {m: i for i, m in enumerate(members)}
    table = []
    for a in members:
        row = []
        for b in members:
            p = sgp.mul(a, b)
            if p not in pos:
                raise AssertionError("H_e not closed under multiplication")
            row.append(pos[p])
        table.append(row)
    g = GroupTable(tuple(tuple(r) for r in table), labels=tuple(members))
    return g

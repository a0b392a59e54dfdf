"""Schutzenberger groups and the right monomial representation on an R-class.

The left Schutzenberger group of H_s is the set of maps ``h -> u*h`` for u
ranging over the stabilizer ``{u in S^1 : u H_s <= H_s}``; it acts freely on
R_s with the H-classes of R_s as orbits.  The right representation sends each
semigroup element to a row-monomial matrix over the group with zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .green import GreenStructure, green_structure
from .groups import GroupTable, find_isomorphism
from .semigroup import FiniteSemigroup

ZERO = "0"


@dataclass(frozen=True)
class SchutzGroup:
    """Translation maps on a fixed H-class, tabulated as a group."""

    table: GroupTable
    maps: tuple[dict[int, int], ...]  # action of each group element on H_s
    h_class: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.table.order


def _left_schutz_group(
    sgp: FiniteSemigroup, h_members: list[int]
) -> tuple[SchutzGroup, dict[tuple[int, ...], int]]:
    hset = set(h_members)
    n = len(sgp)
    maps: list[dict[int, int]] = []
    keys: dict[tuple[int, ...], int] = {}
    # u ranges over S^1; the identity contributes the identity translation.
    ident = {h: h for h in h_members}
    keys[tuple(ident[h] for h in h_members)] = 0
    maps.append(ident)
    for u in range(n):
        if all(sgp.mul(u, h) in hset for h in h_members):
            m = {h: sgp.mul(u, h) for h in h_members}
            key = tuple(m[h] for h in h_members)
            if key not in keys:
                keys[key] = len(maps)
                maps.append(m)
    size = len(maps)
    pos = {tuple(m[h] for h in h_members): i for i, m in enumerate(maps)}
    table = []
    for a in maps:
        row = []
        for b in maps:
            comp = {h: a[b[h]] for h in h_members}
            row.append(pos[tuple(comp[h] for h in h_members)])
        table.append(tuple(row))
    group = GroupTable(tuple(table))
    if size != len(h_members):
        raise AssertionError("left Schutzenberger group is not simply transitive on H_s")
    return SchutzGroup(table=group, maps=tuple(maps), h_class=tuple(h_members)), pos


def _right_schutz_group(sgp: FiniteSemigroup, h_members: list[int]) -> SchutzGroup:
    hset = set(h_members)
    maps: list[dict[int, int]] = [{h: h for h in h_members}]
    keys = {tuple(h_members): 0}
    for u in range(len(sgp)):
        if all(sgp.mul(h, u) in hset for h in h_members):
            m = {h: sgp.mul(h, u) for h in h_members}
            key = tuple(m[h] for h in h_members)
            if key not in keys:
                keys[key] = len(maps)
                maps.append(m)
    pos = {tuple(m[h] for h in h_members): i for i, m in enumerate(maps)}
    table = []
    for a in maps:
        row = []
        for b in maps:
            comp = {h: b[a[h]] for h in h_members}
            row.append(pos[tuple(comp[h] for h in h_members)])
        table.append(tuple(row))
    return SchutzGroup(table=GroupTable(tuple(table)), maps=tuple(maps), h_class=tuple(h_members))


@dataclass(frozen=True)
class SchutzRepresentation:
    base_r_class: tuple[int, ...]
    h_class_reps: tuple[int, ...]
    schutz_group: SchutzGroup
    matrices: tuple[tuple[tuple[Union[int, str], ...], ...], ...]

    def matrix(self, t: int) -> tuple[tuple[Union[int, str], ...], ...]:
        return self.matrices[t]

    def compose(self, m1, m2):
        """Product of two row-monomial matrices over the group with zero."""
        n = len(m1)
        group = self.schutz_group.table
        out = []
        for i in range(n):
            row: list[Union[int, str]] = [ZERO] * n
            for j in range(n):
                if m1[i][j] == ZERO:
                    continue
                for k in range(n):
                    if m2[j][k] == ZERO:
                        continue
                    if row[k] != ZERO:
                        raise AssertionError("monomial product gained two entries in a row")
                    row[k] = group.mul(m1[i][j], m2[j][k])
            out.append(tuple(row))
        return tuple(out)


def schutz_representation(
    sgp: FiniteSemigroup, s: int, gs: Optional[GreenStructure] = None
) -> SchutzRepresentation:
    if gs is None:
        gs = green_structure(sgp)
    r_members = list(gs.r_classes[gs.r_class[s]])
    h_of = gs.h_class
    h_ids = sorted({h_of[i] for i in r_members}, key=lambda hid: min(
        i for i in r_members if h_of[i] == hid
    ))
    reps = tuple(min(i for i in r_members if h_of[i] == hid) for hid in h_ids)
    h_members = [i for i in r_members if h_of[i] == h_of[s]]
    schutz, pos = _left_schutz_group(sgp, h_members)

    # Free action of the group on the whole R-class: each translation map is
    # realized by some u in S^1; its action on R_s must be u-independent.
    action: list[dict[int, int]] = []
    rset = set(r_members)
    for g_idx, m in enumerate(schutz.maps):
        realized: Optional[dict[int, int]] = None
        if all(m[h] == h for h in h_members):
            realized = {r: r for r in r_members}
        else:
            for u in range(len(sgp)):
                if {h: sgp.mul(u, h) for h in h_members} == m:
                    cand = {r: sgp.mul(u, r) for r in r_members}
                    if any(v not in rset for v in cand.values()):
                        raise AssertionError("translation left the R-class")
                    if realized is None:
                        realized = cand
                    elif realized != cand:
                        raise AssertionError("action on R_s depends on the choice of u")
        action.append(realized)
    orbit_sizes = set()
    for r in r_members:
        orbit_sizes.add(len({a[r] for a in action}))
    if orbit_sizes != {schutz.order}:
        raise AssertionError("Schutzenberger group does not act freely on R_s")

    # rho(t)[i][j] = the unique group element with h(reps[j]) = reps[i] * t.
    nreps = len(reps)
    matrices = []
    for t in range(len(sgp)):
        mat: list[tuple[Union[int, str], ...]] = []
        for i in range(nreps):
            row: list[Union[int, str]] = [ZERO] * nreps
            target = sgp.mul(reps[i], t)
            if target in rset:
                j = h_ids.index(h_of[target])
                hits = [g for g, a in enumerate(action) if a[reps[j]] == target]
                if len(hits) != 1:
                    raise AssertionError("free action: expected a unique translator")
                row[j] = hits[0]
            mat.append(tuple(row))
        matrices.append(tuple(mat))

    rep = SchutzRepresentation(
        base_r_class=tuple(r_members),
        h_class_reps=reps,
        schutz_group=schutz,
        matrices=tuple(matrices),
    )
    # Multiplicativity on generator pairs, and the left/right group duality.
    for a in sgp.generators:
        for b in sgp.generators:
            if rep.compose(rep.matrix(a), rep.matrix(b)) != rep.matrix(sgp.mul(a, b)):
                raise AssertionError("Schutzenberger representation is not multiplicative")
    gamma = _right_schutz_group(sgp, h_members)
    op_table = GroupTable(
        tuple(
            tuple(gamma.table.mul(b, a) for b in range(gamma.order))
            for a in range(gamma.order)
        )
    )
    if find_isomorphism(schutz.table, op_table) is None:
        raise AssertionError("left group is not the opposite of the right group")
    return rep

"""Principal factors and Rees coordinatization of regular J-classes.

A triple (rho, g, lam) names the H-class in R-class row ``rho`` and L-class
column ``lam``; the group part g lives in H_e.  Row representatives are taken
in the L-class of e and column representatives in the R-class of e, each the
least element index in its H-class, and the sandwich entry between column
``lam`` and row ``rho`` is their product when it falls in H_e, else zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .green import GreenStructure, green_structure, maximal_subgroup
from .groups import GroupTable
from .semigroup import FiniteSemigroup

ZERO = "0"


class NonRegularClassError(ValueError):
    pass


@dataclass(frozen=True)
class PrincipalFactor:
    """A J-class with zero adjoined; products leaving the class are zero."""

    j_class: tuple[int, ...]
    kind: str  # "null" | "zero-simple" | "simple-minimal-ideal"
    has_zero: bool
    _sgp: FiniteSemigroup
    _members: frozenset[int]

    def product(self, a: Union[int, str], b: Union[int, str]) -> Union[int, str]:
        if a == ZERO or b == ZERO:
            return ZERO
        p = self._sgp.mul(a, b)
        return p if p in self._members else ZERO


def principal_factor(
    sgp: FiniteSemigroup, s: int, gs: Optional[GreenStructure] = None
) -> PrincipalFactor:
    if gs is None:
        gs = green_structure(sgp)
    jc = gs.j_classes[gs.j_class[s]]
    members = frozenset(jc)
    regular = gs.regular_flags[gs.j_class[s]]
    minimal = all(
        not (gs.j_below(other, gs.j_class[s]) and other != gs.j_class[s])
        for other in range(len(gs.j_classes))
    )
    if not regular:
        kind = "null"
    elif minimal:
        kind = "simple-minimal-ideal"
    else:
        kind = "zero-simple"
    pf = PrincipalFactor(
        j_class=jc, kind=kind, has_zero=True, _sgp=sgp, _members=members
    )
    if kind == "null":
        for a in jc:
            for b in jc:
                if pf.product(a, b) != ZERO:
                    raise AssertionError("nonregular principal factor is not null")
    return pf


@dataclass(frozen=True)
class ReesCoordinatization:
    """Rees matrix coordinates for a regular principal factor.

    ``gamma_reps[rho]`` is the representative (in L_e) of R-class row ``rho``;
    ``lambda_reps[lam]`` is the representative (in R_e) of L-class column
    ``lam``.  ``sandwich[lam][rho]`` is an H_e index or the zero marker.
    """

    group: GroupTable
    gamma_reps: tuple[int, ...]
    lambda_reps: tuple[int, ...]
    sandwich: tuple[tuple[Union[int, str], ...], ...]
    e: int
    _sgp: FiniteSemigroup
    _row_of: dict[int, int]
    _col_of: dict[int, int]
    _group_pos: dict[int, int]

    def encode(self, x: Union[int, str]) -> Union[tuple[int, int, int], str]:
        """Element index -> (rho, g, lam) coordinates, zero staying zero."""
        if x == ZERO:
            return ZERO
        rho = self._row_of[x]
        lam = self._col_of[x]
        # x = q_rho * g * r_lam with g in H_e; solve by inverting the known
        # bijection H_e -> H-cell, built once in decode order.
        for g in range(self.group.order):
            if self.decode((rho, g, lam)) == x:
                return (rho, g, lam)
        raise AssertionError("no group coordinate reproduces the element")

    def decode(self, coords: Union[tuple[int, int, int], str]) -> Union[int, str]:
        if coords == ZERO:
            return ZERO
        rho, g, lam = coords
        q = self.gamma_reps[rho]
        r = self.lambda_reps[lam]
        ge = self.group.labels[g]
        return self._sgp.mul(self._sgp.mul(q, ge), r)

    def rees_product(
        self,
        a: Union[tuple[int, int, int], str],
        b: Union[tuple[int, int, int], str],
    ) -> Union[tuple[int, int, int], str]:
        if a == ZERO or b == ZERO:
            return ZERO
        rho, g, lam = a
        gamma, h, alpha = b
        u = self.sandwich[lam][gamma]
        if u == ZERO:
            return ZERO
        return (rho, self.group.mul(self.group.mul(g, u), h), alpha)


def rees_coordinatize(
    sgp: FiniteSemigroup, e: int, gs: Optional[GreenStructure] = None
) -> ReesCoordinatization:
    if gs is None:
        gs = green_structure(sgp)
    if sgp.mul(e, e) != e:
        raise ValueError("element is not idempotent")
    if not gs.regular_flags[gs.j_class[e]]:
        raise NonRegularClassError("J-class is not regular")
    jc = gs.j_classes[gs.j_class[e]]
    r_ids = sorted({gs.r_class[i] for i in jc})
    l_ids = sorted({gs.l_class[i] for i in jc})
    row_of = {i: r_ids.index(gs.r_class[i]) for i in jc}
    col_of = {i: l_ids.index(gs.l_class[i]) for i in jc}
    # Row representative: least member of (L_e intersect that R-class);
    # column representative: least member of (R_e intersect that L-class).
    gamma_reps = []
    for rc in r_ids:
        cands = [i for i in jc if gs.r_class[i] == rc and gs.l_class[i] == gs.l_class[e]]
        if not cands:
            raise AssertionError("regular class: missing H-cell in the column of e")
        gamma_reps.append(min(cands))
    lambda_reps = []
    for lc in l_ids:
        cands = [i for i in jc if gs.l_class[i] == lc and gs.r_class[i] == gs.r_class[e]]
        if not cands:
            raise AssertionError("regular class: missing H-cell in the row of e")
        lambda_reps.append(min(cands))

    group = maximal_subgroup(sgp, e, gs)
    group_pos = {lab: i for i, lab in enumerate(group.labels)}
    members = set(jc)
    sandwich = []
    for r in lambda_reps:
        row: list[Union[int, str]] = []
        for q in gamma_reps:
            prod = sgp.mul(r, q)
            row.append(group_pos[prod] if prod in group_pos else ZERO)
        sandwich.append(tuple(row))
    sandwich_t = tuple(sandwich)
    for row in sandwich_t:
        if all(x == ZERO for x in row):
            raise AssertionError("sandwich matrix has a zero row")
    for c in range(len(gamma_reps)):
        if all(row[c] == ZERO for row in sandwich_t):
            raise AssertionError("sandwich matrix has a zero column")

    coord = ReesCoordinatization(
        group=group,
        gamma_reps=tuple(gamma_reps),
        lambda_reps=tuple(lambda_reps),
        sandwich=sandwich_t,
        e=e,
        _sgp=sgp,
        _row_of=row_of,
        _col_of=col_of,
        _group_pos=group_pos,
    )
    # The coordinate map must be a bijection onto the class.
    seen = set()
    for rho in range(len(gamma_reps)):
        for g in range(group.order):
            for lam in range(len(lambda_reps)):
                x = coord.decode((rho, g, lam))
                if x not in members:
                    raise AssertionError("decode left the J-class")
                seen.add(x)
    if seen != members or len(members) != len(gamma_reps) * group.order * len(lambda_reps):
        raise AssertionError("Rees coordinates do not biject with the class")
    return coord

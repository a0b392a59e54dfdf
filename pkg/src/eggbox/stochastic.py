"""Exact-rational stochastic matrices and distributions.

Everything here is over ``fractions.Fraction``; there is no floating point
anywhere in this module, which is what makes row/column/two-sided
equivalence decidable.  Canonical forms are plain sorted tuples, so equality
of forms is syntactic equality.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .lp import convex_combination, feasible_point
from .semigroup import FiniteSemigroup, Transformation

Row = tuple[Fraction, ...]


class NotStochasticError(ValueError):
    pass


class BaseMismatchError(ValueError):
    pass


def _frac(x: Union[int, str, Fraction]) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class StochasticMatrix:
    """A square matrix of nonnegative rationals with unit row sums."""

    entries: tuple[Row, ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise NotStochasticError("matrix is not square")
            if any(x < 0 for x in row):
                raise NotStochasticError("negative entry")
            if sum(row) != 1:
                raise NotStochasticError(f"row sums to {sum(row)}, not 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Union[int, str, Fraction]]]) -> "StochasticMatrix":
        return StochasticMatrix(
            tuple(tuple(_frac(x) for x in row) for row in rows)
        )

    @staticmethod
    def of_transformation(t: Transformation) -> "StochasticMatrix":
        n = t.degree
        return StochasticMatrix(
            tuple(
                tuple(Fraction(1 if t(x) == y else 0) for y in range(n))
                for x in range(n)
            )
        )

    @staticmethod
    def permutation(order: Sequence[int]) -> "StochasticMatrix":
        n = len(order)
        return StochasticMatrix(
            tuple(
                tuple(Fraction(1 if order[i] == j else 0) for j in range(n))
                for i in range(n)
            )
        )

    def __matmul__(self, other: "StochasticMatrix") -> "StochasticMatrix":
        if self.size != other.size:
            raise NotStochasticError("size mismatch")
        n = self.size
        return StochasticMatrix(
            tuple(
                tuple(
                    sum((self.entries[i][k] * other.entries[k][j] for k in range(n)),
                        Fraction(0))
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    def transpose_entries(self) -> tuple[Row, ...]:
        n = self.size
        return tuple(tuple(self.entries[i][j] for i in range(n)) for j in range(n))

    def is_idempotent(self) -> bool:
        return (self @ self).entries == self.entries

    def rank(self) -> int:
        return rank_exact(self.entries)

    def row(self, i: int) -> Row:
        return self.entries[i]

    def column(self, j: int) -> Row:
        return tuple(r[j] for r in self.entries)

    def format_text(self) -> str:
        return "\n".join(
            " ".join(str(x) for x in row) for row in self.entries
        )


def rank_exact(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by exact Gaussian elimination."""
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    rank = 0
    col = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col]
        mat[rank] = [x / inv for x in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


# --- distributions ---------------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    """Finitely supported exact probability weights over an indexed base set.

    ``base`` is the semigroup the indices refer to when convolution or the
    matrix image is wanted; plain state/alphabet distributions leave it None.
    """

    weights: tuple[Fraction, ...]
    base: Optional[FiniteSemigroup] = None

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise NotStochasticError("negative weight")
        if sum(self.weights) != 1:
            raise NotStochasticError("weights do not sum to 1")

    @property
    def size(self) -> int:
        return len(self.weights)

    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w > 0]

    def __call__(self, i: int) -> Fraction:
        return self.weights[i]

    @staticmethod
    def point_mass(size: int, at: int, base: Optional[FiniteSemigroup] = None) -> "Distribution":
        return Distribution(
            tuple(Fraction(1 if i == at else 0) for i in range(size)), base
        )

    @staticmethod
    def uniform(size: int, over: Sequence[int], base: Optional[FiniteSemigroup] = None) -> "Distribution":
        k = len(over)
        w = [Fraction(0)] * size
        for i in over:
            w[i] += Fraction(1, k)
        return Distribution(tuple(w), base)

    @staticmethod
    def from_weights(
        weights: Iterable[Union[int, str, Fraction]],
        base: Optional[FiniteSemigroup] = None,
    ) -> "Distribution":
        return Distribution(tuple(_frac(w) for w in weights), base)


def convolve(mu: Distribution, nu: Distribution) -> Distribution:
    """(mu * nu)(s) = sum over factorizations s = t u of mu(t) nu(u)."""
    sgp = mu.base
    if sgp is None or nu.base != sgp:
        raise BaseMismatchError("distributions are not over the same semigroup")
    w = [Fraction(0)] * len(sgp)
    for t in mu.support():
        for u in nu.support():
            w[sgp.mul(t, u)] += mu(t) * nu(u)
    return Distribution(tuple(w), sgp)


def matrix_of(dist: Distribution) -> StochasticMatrix:
    """The stochastic matrix sum of mu(s) times the 0/1 matrix of s."""
    sgp = dist.base
    if sgp is None:
        raise BaseMismatchError("distribution has no semigroup base")
    n = sgp.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for s in dist.support():
        t = sgp.elements[s]
        for x in range(n):
            rows[x][t(x)] += dist(s)
    return StochasticMatrix(tuple(tuple(r) for r in rows))


# --- canonical cone forms --------------------------------------------------


@dataclass(frozen=True)
class ConeCanonicalForm:
    """Sorted extreme rows, merged column directions, and the two-sided form.

    ``combined`` is the column form of the row form, canonicalized under
    independent row and column permutations.
    """

    extreme_rows: tuple[Row, ...]
    merged_columns: tuple[Row, ...]
    combined: tuple[Row, ...]


def extreme_rows_of(m: StochasticMatrix) -> tuple[Row, ...]:
    unique = sorted(set(m.entries))
    keep = []
    for r in unique:
        others = [x for x in unique if x != r]
        if not others or convex_combination(others, r) is None:
            keep.append(r)
    return tuple(keep)


def merged_columns_of(rows: Sequence[Row]) -> tuple[Row, ...]:
    """Sum proportional nonzero columns into one per direction, drop zeros."""
    if not rows:
        return ()
    ncols = len(rows[0])
    cols = [tuple(r[j] for r in rows) for j in range(ncols)]
    groups: dict[tuple[Fraction, ...], list[Row]] = {}
    for c in cols:
        total = sum(c)
        if total == 0:
            continue
        direction = tuple(x / total for x in c)
        groups.setdefault(direction, []).append(c)
    merged = []
    for cs in groups.values():
        merged.append(tuple(sum(col[i] for col in cs) for i in range(len(rows))))
    return tuple(sorted(merged))


def reduced_row_form(m: StochasticMatrix) -> ConeCanonicalForm:
    rows = extreme_rows_of(m)
    return ConeCanonicalForm(
        extreme_rows=rows,
        merged_columns=merged_columns_of(m.entries),
        combined=_echelon_canonical(rows),
    )


def reduced_column_form(m: StochasticMatrix) -> ConeCanonicalForm:
    return reduced_row_form(m)


def _echelon_canonical(extreme: tuple[Row, ...]) -> tuple[Row, ...]:
    """Canonical form of the column-merged extreme-row matrix under
    independent row and column permutations.

    Minimizes over row permutations with columns sorted, which is a genuine
    permutation-class invariant.  Factorial in the number of extreme rows;
    fine at desk scale.
    """
    merged = merged_columns_of(extreme)
    k = len(extreme)
    best = None
    for perm in itertools.permutations(range(k)):
        cols = sorted(tuple(c[i] for i in perm) for c in merged)
        mat = tuple(tuple(col[i] for col in cols) for i in range(k))
        if best is None or mat < best:
            best = mat
    return best if best is not None else ()


def reduced_echelon_form(m: StochasticMatrix) -> tuple[Row, ...]:
    return _echelon_canonical(extreme_rows_of(m))


# --- Green's relation deciders ---------------------------------------------


@dataclass(frozen=True)
class GreenVerdict:
    relation: str
    holds: bool
    left_multipliers: Optional[tuple[StochasticMatrix, StochasticMatrix]] = None
    right_multipliers: Optional[tuple[StochasticMatrix, StochasticMatrix]] = None


def _left_witness(m: StochasticMatrix, n: StochasticMatrix) -> StochasticMatrix:
    """Stochastic q with q m = n, rows solved independently by exact LP."""
    rows = []
    for i in range(n.size):
        coeffs = convex_combination(m.entries, n.entries[i])
        if coeffs is None:
            raise AssertionError("row-equivalent matrices must admit a left multiplier")
        rows.append(tuple(coeffs))
    q = StochasticMatrix(tuple(rows))
    if (q @ m).entries != n.entries:
        raise AssertionError("left multiplier does not reproduce the matrix")
    return q


def _right_witness(m: StochasticMatrix, n: StochasticMatrix) -> StochasticMatrix:
    """Stochastic u with m u = n, found by one exact LP over all entries."""
    size = m.size
    nvars = size * size
    rows = []
    rhs = []
    for i in range(size):
        for k in range(size):
            coeff = [Fraction(0)] * nvars
            for j in range(size):
                coeff[j * size + k] = m.entries[i][j]
            rows.append(coeff)
            rhs.append(n.entries[i][k])
    for j in range(size):
        coeff = [Fraction(0)] * nvars
        for k in range(size):
            coeff[j * size + k] = Fraction(1)
        rows.append(coeff)
        rhs.append(Fraction(1))
    sol = feasible_point(rows, rhs)
    if sol is None:
        raise AssertionError("column-equivalent matrices must admit a right multiplier")
    u = StochasticMatrix(
        tuple(tuple(sol[j * size + k] for k in range(size)) for j in range(size))
    )
    if (m @ u).entries != n.entries:
        raise AssertionError("right multiplier does not reproduce the matrix")
    return u


def green_test(m: StochasticMatrix, n: StochasticMatrix, relation: str) -> GreenVerdict:
    """Decide an L/R/J/H relation between two stochastic matrices.

    L holds iff the extreme-row sets agree, R iff the merged column
    directions agree, J iff the two-sided canonical forms agree, H iff both
    L and R hold.  Positive L/R verdicts carry exact multiplier witnesses.
    """
    if m.size != n.size:
        raise NotStochasticError("size mismatch")
    relation = relation.upper()
    if relation not in {"L", "R", "J", "H"}:
        raise ValueError(f"unknown relation {relation!r}")
    left = right = None
    if relation in {"L", "H"}:
        holds_l = extreme_rows_of(m) == extreme_rows_of(n)
        if holds_l:
            left = (_left_witness(m, n), _left_witness(n, m))
        if relation == "L":
            return GreenVerdict("L", holds_l, left_multipliers=left)
        if not holds_l:
            return GreenVerdict("H", False)
    if relation in {"R", "H"}:
        holds_r = merged_columns_of(m.entries) == merged_columns_of(n.entries)
        if holds_r:
            right = (_right_witness(m, n), _right_witness(n, m))
        return GreenVerdict(
            relation,
            holds_r,
            left_multipliers=left,
            right_multipliers=right,
        )
    return GreenVerdict("J", reduced_echelon_form(m) == reduced_echelon_form(n))


# --- idempotent structure ---------------------------------------------------


@dataclass(frozen=True)
class DoobAnalysis:
    is_idempotent: bool
    rank: int = 0
    permutation: tuple[int, ...] = ()
    blocks: tuple[tuple[tuple[int, ...], Row], ...] = ()
    canonical: Optional[tuple[Row, ...]] = None


def doob_analyze(e: StochasticMatrix) -> DoobAnalysis:
    """Block decomposition of an idempotent: p e p^t = [[e, 0], [s e, 0]].

    The diagonal part is a direct sum of rank-one stochastic blocks, one per
    recurrent class; transient rows are convex mixtures of the class rows.
    Non-idempotents are reported in the flag.
    """
    if not e.is_idempotent():
        return DoobAnalysis(is_idempotent=False)
    n = e.size
    recurrent = [i for i in range(n) if e.entries[i][i] > 0]
    transient = [i for i in range(n) if e.entries[i][i] == 0]
    for t in transient:
        if any(e.entries[i][t] != 0 for i in range(n)):
            raise AssertionError("idempotent has mass entering a transient state")
    # Partition recurrent states: i ~ j iff e[i][j] > 0.
    blocks: list[list[int]] = []
    assigned: dict[int, int] = {}
    for i in recurrent:
        if i in assigned:
            continue
        cls = [j for j in recurrent if e.entries[i][j] > 0 or j == i]
        for a in cls:
            for b in cls:
                if e.entries[a][b] == 0:
                    raise AssertionError("recurrent class is not fully supported")
            if e.entries[a] != e.entries[i]:
                raise AssertionError("rows differ inside a recurrent class")
            assigned[a] = len(blocks)
        blocks.append(cls)
    order = [i for cls in blocks for i in cls] + sorted(transient)
    k = len(blocks)
    reordered = tuple(
        tuple(e.entries[order[i]][order[j]] for j in range(n)) for i in range(n)
    )
    # Exact reconstruction check against the block shape.
    nrec = sum(len(c) for c in blocks)
    offs = []
    at = 0
    for cls in blocks:
        offs.append((at, at + len(cls)))
        at += len(cls)
    recon = [[Fraction(0)] * n for _ in range(n)]
    for b, cls in enumerate(blocks):
        lo, hi = offs[b]
        stat = [e.entries[cls[0]][order[j]] for j in range(lo, hi)]
        for i in range(lo, hi):
            for j in range(lo, hi):
                recon[i][j] = stat[j - lo]
    for ti in range(nrec, n):
        src = order[ti]
        for j in range(nrec):
            recon[ti][j] = e.entries[src][order[j]]
    if tuple(tuple(r) for r in recon) != reordered:
        raise AssertionError("block reconstruction differs from the reordered matrix")
    if rank_exact(e.entries) != k:
        raise AssertionError("block count disagrees with the Gaussian rank")
    block_data = tuple(
        (
            tuple(cls),
            tuple(e.entries[cls[0]][j] for j in cls),
        )
        for cls in blocks
    )
    return DoobAnalysis(
        is_idempotent=True,
        rank=k,
        permutation=tuple(order),
        blocks=block_data,
        canonical=reordered,
    )


def idempotent_j_invariant(e: StochasticMatrix, f: StochasticMatrix) -> bool:
    """Two idempotents are J-equivalent exactly when their ranks agree."""
    de, df = doob_analyze(e), doob_analyze(f)
    if not de.is_idempotent or not df.is_idempotent:
        raise ValueError("inputs must be idempotent")
    same_rank = de.rank == df.rank
    if green_test(e, f, "J").holds != same_rank:
        raise AssertionError("rank criterion disagrees with the J-test")
    return same_rank


# --- text / JSON formats ----------------------------------------------------

SCHEMA_MATRICES = "eggbox.matrices.v1"


def parse_matrix_text(text: str) -> list[StochasticMatrix]:
    """One row per line, `p/q` entries; blank lines separate matrices."""
    matrices = []
    block: list[list[Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if block:
                matrices.append(StochasticMatrix.from_rows(block))
                block = []
            continue
        try:
            block.append([Fraction(tok) for tok in line.split()])
        except (ValueError, ZeroDivisionError) as exc:
            raise NotStochasticError(f"line {lineno}: {exc}") from exc
    if block:
        matrices.append(StochasticMatrix.from_rows(block))
    return matrices


def format_matrices_text(mats: Sequence[StochasticMatrix]) -> str:
    return "\n\n".join(m.format_text() for m in mats) + "\n"


def matrices_to_json(mats: Sequence[StochasticMatrix]) -> str:
    return json.dumps(
        {
            "schema": SCHEMA_MATRICES,
            "matrices": [
                [[str(x) for x in row] for row in m.entries] for m in mats
            ],
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def matrices_from_json(text: str) -> list[StochasticMatrix]:
    data = json.loads(text)
    if data.get("schema") != SCHEMA_MATRICES:
        raise NotStochasticError(f"unexpected schema {data.get('schema')!r}")
    return [StochasticMatrix.from_rows(rows) for rows in data["matrices"]]

"""Finite transformation semigroups with multiplication tables and word witnesses.

Elements act on points from the right: ``x * (s @ t) == (x * s) * t``.
All values are immutable after construction; every operation is a pure
function of its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class DegenerateDegreeError(ValueError):
    """Raised for transformations or semigroups on an empty point set."""


@dataclass(frozen=True)
class Transformation:
    """A total map on ``{0, .., degree-1}``, written as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n == 0:
            raise DegenerateDegreeError("transformation of degree 0")
        for x in self.images:
            if not 0 <= x < n:
                raise ValueError(f"image {x} out of range for degree {n}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Transformation") -> "Transformation":
        """Composition ``self`` first, then ``other``."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Transformation(tuple(other.images[x] for x in self.images))

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def rank(self) -> int:
        return len(set(self.images))

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def is_permutation(self) -> bool:
        return len(set(self.images)) == self.degree

    @staticmethod
    def identity(n: int) -> "Transformation":
        return Transformation(tuple(range(n)))

    @staticmethod
    def constant(n: int, x: int) -> "Transformation":
        return Transformation((x,) * n)

    def __repr__(self) -> str:
        return f"Transformation({self.images!r})"


@dataclass(frozen=True)
class FiniteSemigroup:
    """A closed set of transformations with tables and generator-word witnesses.

    Element order is canonical: breadth-first by word length, then
    lexicographically by generator-index word.  ``right_table[i][j]`` is the
    index of ``elements[i] * elements[j]``; ``left_table[i][j]`` is the index
    of ``elements[j] * elements[i]``.
    """

    degree: int
    elements: tuple[Transformation, ...]
    generators: tuple[int, ...]
    right_table: tuple[tuple[int, ...], ...]
    words: tuple[tuple[int, ...], ...]
    _index: dict[tuple[int, ...], int] = field(repr=False, hash=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self._index:
            object.__setattr__(
                self, "_index", {t.images: i for i, t in enumerate(self.elements)}
            )

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.right_table[i][j]

    @property
    def left_table(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.elements)
        return tuple(tuple(self.right_table[j][i] for j in range(n)) for i in range(n))

    def index_of(self, t: Transformation) -> int:
        return self._index[t.images]

    def contains(self, t: Transformation) -> bool:
        return t.images in self._index

    def identity_index(self) -> Optional[int]:
        for i, t in enumerate(self.elements):
            if t.is_identity():
                return i
        return None

    def is_monoid(self) -> bool:
        return self.identity_index() is not None

    def idempotents(self) -> list[int]:
        return [i for i in range(len(self.elements)) if self.mul(i, i) == i]

    def word_of(self, i: int) -> tuple[int, ...]:
        """Generator-index word evaluating to ``elements[i]``."""
        return self.words[i]

    def evaluate_word(self, word: Sequence[int]) -> int:
        gens = self.generators
        acc = gens[word[0]]
        for g in word[1:]:
            acc = self.mul(acc, gens[g])
        return acc

    def product_of_indices(self, indices: Sequence[int]) -> int:
        acc = indices[0]
        for i in indices[1:]:
            acc = self.mul(acc, i)
        return acc

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "elements": [list(t.images) for t in self.elements],
            "generators": list(self.generators),
            "words": [list(w) for w in self.words],
        }

    @staticmethod
    def from_json(data: dict) -> "FiniteSemigroup":
        gens = [Transformation(tuple(data["elements"][i])) for i in data["generators"]]
        sgp = generate_closure(data["degree"], gens)
        if [list(t.images) for t in sgp.elements] != data["elements"]:
            raise ValueError("serialized element order does not match closure order")
        return sgp

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def generate_closure(degree: int, generators: Iterable[Transformation]) -> FiniteSemigroup:
    """Close a generating set of transformations under composition.

    Returns the smallest composition-closed superset of the generators,
    ordered breadth-first by shortest word, ties broken by lexicographic
    generator-index word.
    """
    if degree <= 0:
        raise DegenerateDegreeError("semigroup degree must be positive")
    gens: list[Transformation] = []
    seen: set[tuple[int, ...]] = set()
    for g in generators:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
        if g.images not in seen:
            seen.add(g.images)
            gens.append(g)
    if not gens:
        raise ValueError("generator set is empty")

    elements: list[Transformation] = []
    words: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}
    for k, g in enumerate(gens):
        index[g.images] = len(elements)
        elements.append(g)
        words.append((k,))

    frontier = list(range(len(elements)))
    while frontier:
        new_frontier: list[int] = []
        for i in frontier:
            for k, g in enumerate(gens):
                prod = elements[i] * g
                if prod.images not in index:
                    index[prod.images] = len(elements)
                    elements.append(prod)
                    words.append(words[i] + (k,))
                    new_frontier.append(len(elements) - 1)
        frontier = new_frontier

    n = len(elements)
    table = tuple(
        tuple(index[(elements[i] * elements[j]).images] for j in range(n))
        for i in range(n)
    )
    gen_indices = tuple(index[g.images] for g in gens)
    return FiniteSemigroup(
        degree=degree,
        elements=tuple(elements),
        generators=gen_indices,
        right_table=table,
        words=tuple(words),
    )


def from_closed_set(degree: int, elements: Iterable[Transformation]) -> FiniteSemigroup:
    """Wrap an already-closed element set, using every element as a generator."""
    return generate_closure(degree, list(elements))


def full_transformation_monoid(n: int) -> FiniteSemigroup:
    """All ``n**n`` maps on n points, generated from a cycle, a swap, and a merge."""
    if n == 1:
        return generate_closure(1, [Transformation.identity(1)])
    cycle = Transformation(tuple((x + 1) % n for x in range(n)))
    swap = Transformation((1, 0) + tuple(range(2, n)))
    merge = Transformation((0,) + tuple(range(1, n - 1)) + (n - 2,) if n > 2 else (0, 0))
    gens = [swap, cycle, merge] if n > 2 else [swap, merge]
    sgp = generate_closure(n, gens)
    return sgp

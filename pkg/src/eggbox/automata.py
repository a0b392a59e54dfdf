"""Deterministic and probabilistic automata and their transition semigroups."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .semigroup import FiniteSemigroup, Transformation, generate_closure
from .stochastic import (
    BaseMismatchError,
    Distribution,
    NotStochasticError,
    StochasticMatrix,
)


class AutomatonFormatError(ValueError):
    """Malformed automaton input; carries a field path for diagnostics."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class DeterministicAutomaton:
    """States, alphabet, and a total transition table delta[state][letter]."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n, k = len(self.states), len(self.alphabet)
        if n == 0:
            raise AutomatonFormatError("states", "state set is empty")
        if k == 0:
            raise AutomatonFormatError("alphabet", "alphabet is empty")
        if len(self.delta) != n:
            raise AutomatonFormatError("delta", f"expected {n} rows, got {len(self.delta)}")
        for x, row in enumerate(self.delta):
            if len(row) != k:
                raise AutomatonFormatError(
                    f"delta[{x}]", f"expected {k} entries, got {len(row)}"
                )
            for a, y in enumerate(row):
                if not isinstance(y, int) or not 0 <= y < n:
                    raise AutomatonFormatError(
                        f"delta[{x}][{a}]", f"state index {y!r} out of range"
                    )

    @property
    def n_states(self) -> int:
        return len(self.states)

    def step(self, x: int, a: int) -> int:
        return self.delta[x][a]

    def letter_transformation(self, a: int) -> Transformation:
        return Transformation(tuple(self.delta[x][a] for x in range(self.n_states)))


@dataclass(frozen=True)
class ProbabilisticInstance:
    """An automaton together with a finite family of letter distributions."""

    automaton: DeterministicAutomaton
    omega: tuple[Distribution, ...]

    def __post_init__(self) -> None:
        k = len(self.automaton.alphabet)
        for i, w in enumerate(self.omega):
            if w.size != k:
                raise AutomatonFormatError(
                    f"omega[{i}]", f"expected {k} letter weights, got {w.size}"
                )


@dataclass(frozen=True)
class TransitionSemigroup:
    """The image of the free semigroup on the alphabet inside F_X."""

    automaton: DeterministicAutomaton
    semigroup: FiniteSemigroup
    letter_map: tuple[int, ...]


def transition_semigroup(aut: DeterministicAutomaton) -> TransitionSemigroup:
    """Close the letter transformations; word witnesses are letter strings."""
    letters = [aut.letter_transformation(a) for a in range(len(aut.alphabet))]
    sgp = generate_closure(aut.n_states, letters)
    letter_map = tuple(sgp.index_of(t) for t in letters)
    return TransitionSemigroup(automaton=aut, semigroup=sgp, letter_map=letter_map)


def pdelta(pi: Distribution, mu: Distribution, aut: DeterministicAutomaton) -> Distribution:
    """Exact distribution push through the transition table."""
    if pi.size != aut.n_states:
        raise BaseMismatchError("state distribution has wrong size")
    if mu.size != len(aut.alphabet):
        raise BaseMismatchError("letter distribution has wrong size")
    w = [Fraction(0)] * aut.n_states
    for x in pi.support():
        for a in mu.support():
            w[aut.step(x, a)] += pi(x) * mu(a)
    return Distribution(tuple(w))


def act(pi: Distribution, mu: Distribution) -> Distribution:
    """Push a state distribution forward along a semigroup distribution."""
    sgp = mu.base
    if sgp is None:
        raise BaseMismatchError("semigroup distribution has no base")
    if pi.size != sgp.degree:
        raise BaseMismatchError("state distribution does not match the degree")
    w = [Fraction(0)] * sgp.degree
    for x in pi.support():
        for s in mu.support():
            w[sgp.elements[s](x)] += pi(x) * mu(s)
    return Distribution(tuple(w))


def letter_pushforward(mu: Distribution, ts: TransitionSemigroup) -> Distribution:
    """Aggregate letter mass onto the semigroup elements the letters map to."""
    w = [Fraction(0)] * len(ts.semigroup)
    for a in mu.support():
        w[ts.letter_map[a]] += mu(a)
    return Distribution(tuple(w), ts.semigroup)


def run_instance(
    inst: ProbabilisticInstance, pi0: Distribution, word: Sequence[int]
) -> Distribution:
    """Left fold of pdelta over a word of indices into omega."""
    pi = pi0
    for i in word:
        if not 0 <= i < len(inst.omega):
            raise IndexError(f"omega index {i} out of range")
        pi = pdelta(pi, inst.omega[i], inst.automaton)
    return pi


def detect_period(
    inst: ProbabilisticInstance, index: int, max_steps: int = 256
) -> Optional[tuple[int, int]]:
    """Exact repeat detection for powers of one omega distribution.

    Returns (tail, period) when the convolution powers of omega[index]
    repeat exactly within max_steps, else None.
    """
    from .stochastic import convolve

    ts = transition_semigroup(inst.automaton)
    mu = letter_pushforward(inst.omega[index], ts)
    seen = {mu.weights: 0}
    current = mu
    for k in range(1, max_steps + 1):
        current = convolve(current, mu)
        if current.weights in seen:
            start = seen[current.weights]
            return start, k - start
        seen[current.weights] = k
    return None


class SupportError(ValueError):
    pass


def support_semigroup(mats: Sequence[StochasticMatrix]) -> TransitionSemigroup:
    """Transformation semigroup of the support patterns of the given matrices.

    Every support must be row monomial (exactly one nonzero per row); the
    matrices are then 0/1 and each is a point mass over its support map.
    """
    if not mats:
        raise SupportError("no matrices given")
    n = mats[0].size
    transforms = []
    for idx, m in enumerate(mats):
        if m.size != n:
            raise SupportError(f"matrix {idx}: size {m.size} differs from {n}")
        images = []
        for x, row in enumerate(m.entries):
            nz = [y for y, v in enumerate(row) if v != 0]
            if len(nz) != 1:
                raise SupportError(
                    f"matrix {idx}: support {tuple(1 if v != 0 else 0 for v in row)}"
                    f" in row {x} not monomial"
                )
            images.append(nz[0])
        transforms.append(Transformation(tuple(images)))
    sgp = generate_closure(n, transforms)
    for t in sgp.elements:
        # Products of monomial supports stay monomial; keep the guard anyway.
        if len(t.images) != n:
            raise SupportError("closure left the point set")
    letter_map = tuple(sgp.index_of(t) for t in transforms)
    ts = TransitionSemigroup(
        automaton=DeterministicAutomaton(
            states=tuple(str(i) for i in range(n)),
            alphabet=tuple(f"m{i}" for i in range(len(mats))),
            delta=tuple(
                tuple(transforms[a](x) for a in range(len(mats)))
                for x in range(n)
            ),
        ),
        semigroup=sgp,
        letter_map=letter_map,
    )
    from .stochastic import matrix_of

    for idx, m in enumerate(mats):
        point = Distribution.point_mass(len(sgp), letter_map[idx], sgp)
        if matrix_of(point).entries != m.entries:
            raise SupportError(
                f"matrix {idx} is not the point mass of its support map"
            )
    return ts


# --- automaton JSON ----------------------------------------------------------

SCHEMA_AUTOMATON = "eggbox.automaton.v1"


def automaton_to_json(
    aut: DeterministicAutomaton, omega: Sequence[Distribution] = ()
) -> str:
    doc = {
        "schema": SCHEMA_AUTOMATON,
        "states": list(aut.states),
        "alphabet": list(aut.alphabet),
        "delta": [list(row) for row in aut.delta],
    }
    if omega:
        doc["omega"] = [
            {
                aut.alphabet[a]: str(w(a))
                for a in range(len(aut.alphabet))
                if w(a) != 0
            }
            for w in omega
        ]
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def automaton_from_json(text: str) -> ProbabilisticInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonFormatError("$", f"invalid JSON: {exc}") from exc
    for key in ("states", "alphabet", "delta"):
        if key not in data:
            raise AutomatonFormatError(key, "missing field")
    states = data["states"]
    alphabet = data["alphabet"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise AutomatonFormatError("states", "expected a list of names")
    if not isinstance(alphabet, list) or not all(isinstance(a, str) for a in alphabet):
        raise AutomatonFormatError("alphabet", "expected a list of names")
    delta = data["delta"]
    if not isinstance(delta, list):
        raise AutomatonFormatError("delta", "expected a list of rows")
    rows = []
    for x, row in enumerate(delta):
        if not isinstance(row, list):
            raise AutomatonFormatError(f"delta[{x}]", "expected a list")
        for a, y in enumerate(row):
            if not isinstance(y, int):
                raise AutomatonFormatError(f"delta[{x}][{a}]", f"expected int, got {y!r}")
        rows.append(tuple(row))
    aut = DeterministicAutomaton(
        states=tuple(states), alphabet=tuple(alphabet), delta=tuple(rows)
    )
    omegas = []
    letter_pos = {a: i for i, a in enumerate(aut.alphabet)}
    for i, entry in enumerate(data.get("omega", [])):
        if not isinstance(entry, dict):
            raise AutomatonFormatError(f"omega[{i}]", "expected letter->weight map")
        w = [Fraction(0)] * len(aut.alphabet)
        for letter, frac in sorted(entry.items()):
            if letter not in letter_pos:
                raise AutomatonFormatError(f"omega[{i}].{letter}", "unknown letter")
            try:
                w[letter_pos[letter]] = Fraction(frac)
            except (ValueError, ZeroDivisionError) as exc:
                raise AutomatonFormatError(f"omega[{i}].{letter}", str(exc)) from exc
        try:
            omegas.append(Distribution(tuple(w)))
        except NotStochasticError as exc:
            raise AutomatonFormatError(f"omega[{i}]", str(exc)) from exc
    return ProbabilisticInstance(automaton=aut, omega=tuple(omegas))

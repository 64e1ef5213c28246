"""Recognizers for the words whose letter counts are both divisible by n.

Over the alphabet {a, b}, the target language contains exactly the words
with #a = 0 (mod n) and #b = 0 (mod n).  Two machines are built for it:
a measure-many one-way quantum automaton whose source-level description
uses n + 2 states, and the classical product-counter DFA with n * n
states, which is already minimal.  The gap between those two sizes is
the point of the construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circulant import ShiftMatrix, cyclic_shift_circulant, quadratic_phase_circulant
from .qfa import LEFT_MARKER, RIGHT_MARKER, QfaSpec

ALPHABET = ("a", "b")


@dataclass(frozen=True)
class WordStats:
    count_a: int
    count_b: int


def word_stats(word: str) -> WordStats:
    """Letter counts of a word over {a, b}; other symbols are rejected."""
    for ch in word:
        if ch not in ALPHABET:
            raise ValueError(f"symbol {ch!r} not in the input alphabet")
    return WordStats(word.count("a"), word.count("b"))


def is_member(word: str, n: int) -> bool:
    """True when both letter counts are divisible by n."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    stats = word_stats(word)
    return stats.count_a % n == 0 and stats.count_b % n == 0


def _require_odd(n: int) -> None:
    if n <= 2 or n % 2 == 0:
        raise ValueError(f"expected odd n > 2, got {n}")


def _embed_circulant(block: ShiftMatrix, dim: int) -> np.ndarray:
    # Circulant on the counter states, identity on the halting block.
    matrix = np.eye(dim, dtype=complex)
    matrix[: block.n, : block.n] = block.to_dense()
    return matrix


def build_qfa(n: int) -> QfaSpec:
    """Quantum recognizer with n counter states, for odd n > 2.

    Letter 'a' applies the quadratic-phase circulant on the counter
    states, letter 'b' the cyclic shift; both act as the identity on the
    halting states, so nothing halts mid-word.  The right marker sends
    counter state 0 to the accepting state and counter state i > 0 to
    its own rejecting channel.  The source-level description has n + 2
    states (counters, one accepting, one rejecting); making the
    many-to-one rejecting map unitary costs n - 2 extra rejecting
    channels plus a completion on the halting block, giving 2n + 1
    realized basis states.  The extra channels only split where rejected
    amplitude lands, so no outcome probability changes.
    """
    _require_odd(n)
    counters = tuple(f"q{i}" for i in range(n))
    channels = tuple(f"rej{i}" for i in range(1, n))
    states = counters + ("acc", "rej") + channels
    dim = len(states)
    index = {name: i for i, name in enumerate(states)}

    end = np.zeros((dim, dim), dtype=complex)
    end[index["q0"], index["acc"]] = 1.0
    for i in range(1, n):
        end[index[f"q{i}"], index[f"rej{i}"]] = 1.0
    # Completion: route halting states back onto the freed basis vectors.
    # They carry no amplitude when the right marker arrives, so any
    # unitary completion gives the same run statistics.
    end[index["acc"], index["q0"]] = 1.0
    end[index["rej"], index["rej"]] = 1.0
    for i in range(1, n):
        end[index[f"rej{i}"], index[f"q{i}"]] = 1.0

    unitaries = {
        "a": _embed_circulant(quadratic_phase_circulant(n), dim),
        "b": _embed_circulant(cyclic_shift_circulant(n), dim),
        LEFT_MARKER: np.eye(dim, dtype=complex),
        RIGHT_MARKER: end,
    }
    return QfaSpec(
        states=states,
        input_alphabet=ALPHABET,
        start="q0",
        accepting=frozenset({"acc"}),
        rejecting=frozenset({"rej", *channels}),
        unitaries=unitaries,
        logical_state_count=n + 2,
    )


@dataclass(frozen=True)
class DfaSpec:
    """Complete DFA over {a, b}."""

    states: tuple[str, ...]
    start: str
    accepting: frozenset[str]
    delta: dict[str, dict[str, str]]

    def to_json_dict(self) -> dict:
        return {
            "states": list(self.states),
            "start": self.start,
            "accept": sorted(self.accepting),
            "delta": {s: dict(self.delta[s]) for s in self.states},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> DfaSpec:
        return cls(
            states=tuple(data["states"]),
            start=data["start"],
            accepting=frozenset(data["accept"]),
            delta={s: dict(moves) for s, moves in data["delta"].items()},
        )


def build_dfa(n: int) -> DfaSpec:
    """Product of two mod-n letter counters; n * n states, all reachable."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")

    def name(i: int, j: int) -> str:
        return f"a{i}b{j}"

    states = tuple(name(i, j) for i in range(n) for j in range(n))
    delta = {
        name(i, j): {"a": name((i + 1) % n, j), "b": name(i, (j + 1) % n)}
        for i in range(n)
        for j in range(n)
    }
    return DfaSpec(states, name(0, 0), frozenset({name(0, 0)}), delta)


def dfa_accepts(dfa: DfaSpec, word: str) -> bool:
    state = dfa.start
    for ch in word:
        if ch not in ALPHABET:
            raise ValueError(f"symbol {ch!r} not in the input alphabet")
        state = dfa.delta[state][ch]
    return state in dfa.accepting


def minimize_dfa(dfa: DfaSpec) -> DfaSpec:
    """Canonical minimal DFA with the same language.

    Unreachable states are pruned, then equivalence classes are found by
    partition refinement over the inverse transitions, pulling only the
    smaller half of each split back onto the worklist.  Each class is
    named after its lexicographically smallest member.
    """
    reachable = {dfa.start}
    frontier = [dfa.start]
    while frontier:
        state = frontier.pop()
        for ch in ALPHABET:
            nxt = dfa.delta[state][ch]
            if nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    position = {s: i for i, s in enumerate(dfa.states)}
    states = sorted(reachable, key=position.__getitem__)

    inverse = {ch: {s: set() for s in states} for ch in ALPHABET}
    for s in states:
        for ch in ALPHABET:
            inverse[ch][dfa.delta[s][ch]].add(s)

    accepting = frozenset(s for s in states if s in dfa.accepting)
    rest = frozenset(states) - accepting
    partition = {block for block in (accepting, rest) if block}
    work = set(partition)
    while work:
        splitter = work.pop()
        for ch in ALPHABET:
            movers = {s for q in splitter for s in inverse[ch][q]}
            for block in list(partition):
                inside = block & movers
                outside = block - movers
                if not inside or not outside:
                    continue
                inside, outside = frozenset(inside), frozenset(outside)
                partition.remove(block)
                partition.update((inside, outside))
                if block in work:
                    work.remove(block)
                    work.update((inside, outside))
                else:
                    work.add(min(inside, outside, key=len))

    class_of = {}
    for block in partition:
        label = min(block)
        for s in block:
            class_of[s] = label
    blocks = sorted(partition, key=lambda b: min(position[s] for s in b))
    new_states = tuple(min(b) for b in blocks)
    new_delta = {
        rep: {ch: class_of[dfa.delta[rep][ch]] for ch in ALPHABET}
        for rep in new_states
    }
    new_accepting = frozenset(rep for rep in new_states if rep in dfa.accepting)
    return DfaSpec(new_states, class_of[dfa.start], new_accepting, new_delta)

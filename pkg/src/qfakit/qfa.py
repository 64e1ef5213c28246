"""Measure-many one-way quantum finite automata.

A machine reads its input between a left marker and a right marker,
applies one unitary per symbol, and after every symbol observes the
halting decomposition: amplitude on accepting states is banked as
acceptance probability, amplitude on rejecting states as rejection
probability, and the remaining (non-halting) component continues
unnormalized.  Tracking the unnormalized residual makes the run exact
and deterministic; a sampled mode that collapses like a measurement
would is provided separately for demonstrations.

Amplitude vectors are row vectors: unitaries[symbol][i][j] is the
amplitude for moving from state i to state j, and a step maps psi to
psi @ U before the observation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

LEFT_MARKER = "^"
RIGHT_MARKER = "$"

UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QfaSpec:
    """Static description of a measure-many one-way automaton.

    ``unitaries`` must cover the working alphabet: every input symbol
    plus the two markers.  ``logical_state_count`` optionally records
    the size of the state set in the source-level description when the
    realized unitaries use extra basis states (e.g. parallel rejecting
    channels added to make a many-to-one end-of-input map unitary).
    ``reject_residual`` makes run() fold any leftover non-halting
    probability into rejection, for callers that want a two-outcome
    language recognizer.
    """

    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    start: str
    accepting: frozenset[str]
    rejecting: frozenset[str]
    unitaries: dict[str, np.ndarray]
    logical_state_count: int | None = None
    reject_residual: bool = False

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def working_alphabet(self) -> tuple[str, ...]:
        return self.input_alphabet + (LEFT_MARKER, RIGHT_MARKER)

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.states)}

    @cached_property
    def accept_mask(self) -> np.ndarray:
        return np.array([s in self.accepting for s in self.states])

    @cached_property
    def reject_mask(self) -> np.ndarray:
        return np.array([s in self.rejecting for s in self.states])

    @cached_property
    def nonhalting_mask(self) -> np.ndarray:
        return ~(self.accept_mask | self.reject_mask)

    def to_json_dict(self) -> dict:
        return {
            "states": list(self.states),
            "alphabet": list(self.input_alphabet),
            "start": self.start,
            "accept": sorted(self.accepting),
            "reject": sorted(self.rejecting),
            "unitaries": {
                sym: [[[z.real, z.imag] for z in row] for row in matrix]
                for sym, matrix in self.unitaries.items()
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> QfaSpec:
        unitaries = {}
        for sym, rows in data["unitaries"].items():
            mat = np.array(
                [[complex(re, im) for re, im in row] for row in rows], dtype=complex
            )
            unitaries[sym] = mat
        return cls(
            states=tuple(data["states"]),
            input_alphabet=tuple(data["alphabet"]),
            start=data["start"],
            accepting=frozenset(data["accept"]),
            rejecting=frozenset(data["reject"]),
            unitaries=unitaries,
        )


@dataclass(frozen=True)
class RunResult:
    """Deterministic outcome probabilities of one run."""

    p_accept: float
    p_reject: float
    p_residual: float


def validate(spec: QfaSpec) -> list[str]:
    """Return a list of structural and numerical violations, empty if sound."""
    problems = []
    if len(set(spec.states)) != len(spec.states):
        problems.append("duplicate state names")
    if spec.start not in spec.states:
        problems.append(f"start state {spec.start!r} not among the states")
    for name in sorted(spec.accepting | spec.rejecting):
        if name not in spec.states:
            problems.append(f"halting state {name!r} not among the states")
    overlap = spec.accepting & spec.rejecting
    if overlap:
        problems.append(f"states marked both accepting and rejecting: {sorted(overlap)}")
    if len(set(spec.input_alphabet)) != len(spec.input_alphabet):
        problems.append("duplicate input symbols")
    for sym in (LEFT_MARKER, RIGHT_MARKER):
        if sym in spec.input_alphabet:
            problems.append(f"marker {sym!r} reused as an input symbol")

    expected = set(spec.working_alphabet)
    have = set(spec.unitaries)
    for sym in sorted(expected - have):
        problems.append(f"missing transition matrix for {sym!r}")
    for sym in sorted(have - expected):
        problems.append(f"transition matrix for unknown symbol {sym!r}")

    d = spec.dim
    eye = np.eye(d)
    for sym in sorted(expected & have):
        matrix = spec.unitaries[sym]
        if matrix.shape != (d, d):
            problems.append(f"matrix for {sym!r} has shape {matrix.shape}, expected {(d, d)}")
            continue
        err = np.abs(matrix @ matrix.conj().T - eye).max()
        if err > UNITARY_TOL:
            problems.append(f"matrix for {sym!r} is not unitary (deviation {err:.3e})")
    return problems


def step(
    spec: QfaSpec, psi: np.ndarray, symbol: str
) -> tuple[np.ndarray, float, float]:
    """Apply one symbol and observe the halting decomposition.

    Returns (residual, accept_increment, reject_increment): the
    projection of psi @ U onto the non-halting states, unnormalized,
    plus the squared norms measured away on this step.
    """
    matrix = spec.unitaries.get(symbol)
    if matrix is None:
        raise ValueError(f"no transition matrix for symbol {symbol!r}")
    if psi.shape != (spec.dim,):
        raise ValueError(f"amplitude vector has shape {psi.shape}, expected ({spec.dim},)")
    phi = psi @ matrix
    weights = np.abs(phi) ** 2
    p_acc = float(weights[spec.accept_mask].sum())
    p_rej = float(weights[spec.reject_mask].sum())
    residual = np.where(spec.nonhalting_mask, phi, 0)
    return residual, p_acc, p_rej


def initial_superposition(spec: QfaSpec) -> np.ndarray:
    psi = np.zeros(spec.dim, dtype=complex)
    psi[spec.state_index[spec.start]] = 1.0
    return psi


def _check_word(spec: QfaSpec, word: str) -> None:
    allowed = set(spec.input_alphabet)
    for ch in word:
        if ch not in allowed:
            raise ValueError(f"symbol {ch!r} not in the input alphabet")


def run(spec: QfaSpec, word: str) -> RunResult:
    """Feed marker + word + marker through the machine, exactly.

    Probabilities come from accumulating the per-step halting weights of
    the unnormalized residual, so no sampling is involved and repeated
    runs are bit-identical.
    """
    _check_word(spec, word)
    psi = initial_superposition(spec)
    p_accept = 0.0
    p_reject = 0.0
    for symbol in (LEFT_MARKER, *word, RIGHT_MARKER):
        psi, acc_inc, rej_inc = step(spec, psi, symbol)
        p_accept += acc_inc
        p_reject += rej_inc
    p_residual = float((np.abs(psi) ** 2).sum())
    if spec.reject_residual:
        p_reject += p_residual
        p_residual = 0.0
    return RunResult(p_accept, p_reject, p_residual)


def accept_probability(spec: QfaSpec, word: str) -> float:
    return run(spec, word).p_accept


def run_sampled(spec: QfaSpec, word: str, rng: random.Random) -> str:
    """Simulate one observed trajectory; returns 'accept', 'reject' or 'none'.

    Unlike run(), each step draws the observation outcome from rng and
    collapses the state, so this is a single random trial.
    """
    _check_word(spec, word)
    psi = initial_superposition(spec)
    for symbol in (LEFT_MARKER, *word, RIGHT_MARKER):
        phi = psi @ spec.unitaries[symbol]
        weights = np.abs(phi) ** 2
        p_acc = float(weights[spec.accept_mask].sum())
        p_rej = float(weights[spec.reject_mask].sum())
        draw = rng.random()
        if draw < p_acc:
            return "accept"
        if draw < p_acc + p_rej:
            return "reject"
        residual = np.where(spec.nonhalting_mask, phi, 0)
        norm = np.linalg.norm(residual)
        if norm == 0.0:
            # Observation says "continue" but nothing continues; treat as
            # rejection of the leftover trajectory.
            return "reject"
        psi = residual / norm
    return "reject" if spec.reject_residual else "none"

import math
import random
from dataclasses import replace

import numpy as np
import pytest

from qfakit.divisibility import build_qfa, is_member
from qfakit.qfa import (
    LEFT_MARKER,
    RIGHT_MARKER,
    QfaSpec,
    accept_probability,
    initial_superposition,
    run,
    run_sampled,
    step,
    validate,
)


def projector_oracle(spec, word):
    # independent reference: column vectors and explicit projector
    # matrices instead of row vectors and boolean masks
    dim = len(spec.states)
    acc_proj = np.diag([1.0 if s in spec.accepting else 0.0 for s in spec.states])
    rej_proj = np.diag([1.0 if s in spec.rejecting else 0.0 for s in spec.states])
    non_proj = np.eye(dim) - acc_proj - rej_proj
    psi = np.zeros((dim, 1), dtype=complex)
    psi[spec.states.index(spec.start), 0] = 1.0
    acc = rej = 0.0
    for symbol in (LEFT_MARKER, *word, RIGHT_MARKER):
        psi = spec.unitaries[symbol].T @ psi
        acc += (psi.conj().T @ acc_proj @ psi).real.item()
        rej += (psi.conj().T @ rej_proj @ psi).real.item()
        psi = non_proj @ psi
    residual = (psi.conj().T @ psi).real.item()
    return acc, rej, residual


def random_word(rng, max_len):
    return "".join(rng.choice("ab") for _ in range(rng.randint(0, max_len)))


def test_validate_accepts_built_machine():
    assert validate(build_qfa(3)) == []
    assert validate(build_qfa(9)) == []


def test_validate_flags_missing_start():
    spec = replace(build_qfa(3), start="nowhere")
    assert any("start" in p for p in validate(spec))


def test_validate_flags_overlapping_outcomes():
    spec = build_qfa(3)
    spec = replace(spec, rejecting=spec.rejecting | {"acc"})
    assert any("both accepting and rejecting" in p for p in validate(spec))


def test_validate_names_non_unitary_symbol():
    spec = build_qfa(3)
    broken = dict(spec.unitaries)
    broken["a"] = broken["a"] * 1.1
    problems = validate(replace(spec, unitaries=broken))
    assert any("'a'" in p and "unitary" in p for p in problems)


def test_validate_flags_missing_and_unknown_matrices():
    spec = build_qfa(3)
    trimmed = dict(spec.unitaries)
    trimmed["z"] = trimmed.pop("b")
    problems = validate(replace(spec, unitaries=trimmed))
    assert any("missing transition matrix for 'b'" in p for p in problems)
    assert any("unknown symbol 'z'" in p for p in problems)


def test_validate_flags_bad_shape():
    spec = build_qfa(3)
    broken = dict(spec.unitaries)
    broken["b"] = broken["b"][:-1, :]
    problems = validate(replace(spec, unitaries=broken))
    assert any("shape" in p for p in problems)


def test_step_spreads_first_row_of_the_letter_matrix():
    spec = build_qfa(3)
    psi = initial_superposition(spec)
    residual, acc_inc, rej_inc = step(spec, psi, "a")
    assert acc_inc == 0.0 and rej_inc == 0.0
    scale = 1 / math.sqrt(3)
    w = np.exp(2j * math.pi / 3)
    np.testing.assert_allclose(residual[:3], [scale, scale * w, scale * w], atol=1e-15)
    assert np.all(residual[3:] == 0)


def test_letters_never_halt_midword():
    spec = build_qfa(5)
    psi = initial_superposition(spec)
    rng = random.Random(0)
    for _ in range(30):
        psi, acc_inc, rej_inc = step(spec, psi, rng.choice("ab"))
        assert acc_inc == 0.0 and rej_inc == 0.0
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


def test_run_frozen_probabilities():
    spec = build_qfa(3)
    assert abs(run(spec, "").p_accept - 1) < 1e-12
    assert abs(run(spec, "a").p_accept - 1 / 3) < 1e-12
    assert abs(run(spec, "ab").p_accept - 1 / 3) < 1e-12
    assert abs(run(spec, "aaabbb").p_accept - 1) < 1e-12
    result = run(spec, "a")
    assert abs(result.p_accept + result.p_reject - 1) < 1e-12
    assert result.p_residual == 0.0


def test_run_matches_projector_oracle():
    rng = random.Random(11)
    for n in [3, 5]:
        spec = build_qfa(n)
        for _ in range(30):
            word = random_word(rng, 20)
            result = run(spec, word)
            acc, rej, residual = projector_oracle(spec, word)
            assert abs(result.p_accept - acc) <= 1e-12
            assert abs(result.p_reject - rej) <= 1e-12
            assert abs(result.p_residual - residual) <= 1e-12


def test_probability_conservation_and_monotonicity():
    rng = random.Random(12)
    spec = build_qfa(9)
    for _ in range(20):
        word = random_word(rng, 30)
        psi = initial_superposition(spec)
        acc = rej = 0.0
        norms = [1.0]
        for symbol in (LEFT_MARKER, *word, RIGHT_MARKER):
            psi, acc_inc, rej_inc = step(spec, psi, symbol)
            assert acc_inc >= 0.0 and rej_inc >= 0.0  # partial sums never decrease
            acc += acc_inc
            rej += rej_inc
            norms.append(float(np.linalg.norm(psi) ** 2))
        assert all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))
        assert max(norms) <= 1 + 1e-12
        assert abs(acc + rej + norms[-1] - 1) <= 1e-9


def test_word_symbols_are_checked():
    spec = build_qfa(3)
    with pytest.raises(ValueError):
        run(spec, "abc")
    with pytest.raises(ValueError):
        run(spec, "a$")


def test_step_rejects_unknown_symbol_and_bad_shape():
    spec = build_qfa(3)
    with pytest.raises(ValueError):
        step(spec, initial_superposition(spec), "q")
    with pytest.raises(ValueError):
        step(spec, np.zeros(3, dtype=complex), "a")


def test_residual_fold_policy():
    spec = build_qfa(3)
    stuck = dict(spec.unitaries)
    stuck[RIGHT_MARKER] = np.eye(spec.dim, dtype=complex)  # nothing ever halts
    spec_stuck = replace(spec, unitaries=stuck)
    result = run(spec_stuck, "")
    assert abs(result.p_residual - 1) < 1e-12 and result.p_reject == 0.0
    folded = run(replace(spec_stuck, reject_residual=True), "")
    assert folded.p_residual == 0.0
    assert abs(folded.p_reject - 1) < 1e-12


def test_sampled_mode_is_seed_deterministic():
    spec = build_qfa(3)
    outcomes_a = [run_sampled(spec, "ab", random.Random(42)) for _ in range(5)]
    outcomes_b = [run_sampled(spec, "ab", random.Random(42)) for _ in range(5)]
    assert outcomes_a == outcomes_b
    assert set(outcomes_a) <= {"accept", "reject", "none"}


def test_sampled_frequencies_track_exact_probabilities():
    spec = build_qfa(3)
    rng = random.Random(2024)
    trials = 2000
    hits = sum(run_sampled(spec, "a", rng) == "accept" for _ in range(trials))
    exact = accept_probability(spec, "a")
    assert abs(hits / trials - exact) < 0.05
    assert all(
        run_sampled(spec, "aaa", random.Random(i)) == "accept" for i in range(20)
    )  # member of the language: accepts with certainty


def test_json_roundtrip_preserves_behaviour():
    spec = build_qfa(5)
    again = QfaSpec.from_json_dict(spec.to_json_dict())
    assert validate(again) == []
    assert again.states == spec.states
    for sym in spec.working_alphabet:
        np.testing.assert_array_equal(again.unitaries[sym], spec.unitaries[sym])
    for word in ["", "a", "ab", "aaaaabbbbb", "ba" * 7]:
        assert run(again, word) == run(spec, word)


def test_membership_alignment_small_exhaustive():
    spec = build_qfa(3)
    for length in range(6):
        for bits in range(2**length):
            word = "".join("ab"[(bits >> i) & 1] for i in range(length))
            p = accept_probability(spec, word)
            if is_member(word, 3):
                assert abs(p - 1) <= 1e-9
            else:
                assert p <= 1 / 3 + 1e-9

"""Small quantum recognizers with numerically certified behaviour.

The package provides exact circulant (shift-matrix) algebra, a
measure-many one-way quantum automaton simulator, recognizers for the
language of words whose two letter counts are both divisible by n, the
minimal classical DFA baseline, and a command-line harness that checks
the acceptance bounds and the circulant power-classification laws.
"""

from .circulant import (
    ShiftMatrix,
    SpecialShiftProfile,
    classify_special,
    cyclic_shift_circulant,
    iter_powers,
    quadratic_phase_circulant,
)
from .divisibility import (
    ALPHABET,
    DfaSpec,
    WordStats,
    build_dfa,
    build_qfa,
    dfa_accepts,
    is_member,
    minimize_dfa,
    word_stats,
)
from .modular import (
    Factorization,
    factorize,
    gcd,
    mod_div,
    quad_exp_sum,
    shift_invariance_check,
)
from .qfa import (
    LEFT_MARKER,
    RIGHT_MARKER,
    QfaSpec,
    RunResult,
    accept_probability,
    initial_superposition,
    run,
    run_sampled,
    step,
    validate,
)

__all__ = [
    "ALPHABET",
    "DfaSpec",
    "Factorization",
    "LEFT_MARKER",
    "QfaSpec",
    "RIGHT_MARKER",
    "RunResult",
    "ShiftMatrix",
    "SpecialShiftProfile",
    "WordStats",
    "accept_probability",
    "build_dfa",
    "build_qfa",
    "classify_special",
    "cyclic_shift_circulant",
    "dfa_accepts",
    "factorize",
    "gcd",
    "initial_superposition",
    "is_member",
    "iter_powers",
    "minimize_dfa",
    "mod_div",
    "quad_exp_sum",
    "quadratic_phase_circulant",
    "run",
    "run_sampled",
    "shift_invariance_check",
    "step",
    "validate",
    "word_stats",
]

"""Circulant matrices over complex doubles, stored by first row only.

A circulant here is the n x n matrix with entry (i, j) equal to
first_row[(j - i) mod n]: each row is the previous one rotated right.
Products, adjoints, and powers all stay in first-row space; the dense
expansion exists for interfacing with generic matrix code and for test
oracles, never for the algebra itself.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

_DEFAULT_TOL = 1e-9
# Tolerance for re-deriving the phase law of a sparse circulant from its
# entries: per-entry mismatch relative to the common modulus.
_PHASE_FIT_TOL = 1e-8


def _unit_phase(numerator: int, n: int) -> complex:
    return cmath.exp(2j * math.pi * (numerator % n) / n)


@dataclass(frozen=True)
class ShiftMatrix:
    """Circulant of order n, represented by its first row."""

    n: int
    first_row: tuple[complex, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be positive, got {self.n}")
        if len(self.first_row) != self.n:
            raise ValueError(
                f"first row has {len(self.first_row)} entries, expected {self.n}"
            )
        object.__setattr__(self, "first_row", tuple(complex(x) for x in self.first_row))

    @classmethod
    def identity(cls, n: int) -> ShiftMatrix:
        return cls(n, ((1 + 0j),) + (0j,) * (n - 1))

    def entry(self, i: int, j: int) -> complex:
        """Dense entry (i, j) without expanding the matrix."""
        return self.first_row[(j - i) % self.n]

    def __matmul__(self, other: ShiftMatrix) -> ShiftMatrix:
        """Circulant product: cyclic convolution of the first rows."""
        if not isinstance(other, ShiftMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"order mismatch: {self.n} vs {other.n}")
        a, b, n = self.first_row, other.first_row, self.n
        row = tuple(
            sum(a[j] * b[(i - j) % n] for j in range(n)) for i in range(n)
        )
        return ShiftMatrix(n, row)

    def conj_transpose(self) -> ShiftMatrix:
        """Adjoint; again a circulant, with row j holding conj(row[-j])."""
        a, n = self.first_row, self.n
        return ShiftMatrix(n, tuple(a[(n - j) % n].conjugate() for j in range(n)))

    def power(self, s: int) -> ShiftMatrix:
        """s-th power by iterated multiplication, s >= 0."""
        if s < 0:
            raise ValueError(f"exponent must be non-negative, got {s}")
        acc = ShiftMatrix.identity(self.n)
        for _ in range(s):
            acc = acc @ self
        return acc

    def is_unitary(self, tol: float = _DEFAULT_TOL) -> bool:
        """Check A @ A.conj_transpose() == identity entrywise within tol."""
        prod = (self @ self.conj_transpose()).first_row
        err = max(
            abs(prod[i] - (1 if i == 0 else 0)) for i in range(self.n)
        )
        return err <= tol

    def to_dense(self) -> np.ndarray:
        row, n = self.first_row, self.n
        return np.array(
            [[row[(j - i) % n] for j in range(n)] for i in range(n)],
            dtype=complex,
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "first_row": [[x.real, x.imag] for x in self.first_row],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> ShiftMatrix:
        return cls(data["n"], tuple(complex(re, im) for re, im in data["first_row"]))


def quadratic_phase_circulant(n: int) -> ShiftMatrix:
    """Circulant with first row (1/sqrt n) * exp((2*pi/n)i * j^2).

    Unitary for odd n; this is the letter unitary that mixes counter
    states through quadratic phases.
    """
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    scale = 1.0 / math.sqrt(n)
    return ShiftMatrix(n, tuple(scale * _unit_phase(j * j, n) for j in range(n)))


def cyclic_shift_circulant(n: int) -> ShiftMatrix:
    """Permutation circulant sending basis state i to i+1 mod n."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if n == 1:
        return ShiftMatrix.identity(1)
    return ShiftMatrix(n, (0j, 1 + 0j) + (0j,) * (n - 2))


def iter_powers(a: ShiftMatrix, s_max: int) -> Iterator[tuple[int, ShiftMatrix]]:
    """Yield (s, a**s) for s = 1..s_max, multiplying incrementally."""
    acc = a
    for s in range(1, s_max + 1):
        yield s, acc
        if s < s_max:
            acc = acc @ a


@dataclass(frozen=True)
class SpecialShiftProfile:
    """Parameters of a sparse quadratic-phase circulant.

    The nonzero entries sit exactly at the index multiples of l and obey
    a_{j*l} = c * exp((2*pi/n)i * k*l*j^2) for j = 0..g-1, where l*g = n
    and k is canonical in 0..g-1.
    """

    l: int
    g: int
    k: int
    c: complex

    @property
    def n(self) -> int:
        return self.l * self.g

    def reconstruct(self) -> ShiftMatrix:
        """Rebuild the circulant this profile describes."""
        n = self.n
        row = [0j] * n
        for j in range(self.g):
            row[j * self.l] = self.c * _unit_phase(self.k * self.l * j * j, n)
        return ShiftMatrix(n, tuple(row))


def classify_special(a: ShiftMatrix, tol: float = _DEFAULT_TOL) -> SpecialShiftProfile | None:
    """Fit a SpecialShiftProfile to a circulant, or return None.

    Entries of modulus at most tol * max|entry| count as zero.  The
    support must then be exactly the multiples of some divisor l of n
    (l = n when only entry 0 survives), c is read off entry 0, k is
    fitted from the phase of entry l relative to entry 0 and validated
    against every surviving entry.  Any mismatch, a zero matrix, or a
    vanishing entry 0 means the matrix is not of this form.
    """
    row, n = a.first_row, a.n
    peak = max(abs(x) for x in row)
    if peak == 0.0:
        return None
    threshold = tol * peak
    if abs(row[0]) <= threshold:
        return None
    support = {j for j in range(n) if abs(row[j]) > threshold}
    nonzero = sorted(support - {0})
    l = nonzero[0] if nonzero else n
    if n % l != 0:
        return None
    g = n // l
    if support != {j * l for j in range(g)}:
        return None
    c = row[0]
    if g == 1:
        k = 0
    else:
        # One entry pins k: arg(a_l / c) = 2*pi * k*l / n = 2*pi * k / g.
        k = round(cmath.phase(row[l] / c) * g / (2 * math.pi)) % g
    for j in range(g):
        predicted = c * _unit_phase(k * l * j * j, n)
        if abs(row[j * l] - predicted) > _PHASE_FIT_TOL * abs(c):
            return None
    return SpecialShiftProfile(l, g, k, c)

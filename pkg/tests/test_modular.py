import cmath
import math

import pytest

from qfakit.modular import (
    factorize,
    gcd,
    mod_div,
    quad_exp_sum,
    shift_invariance_check,
)

ODD_MODULI = [3, 5, 9, 15]


def brute_gcd(a, b):
    # largest d dividing both, by descending search
    a, b = abs(a), abs(b)
    for d in range(max(a, b), 0, -1):
        if a % d == 0 and b % d == 0:
            return d
    raise AssertionError("no divisor found")


def brute_mod_div(a, b, n):
    hits = [c for c in range(n) if (c * b) % n == a % n]
    assert len(hits) == 1, f"division {a}/{b} mod {n} not unique: {hits}"
    return hits[0]


def term_sum(b, t, n):
    # independent accumulation without the mod-n exponent reduction
    return sum(cmath.exp(2j * math.pi * (b * j * j - 2 * j * t) / n) for j in range(n))


def test_gcd_examples():
    assert gcd(12, 18) == 6
    assert gcd(0, 7) == 7
    assert gcd(7, 0) == 7
    assert gcd(-12, 18) == 6


def test_gcd_zero_zero_rejected():
    with pytest.raises(ValueError):
        gcd(0, 0)


def test_gcd_against_brute_force():
    for a in range(0, 40):
        for b in range(1, 40):
            assert gcd(a, b) == brute_gcd(a, b)


def test_mod_div_example():
    assert mod_div(1, 2, 5) == 3


def test_mod_div_negative_inputs_reduce_first():
    assert mod_div(-1, 2, 5) == mod_div(4, 2, 5) == 2


def test_mod_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        mod_div(1, 0, 5)
    with pytest.raises(ZeroDivisionError):
        mod_div(1, 5, 5)  # 5 reduces to the zero residue


def test_mod_div_not_invertible():
    with pytest.raises(ValueError):
        mod_div(1, 3, 9)
    with pytest.raises(ValueError):
        mod_div(2, 6, 15)


@pytest.mark.parametrize("n", ODD_MODULI)
def test_mod_div_matches_exhaustive_search(n):
    for b in range(1, n):
        if math.gcd(b, n) != 1:
            continue
        for a in range(n):
            assert mod_div(a, b, n) == brute_mod_div(a, b, n)


@pytest.mark.parametrize("n", ODD_MODULI)
def test_mod_div_identities(n):
    units = [b for b in range(1, n) if math.gcd(b, n) == 1]
    for a in units:
        for b in range(n):
            # 1/a + b = (1 + a*b)/a
            assert (mod_div(1, a, n) + b) % n == mod_div(1 + a * b, a, n)
    for a in range(n):
        for b in units:
            assert (mod_div(a, b, n) * b) % n == a
            for c in units:
                assert mod_div(mod_div(a, b, n), c, n) == mod_div(a, b * c, n)


def test_factorize_examples():
    assert factorize(9).factors == (3, 3)
    assert factorize(15).factors == (3, 5)
    assert factorize(21).factors == (3, 7)
    assert factorize(33).factors == (3, 11)
    assert factorize(15).p_min == 3
    assert factorize(25).p_min == 5
    assert factorize(13).factors == (13,)
    assert factorize(13).is_prime
    assert not factorize(9).is_prime


@pytest.mark.parametrize("bad", [0, 1, 2, 4, 6, 100, -9])
def test_factorize_domain(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_factorize_reconstructs_n():
    for n in range(3, 400, 2):
        fac = factorize(n)
        prod = 1
        for p in fac.factors:
            prod *= p
            # primality by trial division
            assert p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))
        assert prod == n
        assert fac.p_min == min(fac.factors)
        assert fac.factors == tuple(sorted(fac.factors))


def test_quad_exp_sum_frozen_value():
    # b=1, t=0, n=3: 1 + 2*exp(2*pi*i/3) = i*sqrt(3)
    value = quad_exp_sum(1, 0, 3)
    assert abs(value - 1j * math.sqrt(3)) < 1e-12


def test_quad_exp_sum_matches_term_accumulation():
    for n in ODD_MODULI:
        for b in range(-n, 2 * n):
            for t in range(-n, 2 * n):
                assert abs(quad_exp_sum(b, t, n) - term_sum(b, t, n)) < 1e-9


@pytest.mark.parametrize("n", [3, 5, 9])
def test_quad_exp_sum_vanishes_off_divisor(n):
    for b in range(n):
        g = math.gcd(b, n)
        for t in range(n):
            s = quad_exp_sum(b, t, n)
            if t % g != 0:
                assert abs(s) <= 1e-10, (n, b, t, s)


def test_quad_exp_sum_nonzero_on_divisor():
    # gcd(1,3)=1 divides t=1, and the magnitude is sqrt(3)
    s = quad_exp_sum(1, 1, 3)
    assert abs(s) > 1.0
    assert abs(abs(s) - math.sqrt(3)) < 1e-12


def test_shift_invariance_example():
    lhs, rhs = shift_invariance_check(1, 1, 9)
    assert abs(lhs - rhs) <= 1e-10
    assert abs(lhs - term_sum(1, 0, 9)) < 1e-9  # t=0 reduces to the plain sum


def test_shift_invariance_random_triples():
    import random

    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(3, 100, 2)
        c1 = rng.randint(-100, 100)
        c2 = rng.randint(-100, 100)
        lhs, rhs = shift_invariance_check(c1, c2, n)
        assert abs(lhs - rhs) <= 1e-10


def test_bad_moduli_rejected():
    with pytest.raises(ValueError):
        quad_exp_sum(1, 0, 0)
    with pytest.raises(ValueError):
        shift_invariance_check(1, 1, -3)
    with pytest.raises(ValueError):
        mod_div(1, 1, 0)

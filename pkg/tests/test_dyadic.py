"""Exact dyadic arithmetic, valuations, and canonical form."""

import math
import random
from fractions import Fraction

import pytest

from dyadelone.dyadic import (
    ONE,
    ZERO,
    Dyadic,
    abs2,
    abs_real,
    cmp_real,
    dyadic_from_json,
    dyadic_to_json,
    from_int,
    normalize,
    real_value,
    val2,
)


def _frac(x: Dyadic) -> Fraction:
    return Fraction(x.num, 1 << x.exp)


def test_normalize_strips_trailing_twos():
    assert normalize(6, 3) == Dyadic(3, 2)
    assert normalize(8, 3) == Dyadic(1, 0)
    assert normalize(0, 7) == ZERO
    assert normalize(41, 2) == Dyadic(41, 2)


def test_normalize_rejects_negative_exp():
    with pytest.raises(ValueError):
        normalize(1, -1)


def test_canonical_invariants_random():
    rng = random.Random(11)
    for _ in range(500):
        num = rng.randrange(-(1 << 20), 1 << 20)
        exp = rng.randrange(0, 24)
        x = normalize(num, exp)
        assert x.exp >= 0
        if x.exp > 0:
            assert x.num % 2 == 1
        if x.num == 0:
            assert x == ZERO
        assert _frac(x) == Fraction(num, 1 << exp)


def test_add_worked_example():
    x = normalize(1, 4)
    y = normalize(41, 2)
    assert x + y == Dyadic(165, 4)


def test_arithmetic_matches_fractions():
    rng = random.Random(23)
    for _ in range(400):
        a = normalize(rng.randrange(-999, 1000), rng.randrange(0, 12))
        b = normalize(rng.randrange(-999, 1000), rng.randrange(0, 12))
        assert _frac(a + b) == _frac(a) + _frac(b)
        assert _frac(a - b) == _frac(a) - _frac(b)
        assert _frac(-a) == -_frac(a)
        assert a + b - b == a


def test_comparison_is_real_order():
    rng = random.Random(37)
    vals = [normalize(rng.randrange(-99, 100), rng.randrange(0, 9)) for _ in range(80)]
    for a in vals:
        for b in vals:
            assert (a < b) == (_frac(a) < _frac(b))
            assert (a <= b) == (_frac(a) <= _frac(b))
    assert cmp_real(ZERO, ONE) == -1
    assert cmp_real(ONE, ONE) == 0
    assert cmp_real(ONE, ZERO) == 1


def test_val2_examples():
    assert val2(normalize(41, 2)) == -2
    assert val2(from_int(8)) == 3
    assert val2(from_int(12)) == 2
    assert val2(normalize(1, 4)) == -4
    assert val2(ZERO) == math.inf


def test_val2_random_matches_fraction_factorisation():
    rng = random.Random(41)
    for _ in range(300):
        x = normalize(rng.randrange(-4000, 4000), rng.randrange(0, 14))
        if x == ZERO:
            continue
        f = _frac(x)
        v = 0
        n, d = f.numerator, f.denominator
        while n % 2 == 0:
            n //= 2
            v += 1
        while d % 2 == 0:
            d //= 2
            v -= 1
        assert val2(x) == v
        assert abs2(x) == Fraction(1, 2**v) if v >= 0 else Fraction(2**-v)


def test_abs_and_real_value():
    x = normalize(-3, 2)
    assert real_value(x) == Fraction(-3, 4)
    assert abs_real(x) == Fraction(3, 4)
    assert abs2(from_int(0)) == 0


def test_str_rendering():
    assert str(normalize(165, 4)) == "165/16"
    assert str(from_int(5)) == "5"
    assert str(ZERO) == "0"
    assert str(normalize(-1, 1)) == "-1/2"


def test_json_round_trip():
    rng = random.Random(53)
    for _ in range(200):
        x = normalize(rng.randrange(-(1 << 40), 1 << 40), rng.randrange(0, 30))
        assert dyadic_from_json(dyadic_to_json(x)) == x
    assert dyadic_to_json(normalize(165, 4)) == ["165", 4]


def test_json_accepts_unnormalised_input():
    assert dyadic_from_json(["6", 3]) == Dyadic(3, 2)
    assert dyadic_from_json(["0", 9]) == ZERO


def test_hashable_and_frozen():
    x = normalize(7, 3)
    assert hash(x) == hash(Dyadic(7, 3))
    with pytest.raises(AttributeError):
        x.num = 1

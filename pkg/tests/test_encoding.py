"""Trapdoor encoding layer: pairing, cubic encode/decode, root finding."""

import random

import pytest

from cubecipher import (
    CorruptValueError,
    NoIntegerRootError,
    SymbolRangeError,
    cantor_pair,
    cantor_unpair,
    consecutive_product_divisible,
    decode_symbol,
    encode_symbol,
    integer_cube_root,
    solve_depressed_cubic,
)


def linear_scan_root(t):
    """Oracle: find n >= 2 with n^3 - n = 6t by stepping upward."""
    n = 2
    while n * n * n - n < 6 * t:
        n += 1
    return n if n * n * n - n == 6 * t else None


def first_primes(count):
    """Oracle prime list by trial division, in natural order."""
    primes = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


def test_cantor_pair_examples():
    assert cantor_pair(0, 0) == 0
    assert cantor_pair(1, 2) == 8  # (1+2)(1+2+1)/2 + 2
    with pytest.raises(ValueError):
        cantor_pair(-1, 0)
    with pytest.raises(ValueError):
        cantor_pair(0, -1)


def test_cantor_pair_is_injective_on_grid():
    values = {cantor_pair(a, b) for a in range(101) for b in range(101)}
    assert len(values) == 101 * 101


def test_cantor_unpair_examples():
    assert cantor_unpair(0) == (0, 0)
    assert cantor_unpair(8) == (1, 2)
    with pytest.raises(ValueError):
        cantor_unpair(-1)


def test_cantor_round_trip():
    for z in range(10**4 + 1):
        assert cantor_pair(*cantor_unpair(z)) == z
    for a in range(60):
        for b in range(60):
            assert cantor_unpair(cantor_pair(a, b)) == (a, b)


def test_encode_symbol_worked_example():
    # 'A' (65) with prime 13: t = 77 * 78 * 79 / 6
    assert encode_symbol(65, 13) == 79079


def test_encode_symbol_minimum():
    assert encode_symbol(0, 2) == 1


def test_encode_symbol_validation():
    with pytest.raises(ValueError):
        encode_symbol(-1, 13)
    with pytest.raises(ValueError):
        encode_symbol(65, 1)


def test_decode_symbol_worked_example():
    assert decode_symbol(79079, 13) == 65
    assert solve_depressed_cubic(79079) == 78


def test_decode_symbol_minimum():
    assert decode_symbol(1, 2) == 0


def test_encode_decode_round_trip():
    for prime in first_primes(50):
        for code in range(128):
            t = encode_symbol(code, prime)
            assert t >= 1
            assert decode_symbol(t, prime) == code


def test_decode_rejects_wrong_range():
    # valid cubic root but the recovered code is negative
    with pytest.raises(SymbolRangeError):
        decode_symbol(1, 5)  # n = 2, code would be -3
    # a too-large wrong prime pushes the code below 0
    with pytest.raises(SymbolRangeError):
        decode_symbol(79079, 101)  # n = 78, code would be -23
    # code 200 is out of range in strict mode but fine in byte mode
    t = encode_symbol(200, 13)
    with pytest.raises(SymbolRangeError):
        decode_symbol(t, 13)
    assert decode_symbol(t, 13, max_code=255) == 200


def test_decode_rejects_non_encodings():
    with pytest.raises(CorruptValueError):
        decode_symbol(2, 13)  # n^3 - n = 12 has no integer root
    with pytest.raises(CorruptValueError):
        decode_symbol(0, 13)


def test_solve_depressed_cubic_basics():
    assert solve_depressed_cubic(1) == 2
    with pytest.raises(NoIntegerRootError):
        solve_depressed_cubic(2)
    with pytest.raises(NoIntegerRootError):
        solve_depressed_cubic(0)
    with pytest.raises(NoIntegerRootError):
        solve_depressed_cubic(-5)


def test_solve_depressed_cubic_matches_linear_scan():
    for n in range(2, 1001):
        t = (n * n * n - n) // 6
        assert solve_depressed_cubic(t) == n == linear_scan_root(t)


def test_cubic_monotonicity():
    # n^3 - n strictly increases for n >= 1, the fact that makes the
    # binary-search root unique
    previous = 0
    for n in range(1, 1001):
        value = n * n * n - n
        assert value > previous or n == 1
        previous = value


def test_discriminant_never_vanishes():
    for prime in first_primes(20):
        for code in (0, 1, 64, 127):
            t = encode_symbol(code, prime)
            assert 243 * t * t - 1 != 0


def test_exact_division_by_six():
    for prime in first_primes(100):
        for code in range(0, 128, 7):
            n = code + prime
            assert (n - 1) * n * (n + 1) % 6 == 0


def test_integer_cube_root():
    assert integer_cube_root(0) == 0
    assert integer_cube_root(1) == 1
    assert integer_cube_root(7) == 1
    assert integer_cube_root(8) == 2
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randrange(0, 10**30)
        r = integer_cube_root(n)
        assert r**3 <= n < (r + 1) ** 3
    for exact in (5, 12, 10**10):
        assert integer_cube_root(exact**3) == exact
        assert integer_cube_root(exact**3 - 1) == exact - 1
        assert integer_cube_root(exact**3 + 1) == exact
    with pytest.raises(ValueError):
        integer_cube_root(-1)


def test_consecutive_product_divisible_examples():
    assert consecutive_product_divisible(5, 3)  # 5*6*7 = 210
    assert consecutive_product_divisible(-7, 4)  # (-7)(-6)(-5)(-4) = 840
    with pytest.raises(ValueError):
        consecutive_product_divisible(5, 0)


def test_consecutive_product_divisible_property():
    rng = random.Random(23)
    for _ in range(1000):
        start = rng.randint(-10**6, 10**6)
        n = rng.randint(1, 100)
        assert consecutive_product_divisible(start, n)

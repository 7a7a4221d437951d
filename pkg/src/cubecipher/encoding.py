"""Cubic trapdoor layer: map (symbol, prime) pairs to integers and back.

Encoding a symbol code x with a prime y sets n = x + y and produces

    t = (n - 1) * n * (n + 1) / 6

The division is exact: among three consecutive integers one is divisible
by 3 and at least one by 2, so their product is divisible by 6 (a special
case of "the product of n consecutive integers is divisible by n", which
consecutive_product_divisible checks directly).

Decoding solves n^3 - n = 6t for its unique integer root n >= 2 and
returns x = n - y. Uniqueness comes from monotonicity: n^3 - n is strictly
increasing for n >= 1, so an exact integer binary search replaces any
radical formula and keeps the whole round trip bit-exact. Without y the
root n only reveals the sum x + y, which is what makes the prime stream
the trapdoor knowledge.

The Cantor pairing bijection is provided as a standalone utility of the
same spirit (a reversible packing of two naturals into one); the cipher
pipeline itself does not use it.
"""

import math

from .errors import CorruptValueError, NoIntegerRootError, SymbolRangeError

__all__ = [
    "ASCII_MAX",
    "BYTE_MAX",
    "cantor_pair",
    "cantor_unpair",
    "encode_symbol",
    "decode_symbol",
    "solve_depressed_cubic",
    "integer_cube_root",
    "consecutive_product_divisible",
]

ASCII_MAX = 127
BYTE_MAX = 255


def cantor_pair(k1: int, k2: int) -> int:
    """Cantor pairing (k1 + k2)(k1 + k2 + 1)/2 + k2, a bijection N x N -> N."""
    if k1 < 0 or k2 < 0:
        raise ValueError("cantor_pair requires nonnegative inputs")
    s = k1 + k2
    return s * (s + 1) // 2 + k2


def cantor_unpair(z: int) -> tuple:
    """Inverse of cantor_pair, via the integer triangular root."""
    if z < 0:
        raise ValueError("cantor_unpair requires a nonnegative input")
    w = (math.isqrt(8 * z + 1) - 1) // 2
    k2 = z - w * (w + 1) // 2
    return (w - k2, k2)


def encode_symbol(code: int, prime: int) -> int:
    """Trapdoor-encode a symbol code with its prime: t = (n^3 - n)/6, n = code + prime.

    Exact integer arithmetic throughout; the division by 6 never truncates.
    """
    if code < 0:
        raise ValueError("symbol code must be nonnegative")
    if prime < 2:
        raise ValueError("prime must be at least 2")
    n = code + prime
    return (n - 1) * n * (n + 1) // 6


def integer_cube_root(n: int) -> int:
    """Largest integer r with r**3 <= n, for n >= 0. Exact bisection."""
    if n < 0:
        raise ValueError("integer_cube_root requires a nonnegative input")
    if n < 8:
        return 0 if n == 0 else 1
    lo = 0
    hi = 1 << (n.bit_length() // 3 + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid * mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo


def solve_depressed_cubic(t: int) -> int:
    """Unique integer n >= 2 with n^3 - n = 6t, by exact binary search.

    n^3 - n is strictly increasing on n >= 1, so at most one root exists in
    the bracket [2, cbrt(6t) + 2]. Raises NoIntegerRootError when the cubic
    has no integer solution there (corrupted or non-genuine t).
    """
    if t < 1:
        raise NoIntegerRootError("no integer n >= 2 satisfies n^3 - n = %d" % (6 * t))
    target = 6 * t
    lo = 2
    hi = integer_cube_root(target) + 2
    while lo <= hi:
        mid = (lo + hi) // 2
        value = mid * mid * mid - mid
        if value == target:
            return mid
        if value < target:
            lo = mid + 1
        else:
            hi = mid - 1
    raise NoIntegerRootError("no integer n >= 2 satisfies n^3 - n = %d" % target)


def decode_symbol(t: int, prime: int, max_code: int = ASCII_MAX) -> int:
    """Invert encode_symbol given the prime: solve for n, return x = n - prime.

    Raises CorruptValueError when t has no integer root structure at all,
    and SymbolRangeError when the recovered code falls outside
    [0, max_code], which is how a wrong prime (or tampered t) shows up.
    """
    if prime < 2:
        raise ValueError("prime must be at least 2")
    try:
        n = solve_depressed_cubic(t)
    except NoIntegerRootError as exc:
        raise CorruptValueError("value %d is not a valid encoding: %s" % (t, exc)) from exc
    code = n - prime
    if not 0 <= code <= max_code:
        raise SymbolRangeError(
            "decoded code %d is outside [0, %d] (wrong prime or corrupted value)"
            % (code, max_code)
        )
    return code


def consecutive_product_divisible(start: int, n: int) -> bool:
    """Whether (start)(start+1)...(start+n-1) is divisible by n.

    Always true (one of any n consecutive integers is a multiple of n);
    exposed as a directly checkable statement rather than an assumption.
    """
    if n < 1:
        raise ValueError("n must be positive")
    product = 1
    for i in range(n):
        product *= start + i
    return product % n == 0

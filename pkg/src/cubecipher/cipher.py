"""The block cipher pipeline: key material, blockification, and the
Fibonacci / rotation / key-matrix mixing chain with its exact inverse.

Encryption of one 2x2 block B of trapdoor-encoded values computes

    E = transpose(B @ Q^n @ R) @ K

where Q^n is the Fibonacci matrix for the key's index, R the quarter-turn
rotation, and K the invertible secret key matrix. Decryption undoes the
chain right to left with exact rational arithmetic (R is orthogonal, so
its inverse is its transpose; Q^n has determinant +-1, so its inverse is
integral; K inverse is rational in general) and then requires the result
to land back on integers, which is the earliest wrong-key detector.

Everything is per block: there is no mixing across blocks, a property the
analysis module measures and reports as the scheme's diffusion limit.

Messages are processed as their byte sequences. The default mode is strict
7-bit ASCII and rejects bytes above 127; byte mode widens the symbol range
to [0, 255] so arbitrary binary data round-trips.

This cipher is a linear map per block and is NOT secure for real use; see
the README and the analysis module's known-plaintext attack.
"""

from dataclasses import dataclass

from .encoding import ASCII_MAX, BYTE_MAX, decode_symbol, encode_symbol
from .errors import (
    CorruptCiphertextError,
    CorruptValueError,
    InvalidKeyError,
    NonIntegralResultError,
    SymbolRangeError,
)
from .matrices import (
    IntMatrix,
    fibonacci_q,
    inverse_exact,
    is_column_independent,
    rat_to_int_matrix,
    rotation,
)
from .primes import Xorshift64Star, prime_stream

__all__ = [
    "FORMAT_VERSION",
    "KeyMaterial",
    "CiphertextEnvelope",
    "keygen",
    "validate_key",
    "blockify",
    "deblockify",
    "encrypt_block",
    "decrypt_block",
    "encrypt",
    "decrypt",
]

FORMAT_VERSION = 1

BLOCK_SYMBOLS = 4  # each 2x2 block carries four encoded values

_MAX_U64 = (1 << 64) - 1
_KEYGEN_MAX_TRIES = 10**6
_KEYGEN_ENTRY_SPAN = 199  # entries drawn from [-99, 99]
_KEYGEN_FIB_SPAN = 40  # fib_index drawn from [1, 40]


@dataclass(frozen=True)
class KeyMaterial:
    """The composite private key.

    key_matrix: 2x2 invertible integer matrix (the mixing key K)
    fib_index: exponent of the Fibonacci matrix, at least 1
    quarter_turns: rotation count, stored mod 4
    prime_seed: unsigned 64-bit seed of the per-symbol prime stream

    All four fields are secret; decryption needs every one of them.
    Construction checks shapes and ranges only; value-level validity
    (invertibility, positive index) is validate_key's job so that invalid
    keys can be represented and diagnosed.
    """

    key_matrix: IntMatrix
    fib_index: int
    quarter_turns: int
    prime_seed: int

    def __post_init__(self):
        if not isinstance(self.key_matrix, IntMatrix):
            raise TypeError("key_matrix must be an IntMatrix")
        if (self.key_matrix.rows, self.key_matrix.cols) != (2, 2):
            raise ValueError("key_matrix must be 2x2")
        for name in ("fib_index", "quarter_turns", "prime_seed"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError("%s must be an int" % name)
        if not 0 <= self.prime_seed <= _MAX_U64:
            raise ValueError("prime_seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "quarter_turns", self.quarter_turns % 4)


@dataclass(frozen=True)
class CiphertextEnvelope:
    """Ordered ciphertext blocks plus framing: version and pad count.

    The original message length is 4 * len(blocks) - pad_count.
    """

    version: int
    pad_count: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not 0 <= self.pad_count < BLOCK_SYMBOLS:
            raise ValueError("pad_count must be in [0, 3]")
        if not blocks and self.pad_count != 0:
            raise ValueError("an empty envelope cannot carry padding")
        for b in blocks:
            if not isinstance(b, IntMatrix) or (b.rows, b.cols) != (2, 2):
                raise TypeError("envelope blocks must be 2x2 IntMatrix values")
        object.__setattr__(self, "blocks", blocks)

    @property
    def message_length(self):
        return BLOCK_SYMBOLS * len(self.blocks) - self.pad_count


def validate_key(key: KeyMaterial):
    """Check key material, returning (ok, problems).

    ok is True iff the key matrix is invertible and the Fibonacci index is
    at least 1; problems lists a message naming each failed check.
    """
    problems = []
    if key.key_matrix.det() == 0:
        problems.append("key matrix is singular (determinant 0), it has no inverse")
    if key.fib_index < 1:
        problems.append("fib_index must be at least 1, got %d" % key.fib_index)
    return (not problems, problems)


def _require_valid(key):
    ok, problems = validate_key(key)
    if not ok:
        raise InvalidKeyError("; ".join(problems))


def keygen(rng_seed: int) -> KeyMaterial:
    """Deterministically derive a valid key from a 64-bit seed.

    Draws 2x2 matrices with entries in [-99, 99] (row-major draw order)
    and rejects until the columns are independent, then draws fib_index
    from [1, 40], quarter_turns from [0, 3], and a fresh 64-bit prime
    seed, in that order. Same seed, same key, on every platform.
    """
    rng = Xorshift64Star(rng_seed)
    for _ in range(_KEYGEN_MAX_TRIES):
        entries = tuple(rng.below(_KEYGEN_ENTRY_SPAN) - 99 for _ in range(4))
        matrix = IntMatrix(2, 2, entries)
        if is_column_independent(matrix):
            break
    else:
        raise RuntimeError("keygen failed to find an invertible matrix in 10^6 draws")
    fib_index = rng.below(_KEYGEN_FIB_SPAN) + 1
    quarter_turns = rng.below(4)
    prime_seed = rng.next_u64()
    return KeyMaterial(matrix, fib_index, quarter_turns, prime_seed)


def blockify(ts):
    """Group encoded values into 2x2 blocks, row-major, zero-padding the tail.

    Returns (blocks, pad_count) with pad_count in [0, 3]. A genuine encoded
    value is always >= 1, so 0 never collides with real data.
    """
    ts = list(ts)
    for t in ts:
        if not isinstance(t, int) or isinstance(t, bool) or t < 0:
            raise ValueError("encoded values must be nonnegative ints, got %r" % (t,))
    pad_count = (-len(ts)) % BLOCK_SYMBOLS
    ts.extend([0] * pad_count)
    blocks = [
        IntMatrix(2, 2, tuple(ts[i : i + BLOCK_SYMBOLS]))
        for i in range(0, len(ts), BLOCK_SYMBOLS)
    ]
    return blocks, pad_count


def deblockify(blocks, pad_count: int):
    """Inverse of blockify; checks that every stripped pad slot is exactly 0.

    A nonzero value in a pad position means the ciphertext was tampered
    with or decrypted under the wrong key, and raises
    CorruptCiphertextError naming the offending block.
    """
    blocks = list(blocks)
    if not 0 <= pad_count < BLOCK_SYMBOLS:
        raise ValueError("pad_count must be in [0, 3]")
    if not blocks:
        if pad_count != 0:
            raise ValueError("no blocks to strip padding from")
        return []
    flat = [e for b in blocks for e in b.entries]
    if pad_count:
        for offset, value in enumerate(flat[-pad_count:]):
            if value != 0:
                position = len(flat) - pad_count + offset
                raise CorruptCiphertextError(
                    "pad slot %d in block %d holds %d, expected 0"
                    % (position % BLOCK_SYMBOLS, position // BLOCK_SYMBOLS, value)
                )
        del flat[-pad_count:]
    return flat


def _encrypt_one(block, q, r, kmat):
    return (block @ q @ r).transpose() @ kmat


def _decrypt_one(block, k_inv, r_t, q_inv):
    product = (block.to_rational() @ k_inv).transpose() @ r_t @ q_inv
    return rat_to_int_matrix(product)


def _mixers(key):
    return fibonacci_q(key.fib_index), rotation(key.quarter_turns)


def _inverse_mixers(key):
    q, r = _mixers(key)
    # R is orthogonal, so transposing it is the exact inverse.
    return inverse_exact(key.key_matrix), r.transpose().to_rational(), inverse_exact(q)


def encrypt_block(block: IntMatrix, key: KeyMaterial) -> IntMatrix:
    """Encrypt one 2x2 block: transpose(block @ Q^n @ R) @ K, all exact."""
    _require_valid(key)
    q, r = _mixers(key)
    return _encrypt_one(block, q, r, key.key_matrix)


def decrypt_block(block: IntMatrix, key: KeyMaterial) -> IntMatrix:
    """Invert encrypt_block; raises NonIntegralResultError under a wrong key."""
    _require_valid(key)
    k_inv, r_t, q_inv = _inverse_mixers(key)
    return _decrypt_one(block, k_inv, r_t, q_inv)


def encrypt(message: bytes, key: KeyMaterial, byte_mode: bool = False) -> CiphertextEnvelope:
    """Encrypt a byte string under the composite key.

    Strict mode (the default) rejects bytes above 127 and names the first
    offending index; byte mode accepts the full [0, 255] range. One prime
    is drawn per byte position from the key's seeded stream.
    """
    if isinstance(message, str):
        raise TypeError("encrypt takes bytes; encode the string first")
    message = bytes(message)
    _require_valid(key)
    if not byte_mode:
        for i, b in enumerate(message):
            if b > ASCII_MAX:
                raise SymbolRangeError(
                    "byte 0x%02x at index %d is not 7-bit ASCII; enable byte mode"
                    % (b, i)
                )
    primes = prime_stream(key.prime_seed, len(message))
    ts = [encode_symbol(b, p) for b, p in zip(message, primes)]
    blocks, pad_count = blockify(ts)
    q, r = _mixers(key)
    encrypted = tuple(_encrypt_one(b, q, r, key.key_matrix) for b in blocks)
    return CiphertextEnvelope(FORMAT_VERSION, pad_count, encrypted)


def decrypt(envelope: CiphertextEnvelope, key: KeyMaterial, byte_mode: bool = False) -> bytes:
    """Invert encrypt. Errors name the failing block or symbol index.

    Raises NonIntegralResultError (wrong key), CorruptCiphertextError
    (framing or padding damage), CorruptValueError or SymbolRangeError
    (per-symbol decode failure).
    """
    _require_valid(key)
    if envelope.version != FORMAT_VERSION:
        raise CorruptCiphertextError(
            "unsupported ciphertext version %r" % (envelope.version,)
        )
    k_inv, r_t, q_inv = _inverse_mixers(key)
    plain_blocks = []
    for i, block in enumerate(envelope.blocks):
        try:
            plain_blocks.append(_decrypt_one(block, k_inv, r_t, q_inv))
        except NonIntegralResultError as exc:
            raise NonIntegralResultError("block %d: %s" % (i, exc)) from None
    ts = deblockify(plain_blocks, envelope.pad_count)
    primes = prime_stream(key.prime_seed, len(ts))
    max_code = BYTE_MAX if byte_mode else ASCII_MAX
    out = bytearray()
    for i, (t, p) in enumerate(zip(ts, primes)):
        try:
            out.append(decode_symbol(t, p, max_code))
        except CorruptValueError as exc:
            raise CorruptValueError("symbol %d: %s" % (i, exc)) from None
        except SymbolRangeError as exc:
            raise SymbolRangeError("symbol %d: %s" % (i, exc)) from None
    return bytes(out)

"""Cryptanalysis harness: avalanche measurement, known-plaintext recovery
of the composite linear layer, and runtime scaling measurements.

The block pipeline is linear in the block entries: with vec() flattening a
2x2 block row-major,

    vec(E) = M @ vec(B)

for a fixed 4x4 integer matrix M determined entirely by the key's three
mixing matrices. Four plaintext/ciphertext block pairs whose vec(B)
vectors span all of Q^4 therefore determine M exactly, and with it every
future block's encryption and (via M inverse) decryption to the encoded
t-values, all without learning the key matrix, Fibonacci index, or
rotation count individually. Recovering the plaintext characters from
those t-values still needs the prime stream, which is the one non-linear
piece of key material the attack does not touch.

The avalanche harness quantifies the flip side of per-block linearity:
a single changed character can never influence any block but its own.
"""

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import median

from .cipher import (
    BLOCK_SYMBOLS,
    FORMAT_VERSION,
    decrypt,
    encrypt,
    validate_key,
)
from .errors import InsufficientPairsError, InvalidKeyError
from .formats import dumps_canonical, serialize_ciphertext
from .matrices import IntMatrix, RatMatrix, rank, rat_to_int_matrix
from .primes import Xorshift64Star

__all__ = [
    "AvalancheReport",
    "AttackResult",
    "BenchRow",
    "BenchReport",
    "avalanche_test",
    "known_plaintext_attack",
    "apply_composite",
    "benchmark",
    "growth_exponent",
]


def _require_valid(key):
    ok, problems = validate_key(key)
    if not ok:
        raise InvalidKeyError("; ".join(problems))


def _bit_difference_fraction(a: bytes, b: bytes) -> Fraction:
    """Fraction of differing bits between two byte strings.

    The shorter string is zero-padded to the longer length, so the result
    is always in [0, 1] and well defined even when serializations differ
    in length (decimal entry widths vary).
    """
    n = max(len(a), len(b))
    if n == 0:
        return Fraction(0)
    a = a.ljust(n, b"\x00")
    b = b.ljust(n, b"\x00")
    differing = sum(bin(x ^ y).count("1") for x, y in zip(a, b))
    return Fraction(differing, 8 * n)


@dataclass
class AvalancheReport:
    """Outcome of single-character-flip trials against one key.

    locality_histogram maps "number of ciphertext blocks changed" to the
    count of trials with that spread; its counts sum to trials. finding is
    a human-readable label of the measured diffusion behaviour.
    """

    trials: int
    message_length: int
    mean_changed_block_fraction: Fraction
    mean_changed_bit_fraction: Fraction
    locality_histogram: dict
    finding: str = ""

    def to_json_text(self) -> str:
        return dumps_canonical(
            {
                "version": FORMAT_VERSION,
                "trials": self.trials,
                "message_length": self.message_length,
                "mean_changed_block_fraction": str(self.mean_changed_block_fraction),
                "mean_changed_bit_fraction": str(self.mean_changed_bit_fraction),
                "locality_histogram": {
                    str(k): self.locality_histogram[k]
                    for k in sorted(self.locality_histogram)
                },
                "finding": self.finding,
            }
        )

    def to_csv_text(self) -> str:
        """Flat table of the locality histogram: changed_blocks,count."""
        lines = ["changed_blocks,count"]
        for k in sorted(self.locality_histogram):
            lines.append("%d,%d" % (k, self.locality_histogram[k]))
        return "\n".join(lines) + "\n"


def avalanche_test(key, message_length: int, trials: int, rng_seed: int) -> AvalancheReport:
    """Flip one character per trial and measure how far the change spreads.

    Each trial draws a random ASCII message of the given length, changes
    one position to a different ASCII value, encrypts both under the same
    key, and records the number of ciphertext blocks that differ plus the
    fraction of differing bits over the canonical serializations.
    Deterministic given (key, message_length, trials, rng_seed).
    """
    if message_length < 1:
        raise ValueError("message_length must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    _require_valid(key)
    rng = Xorshift64Star(rng_seed)
    histogram = Counter()
    block_fraction_sum = Fraction(0)
    bit_fraction_sum = Fraction(0)
    total_blocks = -(-message_length // BLOCK_SYMBOLS)
    for _ in range(trials):
        message = bytes(rng.below(128) for _ in range(message_length))
        position = rng.below(message_length)
        bump = 1 + rng.below(127)  # never maps a byte to itself
        flipped = bytearray(message)
        flipped[position] = (flipped[position] + bump) % 128
        env_a = encrypt(message, key)
        env_b = encrypt(bytes(flipped), key)
        changed = sum(1 for x, y in zip(env_a.blocks, env_b.blocks) if x != y)
        histogram[changed] += 1
        block_fraction_sum += Fraction(changed, total_blocks)
        bit_fraction_sum += _bit_difference_fraction(
            serialize_ciphertext(env_a).encode(), serialize_ciphertext(env_b).encode()
        )
    max_spread = max(histogram)
    if max_spread <= 1:
        finding = (
            "every single-character change stayed inside its own 2x2 block; "
            "this is the measured deviation from the full-diffusion ideal, "
            "under which one changed character should unpredictably alter "
            "the entire ciphertext"
        )
    else:
        finding = (
            "single-character changes touched at most %d blocks" % max_spread
        )
    return AvalancheReport(
        trials=trials,
        message_length=message_length,
        mean_changed_block_fraction=block_fraction_sum / trials,
        mean_changed_bit_fraction=bit_fraction_sum / trials,
        locality_histogram=dict(histogram),
        finding=finding,
    )


@dataclass
class AttackResult:
    """A recovered composite linear map and its verification status.

    composite_map acts on row-major flattened blocks: vec(E) = map @ vec(B).
    verified is True iff the map reproduces every supplied pair exactly.
    """

    composite_map: RatMatrix
    pairs_used: int
    verified: bool

    def to_json_text(self) -> str:
        return dumps_canonical(
            {
                "version": FORMAT_VERSION,
                "pairs_used": self.pairs_used,
                "verified": self.verified,
                "composite_map": [
                    [str(e) for e in self.composite_map.row(i)]
                    for i in range(self.composite_map.rows)
                ],
            }
        )


def _vec_column(block: IntMatrix) -> tuple:
    return block.entries  # row-major flattening


def known_plaintext_attack(pairs) -> AttackResult:
    """Recover the composite 4x4 map from plaintext/ciphertext block pairs.

    Needs at least four pairs whose flattened plaintext blocks span a
    4-dimensional space; solves for the map with exact rational Gaussian
    elimination and then checks it against every supplied pair. Raises
    InsufficientPairsError (carrying the achieved rank) when the pairs
    cannot pin the map down.
    """
    pairs = list(pairs)
    for plain, cipher in pairs:
        for m in (plain, cipher):
            if not isinstance(m, IntMatrix) or (m.rows, m.cols) != (2, 2):
                raise TypeError("attack pairs must be 2x2 IntMatrix values")

    # Greedily pick pairs whose plaintext vectors extend the span.
    chosen = []
    for pair in pairs:
        candidate = chosen + [pair]
        spans = IntMatrix(
            4,
            len(candidate),
            tuple(
                _vec_column(candidate[c][0])[r]
                for r in range(4)
                for c in range(len(candidate))
            ),
        )
        if rank(spans) == len(candidate):
            chosen.append(pair)
            if len(chosen) == 4:
                break
    if len(chosen) < 4:
        raise InsufficientPairsError(
            "plaintext blocks only span a rank-%d space; rank 4 is required"
            % len(chosen),
            rank=len(chosen),
        )

    plain_cols = IntMatrix(
        4, 4, tuple(_vec_column(chosen[c][0])[r] for r in range(4) for c in range(4))
    )
    cipher_cols = IntMatrix(
        4, 4, tuple(_vec_column(chosen[c][1])[r] for r in range(4) for c in range(4))
    )
    composite = cipher_cols.to_rational() @ plain_cols.to_rational().inverse()

    verified = True
    for plain, cipher in pairs:
        got = composite @ RatMatrix(4, 1, _vec_column(plain))
        if got != RatMatrix(4, 1, _vec_column(cipher)):
            verified = False
            break
    return AttackResult(composite_map=composite, pairs_used=len(pairs), verified=verified)


def apply_composite(composite: RatMatrix, block: IntMatrix) -> IntMatrix:
    """Apply a 4x4 composite map to a 2x2 block, requiring an integral result."""
    if (composite.rows, composite.cols) != (4, 4):
        raise ValueError("composite map must be 4x4")
    if (block.rows, block.cols) != (2, 2):
        raise ValueError("block must be 2x2")
    result = composite @ RatMatrix(4, 1, _vec_column(block))
    as_int = rat_to_int_matrix(result)
    return IntMatrix(2, 2, as_int.entries)


@dataclass
class BenchRow:
    message_length: int
    encrypt_seconds: float
    decrypt_seconds: float
    ciphertext_bytes: int


@dataclass
class BenchReport:
    """Median-of-repetitions wall times per message length."""

    repetitions: int
    rows: list = field(default_factory=list)

    def to_json_text(self) -> str:
        return dumps_canonical(
            {
                "version": FORMAT_VERSION,
                "repetitions": self.repetitions,
                "rows": [
                    {
                        "message_length": r.message_length,
                        "encrypt_seconds": r.encrypt_seconds,
                        "decrypt_seconds": r.decrypt_seconds,
                        "ciphertext_bytes": r.ciphertext_bytes,
                    }
                    for r in self.rows
                ],
            }
        )

    def to_csv_text(self) -> str:
        lines = ["message_length,encrypt_seconds,decrypt_seconds,ciphertext_bytes"]
        for r in self.rows:
            lines.append(
                "%d,%.9f,%.9f,%d"
                % (r.message_length, r.encrypt_seconds, r.decrypt_seconds, r.ciphertext_bytes)
            )
        return "\n".join(lines) + "\n"


def benchmark(lengths, key, repetitions: int, rng_seed: int = 0) -> BenchReport:
    """Measure encrypt/decrypt wall time and ciphertext size per length.

    lengths must be strictly increasing. Message contents are drawn
    deterministically from rng_seed; the timing fields are the only
    machine-dependent part of the report.
    """
    lengths = list(lengths)
    if not lengths:
        raise ValueError("lengths must be non-empty")
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ValueError("lengths must be strictly increasing")
    if lengths[0] < 1:
        raise ValueError("lengths must be positive")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    _require_valid(key)
    rng = Xorshift64Star(rng_seed)
    report = BenchReport(repetitions=repetitions)
    for length in lengths:
        message = bytes(rng.below(128) for _ in range(length))
        encrypt_times = []
        envelope = None
        for _ in range(repetitions):
            start = time.perf_counter()
            envelope = encrypt(message, key)
            encrypt_times.append(time.perf_counter() - start)
        decrypt_times = []
        for _ in range(repetitions):
            start = time.perf_counter()
            recovered = decrypt(envelope, key)
            decrypt_times.append(time.perf_counter() - start)
        if recovered != message:
            raise RuntimeError("benchmark round trip produced a different message")
        report.rows.append(
            BenchRow(
                message_length=length,
                encrypt_seconds=median(encrypt_times),
                decrypt_seconds=median(decrypt_times),
                ciphertext_bytes=len(serialize_ciphertext(envelope).encode()),
            )
        )
    return report


def growth_exponent(report: BenchReport, which: str = "encrypt") -> float:
    """Least-squares slope of log(time) against log(length).

    A pipeline linear in the block count should land near 1.0; anything
    clearly below 2.0 rules out quadratic-or-worse growth over the
    measured range.
    """
    if which not in ("encrypt", "decrypt"):
        raise ValueError("which must be 'encrypt' or 'decrypt'")
    rows = report.rows
    if len(rows) < 2:
        raise ValueError("need at least two rows to fit a growth exponent")
    xs = [math.log(r.message_length) for r in rows]
    ys = [math.log(max(getattr(r, which + "_seconds"), 1e-9)) for r in rows]
    x_mean = sum(xs) / len(xs)
    y_mean = sum(ys) / len(ys)
    covariance = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    variance = sum((x - x_mean) ** 2 for x in xs)
    return covariance / variance

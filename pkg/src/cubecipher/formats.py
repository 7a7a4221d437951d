"""On-disk formats: key files, ciphertext files, and attack pair files.

All three are UTF-8 JSON with LF line endings, two-space indentation, a
fixed field order, and one trailing newline, so serializing the same data
twice is byte-identical on every platform. Integers that can outgrow 64
bits (and, in the key file, every integer field except the version tag)
are written as canonical decimal strings: optional minus sign, no leading
zeros, no "-0".

Key file:
    {"version": 1, "k": [4 decimal strings, row-major],
     "fib_index": str, "quarter_turns": str, "prime_seed": str}

Ciphertext file:
    {"version": 1, "pad_count": 0..3,
     "blocks": [[4 decimal strings, row-major per 2x2 block], ...]}

Pair file (known-plaintext attack input):
    {"version": 1, "pairs": [{"plaintext": [4 decimal strings],
                              "ciphertext": [4 decimal strings]}, ...]}

Parsers are strict: unknown or missing fields, non-canonical numbers, and
version mismatches all raise FormatError.
"""

import json
import re

from .cipher import FORMAT_VERSION, CiphertextEnvelope, KeyMaterial
from .errors import FormatError
from .matrices import IntMatrix

__all__ = [
    "serialize_key",
    "parse_key",
    "serialize_ciphertext",
    "parse_ciphertext",
    "serialize_pairs",
    "parse_pairs",
    "dumps_canonical",
]

_DECIMAL_RE = re.compile(r"(0|-?[1-9][0-9]*)\Z")

_MAX_U64 = (1 << 64) - 1


def dumps_canonical(obj) -> str:
    """Render JSON in the canonical form shared by every file this writes."""
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _load_json(text: str, what: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("%s: not valid JSON (%s)" % (what, exc)) from None
    if not isinstance(obj, dict):
        raise FormatError("%s: top-level value must be an object" % what)
    return obj


def _expect_fields(obj, fields, what):
    have = set(obj)
    want = set(fields)
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        parts = []
        if missing:
            parts.append("missing %s" % ", ".join(missing))
        if extra:
            parts.append("unexpected %s" % ", ".join(extra))
        raise FormatError("%s: %s" % (what, "; ".join(parts)))


def _expect_version(value, what):
    if value != FORMAT_VERSION:
        raise FormatError("%s: unsupported version %r" % (what, value))


def _parse_decimal(value, what):
    if not isinstance(value, str) or not _DECIMAL_RE.match(value):
        raise FormatError("%s must be a canonical decimal string, got %r" % (what, value))
    return int(value)


def _parse_block_entries(value, what):
    if not isinstance(value, list) or len(value) != 4:
        raise FormatError("%s must be a list of 4 decimal strings" % what)
    return tuple(_parse_decimal(v, "%s[%d]" % (what, i)) for i, v in enumerate(value))


def serialize_key(key: KeyMaterial) -> str:
    obj = {
        "version": FORMAT_VERSION,
        "k": [str(e) for e in key.key_matrix.entries],
        "fib_index": str(key.fib_index),
        "quarter_turns": str(key.quarter_turns),
        "prime_seed": str(key.prime_seed),
    }
    return dumps_canonical(obj)


def parse_key(text: str) -> KeyMaterial:
    obj = _load_json(text, "key file")
    _expect_fields(obj, ("version", "k", "fib_index", "quarter_turns", "prime_seed"), "key file")
    _expect_version(obj["version"], "key file")
    entries = _parse_block_entries(obj["k"], "key file: k")
    fib_index = _parse_decimal(obj["fib_index"], "key file: fib_index")
    quarter_turns = _parse_decimal(obj["quarter_turns"], "key file: quarter_turns")
    if not 0 <= quarter_turns <= 3:
        raise FormatError("key file: quarter_turns must be in [0, 3], got %d" % quarter_turns)
    prime_seed = _parse_decimal(obj["prime_seed"], "key file: prime_seed")
    if not 0 <= prime_seed <= _MAX_U64:
        raise FormatError("key file: prime_seed must fit in 64 unsigned bits")
    return KeyMaterial(IntMatrix(2, 2, entries), fib_index, quarter_turns, prime_seed)


def serialize_ciphertext(envelope: CiphertextEnvelope) -> str:
    obj = {
        "version": envelope.version,
        "pad_count": envelope.pad_count,
        "blocks": [[str(e) for e in b.entries] for b in envelope.blocks],
    }
    return dumps_canonical(obj)


def parse_ciphertext(text: str) -> CiphertextEnvelope:
    obj = _load_json(text, "ciphertext file")
    _expect_fields(obj, ("version", "pad_count", "blocks"), "ciphertext file")
    _expect_version(obj["version"], "ciphertext file")
    pad_count = obj["pad_count"]
    if not isinstance(pad_count, int) or isinstance(pad_count, bool) or not 0 <= pad_count <= 3:
        raise FormatError("ciphertext file: pad_count must be an integer in [0, 3]")
    blocks_raw = obj["blocks"]
    if not isinstance(blocks_raw, list):
        raise FormatError("ciphertext file: blocks must be a list")
    if not blocks_raw and pad_count != 0:
        raise FormatError("ciphertext file: an empty block list cannot carry padding")
    blocks = tuple(
        IntMatrix(2, 2, _parse_block_entries(raw, "ciphertext file: blocks[%d]" % i))
        for i, raw in enumerate(blocks_raw)
    )
    return CiphertextEnvelope(FORMAT_VERSION, pad_count, blocks)


def serialize_pairs(pairs) -> str:
    """Write (plaintext block, ciphertext block) pairs for the attack tool."""
    rows = []
    for plain, cipher in pairs:
        rows.append(
            {
                "plaintext": [str(e) for e in plain.entries],
                "ciphertext": [str(e) for e in cipher.entries],
            }
        )
    return dumps_canonical({"version": FORMAT_VERSION, "pairs": rows})


def parse_pairs(text: str):
    obj = _load_json(text, "pair file")
    _expect_fields(obj, ("version", "pairs"), "pair file")
    _expect_version(obj["version"], "pair file")
    raw_pairs = obj["pairs"]
    if not isinstance(raw_pairs, list):
        raise FormatError("pair file: pairs must be a list")
    pairs = []
    for i, raw in enumerate(raw_pairs):
        if not isinstance(raw, dict):
            raise FormatError("pair file: pairs[%d] must be an object" % i)
        _expect_fields(raw, ("plaintext", "ciphertext"), "pair file: pairs[%d]" % i)
        plain = IntMatrix(2, 2, _parse_block_entries(raw["plaintext"], "pair file: pairs[%d].plaintext" % i))
        cipher = IntMatrix(2, 2, _parse_block_entries(raw["ciphertext"], "pair file: pairs[%d].ciphertext" % i))
        pairs.append((plain, cipher))
    return pairs

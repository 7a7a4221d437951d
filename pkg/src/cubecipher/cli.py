"""Command-line front end.

Subcommands: keygen, encrypt, decrypt, attack, avalanche, bench. File
formats are the canonical JSON formats from the formats module. The path
"-" means stdin/stdout for encrypt and decrypt payloads. Output files are
written atomically (temp file then rename), so a failing run never leaves
a partial file behind.

Exit codes:
    0  success
    2  bad arguments or unusable input data
    3  invalid or malformed key
    4  corrupt ciphertext or wrong key
    5  I/O failure
"""

import argparse
import os
import sys
import tempfile

from .analysis import avalanche_test, benchmark, known_plaintext_attack
from .cipher import decrypt, encrypt, keygen
from .errors import (
    CipherError,
    CorruptCiphertextError,
    CorruptValueError,
    FormatError,
    InsufficientPairsError,
    InvalidKeyError,
    NonIntegralResultError,
    SingularMatrixError,
    SymbolRangeError,
)
from .formats import (
    parse_ciphertext,
    parse_key,
    parse_pairs,
    serialize_ciphertext,
    serialize_key,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_KEY = 3
EXIT_BAD_DATA = 4
EXIT_IO = 5

_MAX_U64 = (1 << 64) - 1


class _UsageError(Exception):
    pass


def _parse_seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer")
    if not 0 <= value <= _MAX_U64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _parse_lengths(text):
    try:
        lengths = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("lengths must be comma-separated integers")
    if not lengths:
        raise argparse.ArgumentTypeError("lengths must not be empty")
    return lengths


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubecipher",
        description="Exact-arithmetic educational block cipher and analysis tools. "
        "Not secure for real use: the per-block layer is linear.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="derive a key file from a 64-bit seed")
    p.add_argument("--seed", type=_parse_seed, required=True,
                   help="64-bit unsigned seed; same seed gives the same key")
    p.add_argument("--out", required=True, help="key file to write")

    p = sub.add_parser("encrypt", help="encrypt a message file")
    p.add_argument("--key", required=True, help="key file")
    p.add_argument("--in", dest="input", required=True, help="plaintext file, or - for stdin")
    p.add_argument("--out", required=True, help="ciphertext file, or - for stdout")
    p.add_argument("--byte-mode", action="store_true",
                   help="accept all byte values, not just 7-bit ASCII")

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--key", required=True, help="key file")
    p.add_argument("--in", dest="input", required=True, help="ciphertext file, or - for stdin")
    p.add_argument("--out", required=True, help="plaintext file, or - for stdout")
    p.add_argument("--byte-mode", action="store_true",
                   help="accept decoded byte values above 127")

    p = sub.add_parser("attack", help="recover the composite linear map from known pairs")
    p.add_argument("--pairs", required=True, help="pair file (plaintext/ciphertext blocks)")
    p.add_argument("--out", help="write the result JSON here instead of stdout")

    p = sub.add_parser("avalanche", help="measure single-character diffusion under a key")
    p.add_argument("--key", required=True, help="key file")
    p.add_argument("--length", type=int, default=40, help="message length (default 40)")
    p.add_argument("--trials", type=int, default=1000, help="number of trials (default 1000)")
    p.add_argument("--seed", type=_parse_seed, default=0, help="trial RNG seed (default 0)")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    p.add_argument("--csv", help="also write the locality histogram as CSV")

    p = sub.add_parser("bench", help="measure encrypt/decrypt wall time per length")
    p.add_argument("--key", required=True, help="key file")
    p.add_argument("--lengths", type=_parse_lengths, default=[64, 128, 256, 512, 1024],
                   help="comma-separated message lengths (default 64,128,256,512,1024)")
    p.add_argument("--repetitions", type=int, default=5,
                   help="repetitions per length, median reported (default 5)")
    p.add_argument("--seed", type=_parse_seed, default=0, help="message RNG seed (default 0)")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    p.add_argument("--csv", help="also write the measurement table as CSV")
    return parser


def _read_bytes(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _read_text(path, what):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except UnicodeDecodeError:
        raise FormatError("%s: not valid UTF-8" % what)


def _write_atomic(path, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".cubecipher-", dir=directory)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _load_key(path):
    try:
        return parse_key(_read_text(path, "key file"))
    except FormatError as exc:
        raise InvalidKeyError(str(exc)) from None


def _emit_report(text, out_path):
    if out_path:
        _write_atomic(out_path, text.encode())
    else:
        sys.stdout.write(text)


def _cmd_keygen(args):
    key = keygen(args.seed)
    _write_atomic(args.out, serialize_key(key).encode())
    return EXIT_OK


def _cmd_encrypt(args):
    key = _load_key(args.key)
    message = _read_bytes(args.input)
    try:
        envelope = encrypt(message, key, byte_mode=args.byte_mode)
    except SymbolRangeError as exc:
        # A non-ASCII input in strict mode is a usage problem, not damage.
        raise _UsageError("%s" % exc) from None
    _write_atomic(args.out, serialize_ciphertext(envelope).encode())
    return EXIT_OK


def _cmd_decrypt(args):
    key = _load_key(args.key)
    envelope = parse_ciphertext(_read_text(args.input, "ciphertext file"))
    message = decrypt(envelope, key, byte_mode=args.byte_mode)
    _write_atomic(args.out, message)
    return EXIT_OK


def _cmd_attack(args):
    pairs = parse_pairs(_read_text(args.pairs, "pair file"))
    result = known_plaintext_attack(pairs)
    _emit_report(result.to_json_text(), args.out)
    return EXIT_OK


def _cmd_avalanche(args):
    key = _load_key(args.key)
    report = avalanche_test(key, args.length, args.trials, args.seed)
    if args.csv:
        _write_atomic(args.csv, report.to_csv_text().encode())
    _emit_report(report.to_json_text(), args.out)
    return EXIT_OK


def _cmd_bench(args):
    key = _load_key(args.key)
    report = benchmark(args.lengths, key, args.repetitions, rng_seed=args.seed)
    if args.csv:
        _write_atomic(args.csv, report.to_csv_text().encode())
    _emit_report(report.to_json_text(), args.out)
    return EXIT_OK


_COMMANDS = {
    "keygen": _cmd_keygen,
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "attack": _cmd_attack,
    "avalanche": _cmd_avalanche,
    "bench": _cmd_bench,
}


def _fail(message, code):
    print("cubecipher: error: %s" % message, file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        return handler(args)
    except _UsageError as exc:
        return _fail(exc, EXIT_USAGE)
    except InsufficientPairsError as exc:
        return _fail(exc, EXIT_USAGE)
    except (InvalidKeyError, SingularMatrixError) as exc:
        return _fail(exc, EXIT_BAD_KEY)
    except (
        CorruptCiphertextError,
        NonIntegralResultError,
        CorruptValueError,
        SymbolRangeError,
        FormatError,
    ) as exc:
        return _fail(exc, EXIT_BAD_DATA)
    except CipherError as exc:
        return _fail(exc, EXIT_BAD_DATA)
    except ValueError as exc:
        return _fail(exc, EXIT_USAGE)
    except OSError as exc:
        return _fail(exc, EXIT_IO)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success (or MARKED / PASS), 1 NOT-MARKED / FAIL, 2 usage error,
3 I/O or file-format error, 4 contract violation (empty LSC set, size
mismatch, capacity limits, generation failure).
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile

from .bitcore import bits_to_bytes
from .errors import DhciError, FormatError
from .media import bits_to_image, image_to_bits, read_message, read_pgm, write_pgm
from .modes import BUILTIN_MODES, generate_valid_mode, load_mode, save_mode
from .watermark import EmbeddingParams, compute_watermark, dhci_check, dhci_embed

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO, EXIT_CONTRACT = 0, 1, 2, 3, 4


class InputError(Exception):
    """Wraps failures that stem from reading or parsing an input file."""


def hex_key(text):
    try:
        key = bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"key must be hexadecimal bytes, got {text!r}") from None
    if not key:
        raise argparse.ArgumentTypeError("key must not be empty")
    return key


def _load(fn, *args):
    try:
        return fn(*args)
    except (OSError, FormatError, DhciError) as exc:
        raise InputError(str(exc)) from exc


def resolve_mode(spec):
    if spec in BUILTIN_MODES:
        return BUILTIN_MODES[spec]
    return _load(load_mode, spec)


def _message_bits(path):
    if path is None:
        return ()
    return _load(read_message, path)


def _params(args, tau=None):
    extra = {} if tau is None else {"tau": tau}
    return EmbeddingParams(key=args.key, mode=resolve_mode(args.mode), m=args.m, M=args.M, q=args.q, **extra)


def _write_atomic(path, write):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dhci-")
    os.close(fd)
    try:
        write(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(doc):
    print(json.dumps(doc, sort_keys=True))


def cmd_embed(args):
    params = _params(args)
    cover = _load(read_pgm, args.cover)
    y = _message_bits(args.message)
    x = image_to_bits(cover)
    watermark = compute_watermark(x, y, params)
    stego = bits_to_image(dhci_embed(x, y, params), cover.width, cover.height)
    _write_atomic(args.out, lambda p: write_pgm(stego, p))
    digest = hashlib.sha256(bits_to_bytes(watermark)).hexdigest()
    _emit({"l": int(watermark.size), "watermark_sha256": digest, "out": args.out})
    print(f"embedded into {len(watermark)} LSC bits -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args):
    params = _params(args, tau=args.tau)
    cover = _load(read_pgm, args.cover)
    candidate = _load(read_pgm, args.candidate)
    y = _message_bits(args.message)
    if (cover.width, cover.height) != (candidate.width, candidate.height):
        print(
            f"error: candidate is {candidate.width}x{candidate.height}, cover is {cover.width}x{cover.height}",
            file=sys.stderr,
        )
        return EXIT_CONTRACT
    similarity, marked = dhci_check(image_to_bits(cover), image_to_bits(candidate), y, params)
    print(f"{similarity:.6f} {'MARKED' if marked else 'NOT-MARKED'}")
    return EXIT_OK if marked else EXIT_NEGATIVE


def cmd_mode_gen(args):
    mode = generate_valid_mode(args.n, args.seed)
    _write_atomic(args.out, lambda p: save_mode(mode, p))
    _emit({"n": args.n, "seed": args.seed, "tries": mode.tries, "out": args.out})
    print(f"valid mode found after {mode.tries} tries", file=sys.stderr)
    return EXIT_OK


def _mode_at(args, size):
    mode = resolve_mode(args.mode)
    if size is None:
        size = getattr(mode, "n", None)
        if size is None:
            raise argparse.ArgumentTypeError(f"--mode {args.mode} needs an explicit size")
    return mode.instantiate(size)


def cmd_mode_analyze(args):
    from .analysis import full_report

    f = _mode_at(args, args.n)
    report = full_report(
        f,
        epsilon=args.epsilon,
        t_max=args.t_max,
        key=args.key,
        y=_message_bits(args.message),
        q=args.q,
        samples=args.samples,
        sampler_seed=args.seed,
        name=args.mode,
    )
    _emit(report.to_dict())
    verdict = "chaos-secure" if report.chaos_secure else "not chaos-secure"
    print(f"{args.mode} (n={f.n}): {verdict}, primitive={report.primitive}", file=sys.stderr)
    return EXIT_OK


def cmd_uniformity(args):
    from .analysis import uniformity_experiment

    mode = resolve_mode(args.mode)
    result = uniformity_experiment(
        mode, args.l, args.key, _message_bits(args.message), args.q, args.samples, args.seed
    )
    verdict = "PASS" if result.passed else "FAIL"
    _emit({"chi2": result.chi2, "dof": result.dof, "critical": result.critical, "result": verdict})
    print(f"chi2={result.chi2:.2f} dof={result.dof} critical={result.critical:.2f} {verdict}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_NEGATIVE


def build_parser():
    parser = argparse.ArgumentParser(prog="dhci", description="dhCI information hiding and mode analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_flags(p):
        p.add_argument("--cover", required=True)
        p.add_argument("--message", required=True, help="raw message file")
        p.add_argument("--key", required=True, type=hex_key, help="embedding key as hex bytes")
        p.add_argument("--mode", default="negation", help="builtin name (negation, identity, zero) or mode file")
        p.add_argument("--m", type=float, default=2.0, help="LSC threshold (default 2)")
        p.add_argument("--M", type=float, default=6.0, help="MSC threshold (default 6)")
        p.add_argument("--q", type=int, default=17, help="iterations (default 17)")

    p = sub.add_parser("embed", help="hide a message in a PGM cover")
    scheme_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("check", help="decide whether a candidate is marked")
    scheme_flags(p)
    p.add_argument("--candidate", required=True)
    p.add_argument("--tau", type=float, default=0.95, help="similarity threshold (default 0.95)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mode", help="generate or analyze modes")
    mode_sub = p.add_subparsers(dest="action", required=True)
    g = mode_sub.add_parser("gen", help="generate a strongly connected, primitive xor-mode")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_mode_gen)

    a = mode_sub.add_parser("analyze", help="print the security report as JSON")
    a.add_argument("--mode", required=True)
    a.add_argument("--n", type=int, help="size for builtin modes")
    a.add_argument("--epsilon", type=float, default=0.01)
    a.add_argument("--t-max", type=int, help="mixing horizon (default 4^n)")
    a.add_argument("--key", type=hex_key, default=b"\x00")
    a.add_argument("--message")
    a.add_argument("--q", type=int, default=17)
    a.add_argument("--samples", type=int, help="chi-square samples (default 100 * 2^n)")
    a.add_argument("--seed", type=int, default=1, help="sampler seed")
    a.set_defaults(func=cmd_mode_analyze)

    u = sub.add_parser("uniformity", help="chi-square test of keyed iterations on uniform inputs")
    u.add_argument("--mode", required=True)
    u.add_argument("--l", type=int, required=True)
    u.add_argument("--key", type=hex_key, required=True)
    u.add_argument("--message")
    u.add_argument("--q", type=int, default=17)
    u.add_argument("--samples", type=int, required=True)
    u.add_argument("--seed", type=int, required=True)
    u.set_defaults(func=cmd_uniformity)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DhciError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line pipeline: gen-base -> gen-mask -> gen-latin -> splice -> girth/expand/profile -> simulate.

Every stage reads and writes files. Defaults chain in the working directory:
``base.exp`` -> ``masks.mask`` -> ``spliced.exp`` -> ``spliced.alist``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as fmt
from .construct import (
    PARTITIONS,
    LatinSquare,
    extend_maskset,
    gcd_base,
    latin_circulant,
    random_latin,
    splice_binary,
    splice_exponent,
)
from .girth import DEFAULT_CAP, girth_exponent, girth_graph
from .matrix import expand, profile
from .simulate import DEFAULT_MAX_ITER, StopRule, parse_snr_range, run_ber

log = logging.getLogger("psldpc")

DEFAULT_BASE = "base.exp"
DEFAULT_MASKS = "masks.mask"
DEFAULT_SPLICED = "spliced.exp"
DEFAULT_ALIST = "spliced.alist"


class CliError(Exception):
    pass


def _emit(text: str, out: str | None, quiet: bool = False):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        if not quiet:
            print(f"wrote {out}", file=sys.stderr)


def _read(path: str, reader, **kw):
    p = Path(path)
    if not p.is_file():
        raise CliError(f"{path}: no such file")
    return reader(p.read_text(), source=str(p), **kw)


def _latin(spec: str, N: int, seed: int | None) -> LatinSquare:
    if spec == "circulant":
        return latin_circulant(N)
    if spec == "random":
        return random_latin(N, np.random.default_rng(seed))
    A = _read(spec, fmt.read_latin)
    if A.order != N:
        raise CliError(f"{spec}: Latin square has order {A.order}, expected N={N}")
    return A


def _matrix_from_args(args):
    """Binary matrix from ``--alist`` or ``--exponent`` (expanded)."""
    if getattr(args, "alist", None):
        return _read(args.alist, fmt.read_alist)
    return expand(_read(args.exponent, fmt.read_exponent))


def cmd_gen_base(args):
    E = gcd_base(args.p, args.l)
    _emit(fmt.write_exponent(E), args.out)


def cmd_gen_mask(args):
    if args.kind == "custom":
        if not args.file:
            raise CliError("gen-mask custom needs --file")
        ms = _read(args.file, fmt.read_maskset, count=args.count)
    else:
        if args.m is None or args.n is None:
            raise CliError(f"gen-mask {args.kind} needs --m and --n")
        ms = extend_maskset(PARTITIONS[args.kind](args.m, args.n), args.count)
    _emit(fmt.write_maskset(ms), args.out)


def cmd_gen_latin(args):
    _emit(fmt.write_latin(_latin(args.kind, args.n, args.seed)), args.out)


def cmd_splice(args):
    ms = _read(args.masks, fmt.read_maskset, count=args.n)
    A = _latin(args.latin, args.n, args.seed)
    if args.alist:
        if args.p is None:
            raise CliError("splicing a binary base needs --p")
        H0 = _read(args.alist, fmt.read_alist)
        H = splice_binary(H0, args.p, ms, A)
        _emit(fmt.write_alist(H), args.out or DEFAULT_ALIST)
        return
    E0 = _read(args.base, fmt.read_exponent)
    E = splice_exponent(E0, ms, A)
    _emit(fmt.write_exponent(E), args.out or DEFAULT_SPLICED)


def cmd_girth(args):
    wit = None
    if args.alist:
        res = girth_graph(_read(args.alist, fmt.read_alist), args.cap)
    else:
        E = _read(args.exponent, fmt.read_exponent)
        res, wit = girth_exponent(E, args.cap, witness=True)
    if args.json:
        doc = {"exact": res.is_exact, "girth": res.value, "cap": args.cap}
        if args.witness and wit is not None:
            doc["witness"] = {"positions": [list(p) for p in wit.positions],
                              "alternating_sum": wit.alternating_sum}
        print(json.dumps(doc))
        return
    print(str(res))
    if args.witness and wit is not None and not args.quiet:
        print("cycle: " + " ".join(f"({i},{j})" for i, j in wit.positions))
        print("sum: " + wit.describe(E))


def cmd_expand(args):
    E = _read(args.exponent, fmt.read_exponent)
    _emit(fmt.write_alist(expand(E)), args.out)


def cmd_profile(args):
    prof = profile(_matrix_from_args(args))
    if args.json:
        print(json.dumps(prof.as_dict()))
        return
    cw = " ".join(f"{w}:{c}" for w, c in prof.column_weight_histogram.items())
    rw = " ".join(f"{w}:{c}" for w, c in prof.row_weight_histogram.items())
    print(f"column_weights {cw}")
    print(f"row_weights {rw}")
    print(f"designed_rate {prof.designed_rate}")
    if prof.regular and not args.quiet:
        print(f"regular ({prof.regular[0]},{prof.regular[1]})")


def cmd_simulate(args):
    H = _matrix_from_args(args)
    snrs = parse_snr_range(args.snr)
    res = run_ber(
        H,
        snrs,
        StopRule(args.min_errors, args.max_frames),
        max_iter=args.max_iter,
        seed=args.seed,
        workers=args.workers,
    )
    text = fmt.write_results_csv(res)
    _emit(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psldpc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-base", help="generate a GCD base exponent matrix")
    p.add_argument("kind", choices=["gcd"])
    p.add_argument("--p", type=int, required=True, help="lift size P")
    p.add_argument("--l", type=int, required=True, help="number of block columns L")
    p.add_argument("--out", default=DEFAULT_BASE)
    p.set_defaults(func=cmd_gen_base)

    p = sub.add_parser("gen-mask", help="generate or validate a partition mask set")
    p.add_argument("kind", choices=["d", "t", "h", "custom"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--count", type=int, default=2, help="number of masks N (extra masks are zero)")
    p.add_argument("--file", help="mask file for 'custom'")
    p.add_argument("--out", default=DEFAULT_MASKS)
    p.set_defaults(func=cmd_gen_mask)

    p = sub.add_parser("gen-latin", help="generate a Latin square")
    p.add_argument("kind", choices=["circulant", "random"])
    p.add_argument("--n", type=int, required=True, help="order N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="latin.latin")
    p.set_defaults(func=cmd_gen_latin)

    p = sub.add_parser("splice", help="partition and splice a base matrix")
    p.add_argument("--base", default=DEFAULT_BASE, help="base exponent file")
    p.add_argument("--alist", help="binary base (alist) instead of --base")
    p.add_argument("--p", type=int, help="block size for a binary base")
    p.add_argument("--masks", default=DEFAULT_MASKS)
    p.add_argument("--n", type=int, required=True, help="number of components N")
    p.add_argument("--latin", default="circulant", help="'circulant', 'random' or a .latin file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_splice)

    p = sub.add_parser("girth", help="girth of an exponent matrix or alist PCM")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--exponent", default=DEFAULT_SPLICED)
    src.add_argument("--alist")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("expand", help="expand an exponent matrix to an alist PCM")
    p.add_argument("--exponent", default=DEFAULT_SPLICED)
    p.add_argument("--out", default=DEFAULT_ALIST)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("profile", help="weight distributions and designed rate")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--exponent", default=DEFAULT_SPLICED)
    src.add_argument("--alist")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("simulate", help="BER/FER over BI-AWGN with SPA decoding")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--alist", default=None)
    src.add_argument("--exponent", default=DEFAULT_SPLICED)
    p.add_argument("--snr", default="1.0:0.5:4.0", help="Eb/N0 dB as start:step:stop or a list")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=10**7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results.csv")
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"psldpc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

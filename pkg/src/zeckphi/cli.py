"""Command line front end."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .base_phi import beta_expand, s_beta
from .beatty import Gbs, gbs_terms
from .graded import graded_fixed_point, graded_output
from .morphism import (
    MorphismSyntaxError,
    fixed_point,
    format_word,
    iterate,
    parse_coding,
    parse_morphism,
    parse_word,
    prolongable_letters,
    return_words,
)
from .spectrum import CHECKS, phi_points, render_table, run_checks, sbeta_values, sz_values, zeck_points
from .zeckendorf import s_z, zeck_expand

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_CLASS_INDEX = {"inc": 0, "const": 1, "dec": 2}


class UsageError(Exception):
    pass


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeckphi",
        description="Zeckendorf and base-phi digit sums, Beatty sequences and morphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("expand", help="print an expansion")
    p.add_argument("system", choices=["zeck", "phi"])
    p.add_argument("n", type=_non_negative)

    p = sub.add_parser("sum", help="print a digit sum")
    p.add_argument("system", choices=["zeck", "phi"])
    p.add_argument("n", type=_non_negative)

    p = sub.add_parser("seq", help="print a range of digit sums")
    p.add_argument("function", choices=["sz", "sbeta"])
    p.add_argument("--from", dest="start", type=_non_negative, default=0)
    p.add_argument("--to", dest="stop", type=_non_negative, required=True)

    p = sub.add_parser("points", help="print points of increase, constancy or decrease")
    p.add_argument("system", choices=["zeck", "phi"])
    p.add_argument("--class", dest="cls", choices=list(_CLASS_INDEX), required=True)
    p.add_argument("--count", type=_non_negative, required=True)

    p = sub.add_parser("gbs", help="print terms of p*floor(n*phi) + q*n + r")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n0", type=int, choices=[0, 1], default=1)
    p.add_argument("--count", type=_non_negative, required=True)

    p = sub.add_parser("morphism", help="evaluate a morphism")
    p.add_argument("action", choices=["fixpoint", "apply", "returns"])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rules", type=Path, help="file with morphism rules")
    src.add_argument("--inline", help="rules given inline, e.g. '1 -> 1 2 ; 2 -> 1'")
    src.add_argument("--catalog", choices=catalog.NAMES, help="a built-in morphism")
    p.add_argument("--seed", help="seed letter (default: the unique prolongable letter)")
    p.add_argument("--length", type=_non_negative, default=20)
    p.add_argument("--word", help="input word for 'apply'")
    p.add_argument("--times", type=_non_negative, default=1, help="iterations for 'apply'")
    p.add_argument("--factor", help="factor whose return words are listed")
    p.add_argument("--coding", help="letter-to-letter map applied to the output, e.g. \"3' => 3\"")

    p = sub.add_parser("verify", help="run verification checks")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--check", action="append", choices=list(CHECKS), metavar="ID")
    which.add_argument("--all", action="store_true")
    which.add_argument("--list", action="store_true", help="list the available checks")
    p.add_argument("--bound", type=int, help="override every check's default bound")
    p.add_argument("--json", action="store_true", help="one JSON record per line")
    p.add_argument("--perturb", action="store_true", help="negative control: offset each claim by one")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _csv(values) -> str:
    return ",".join(str(int(v)) for v in values)


def _cmd_expand(args) -> str:
    if args.system == "zeck":
        return str(zeck_expand(args.n))
    return str(beta_expand(args.n))


def _cmd_sum(args) -> str:
    return str(s_z(args.n) if args.system == "zeck" else s_beta(args.n))


def _cmd_seq(args) -> str:
    if args.stop < args.start:
        raise UsageError("--to must not be smaller than --from")
    table = sz_values if args.function == "sz" else sbeta_values
    return _csv(table(args.stop + 1)[args.start : args.stop + 1])


def _cmd_points(args) -> str:
    finder = zeck_points if args.system == "zeck" else phi_points
    idx = _CLASS_INDEX[args.cls]
    upto = max(64, 8 * args.count)
    while True:
        pts = finder(upto)[idx]
        if len(pts) > args.count:
            return _csv(pts[: args.count])
        upto *= 2


def _cmd_gbs(args) -> str:
    return _csv(gbs_terms(Gbs(args.p, args.q, args.r, args.n0), args.count))


def _load_finite(args):
    if args.rules is not None:
        return parse_morphism(args.rules.read_text()), None
    if args.inline is not None:
        return parse_morphism(args.inline), None
    entry = catalog.FINITE[args.catalog]
    return entry.morphism, entry


def _pick_seed(m, seed):
    if seed is not None:
        return seed
    letters = prolongable_letters(m)
    if len(letters) != 1:
        raise UsageError(f"give --seed; prolongable letters: {' '.join(letters) or 'none'}")
    return letters[0]


def _cmd_morphism_graded(args) -> str:
    m, seed, out = catalog.GRADED[args.catalog]
    if args.action != "fixpoint":
        raise UsageError(f"catalog entry {args.catalog!r} only supports 'fixpoint'")
    if out is None:
        return format_word(graded_fixed_point(m, seed, args.length))
    values = graded_output(graded_fixed_point(m, seed, args.length), out)
    return format_word(values[: args.length])


def _cmd_morphism(args) -> str:
    if args.catalog in catalog.GRADED:
        return _cmd_morphism_graded(args)
    m, entry = _load_finite(args)
    coding = parse_coding(args.coding) if args.coding else None
    if args.action == "apply":
        if args.word is None:
            raise UsageError("'apply' needs --word")
        out = iterate(m, parse_word(args.word), args.times)
        return format_word(coding(out) if coding else out)
    seed = args.seed if args.seed is not None else (entry.seed if entry else None)
    seed = _pick_seed(m, seed)
    if args.action == "fixpoint":
        word = fixed_point(m, seed, args.length)
        if coding is not None:
            word = coding(word)
        return format_word(word)
    if args.factor is None:
        raise UsageError("'returns' needs --factor")
    word = fixed_point(m, seed, args.length)
    if coding is not None:
        word = coding(word)
    words, seq = return_words(word, parse_word(args.factor))
    order = list(dict.fromkeys(seq))
    lines = [f"r{i}: {format_word(r)}" for i, r in enumerate(order)]
    index = {r: i for i, r in enumerate(order)}
    lines.append("sequence: " + " ".join(f"r{index[r]}" for r in seq))
    return "\n".join(lines)


def _cmd_verify(args) -> tuple[str, int]:
    if args.list:
        lines = [f"{c.check_id:16} default bound {c.default_bound:>8} ({c.bound_meaning}): {c.statement}"
                 for c in CHECKS.values()]
        return "\n".join(lines), EXIT_OK
    ids = None if args.all else args.check
    reports = run_checks(ids, args.bound, perturb=args.perturb, jobs=args.jobs)
    if args.json:
        text = "\n".join(r.to_json() for r in reports)
    else:
        text = render_table(reports)
    return text, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    code = EXIT_OK
    try:
        if args.command == "verify":
            text, code = _cmd_verify(args)
        else:
            text = {
                "expand": _cmd_expand,
                "sum": _cmd_sum,
                "seq": _cmd_seq,
                "points": _cmd_points,
                "gbs": _cmd_gbs,
                "morphism": _cmd_morphism,
            }[args.command](args)
    except (UsageError, MorphismSyntaxError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"zeckphi {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

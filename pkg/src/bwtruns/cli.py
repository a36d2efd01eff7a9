"""Command-line front end; every subcommand is a thin wrapper over the library."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import closed_forms, search
from .bwt import (
    MATRIX_RENDER_LIMIT,
    bwt_matrix,
    bwt_invert,
    format_rho,
    render_matrix,
    word_record,
)
from .standard import (
    DirectiveSequence,
    fibonacci_plus,
    fibonacci_word,
    standard_plus,
    standard_word,
)
from .words import WordError, check_word, rle

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# lengths above this print a runtime estimate before searching
ESTIMATE_ABOVE = 26


def _emit(out, fmt, rows, columns=None, plain=None):
    """Write ``rows`` (list of dicts) as json, csv, or via the ``plain`` formatter."""
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 and columns is None else rows
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        columns = columns or list(rows[0])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(plain(rows) + "\n")


def cmd_bwt(args, out):
    w = check_word(args.word, nonempty=True)
    rec = word_record(w)
    rec["rle"] = str(rle(rec["bwt"]))

    def plain(rows):
        x = rows[0]
        return f"bwt: {x['bwt']}\nrle: {x['rle']}\nr: {x['r']}\nbw_array: {' '.join(map(str, x['bw_array']))}"

    _emit(out, args.format, [rec], plain=plain)
    return EXIT_OK


def cmd_rho(args, out):
    w = check_word(args.word, nonempty=True)
    rec = word_record(w)
    rec["rho_decimal"] = format_rho(Fraction(rec["rho_num"], rec["rho_den"]))

    def plain(rows):
        x = rows[0]
        return (
            f"r: {x['r']}\nr_rev: {x['r_rev']}\n"
            f"rho: {x['rho_num']}/{x['rho_den']} ({x['rho_decimal']})"
        )

    _emit(out, args.format, [rec], plain=plain)
    return EXIT_OK


def cmd_invert(args, out):
    t = check_word(args.bwt, nonempty=True)
    w = bwt_invert(t)
    _emit(out, args.format, [{"bwt": t, "word": w}], plain=lambda rows: rows[0]["word"])
    return EXIT_OK


def cmd_matrix(args, out):
    w = check_word(args.word, nonempty=True)
    if args.format == "plain":
        out.write(render_matrix(w, args.limit) + "\n")
        return EXIT_OK
    rows = [
        {"rank": rank, "rotation_index": idx, "rotation": rot, "last": rot[-1]}
        for rank, (idx, rot) in enumerate(bwt_matrix(w, args.limit), start=1)
    ]
    _emit(out, args.format, rows, columns=["rank", "rotation_index", "rotation", "last"])
    return EXIT_OK


def cmd_gen(args, out):
    if args.family == "fib":
        w = fibonacci_word(int(args.param))
    elif args.family == "std":
        w = standard_word(DirectiveSequence.parse(args.param))
    elif args.family == "fibplus":
        w = fibonacci_plus(int(args.param), odd=args.odd)
    else:
        w = standard_plus(DirectiveSequence.parse(args.param))
    _emit(out, args.format, [{"word": w, "length": len(w)}], plain=lambda rows: rows[0]["word"])
    return EXIT_OK


def _plain_table(rows):
    lines = [f"{'n':>3}  {'rho':>5}  {'exact':>6}  witness"]
    for x in rows:
        lines.append(f"{x['n']:>3}  {x['rho_decimal']:>5}  {x['rho_exact']:>6}  {x['witness']}")
    return "\n".join(lines)


def cmd_table(args, out, err):
    if args.kind == "rho":
        search.check_length(args.to, args.force, args.cap)
        if args.n_from > args.to:
            raise WordError("--from must be <= --to")
        rows = []
        for n in range(args.n_from, args.to + 1):
            if n > ESTIMATE_ABOVE and args.alphabet == "ab":
                est = search.estimate_seconds(n) / args.jobs
                err.write(f"n={n}: estimated runtime {est:.0f} s\n")
                err.flush()
            rep = search.rho_max(n, args.jobs, args.force, args.cap, alphabet=args.alphabet)
            rows.append(rep.to_dict())
        _emit(out, args.format, rows, columns=search.CSV_COLUMNS, plain=_plain_table)
    else:
        if args.n_from > args.to:
            raise WordError("--from must be <= --to")
        rows = [
            search.stdplus_rho_max(n, args.parity).to_dict()
            for n in range(args.n_from, args.to + 1)
        ]
        _emit(
            out,
            args.format,
            rows,
            columns=["n", "rho_decimal", "rho_exact", "witness", "family_size"],
            plain=_plain_table,
        )
    return EXIT_OK


def cmd_verify(args, out):
    if args.kind == "fibplus":
        report = closed_forms.verify_closed_forms(args.kmax, jobs=args.jobs)
    else:
        rng = random.Random(args.seed)
        directives = [closed_forms.random_directive(rng) for _ in range(args.trials)]
        report = closed_forms.verify_closed_forms(
            2, parities=(), directives=directives, jobs=args.jobs, seed=args.seed
        )
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        rows = [
            {**c, "params": json.dumps(c["params"])} for c in report.cases
        ]
        _emit(out, "csv", rows, columns=["family", "params", "predicted_rle", "computed_rle", "match"])
    else:
        lines = [closed_forms.summarize(report)]
        if args.kind == "stdplus":
            lines.append(f"seed: {args.seed}")
        for c in report.mismatches:
            lines.append(f"MISMATCH {c['family']} {json.dumps(c['params'])}")
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_catastrophe(args, out):
    rep = search.one_bit_catastrophe(args.k)
    _emit(
        out,
        args.format,
        [rep.to_dict()],
        plain=lambda rows: (
            f"k={rows[0]['k']}: r(reverse(s_2k)) = {rows[0]['r_base']}, "
            f"r(b + reverse(s_2k)) = {rows[0]['r_extended']}, ratio {rows[0]['ratio']}"
        ),
    )
    return EXIT_OK


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--cap", type=_positive, default=search.DEFAULT_CAP,
                        help="maximum search length (env BWTRUNS_CAP)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="bwtruns",
        description="BWT runs of circular binary words and their reverses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bwt", parents=[common], help="BWT, BW-array and run count")
    p.add_argument("word")
    p.set_defaults(func=cmd_bwt)

    p = sub.add_parser("rho", parents=[common], help="runs-ratio of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("invert", parents=[common], help="least word with the given BWT")
    p.add_argument("bwt")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("matrix", parents=[common], help="sorted rotation matrix")
    p.add_argument("word")
    p.add_argument("--limit", type=_positive, default=MATRIX_RENDER_LIMIT)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("gen", parents=[common], help="generate a word family member")
    p.add_argument("family", choices=["fib", "std", "fibplus", "stdplus"])
    p.add_argument("param", help="order, k, or comma-separated directive")
    p.add_argument("--odd", action="store_true", help="odd-order Fibonacci-plus")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("table", parents=[common], help="maximum rho per length")
    p.add_argument("kind", choices=["rho", "stdplus"])
    p.add_argument("--from", dest="n_from", type=_positive, required=True)
    p.add_argument("--to", type=_positive, required=True)
    p.add_argument("--force", action="store_true", help="allow lengths above the cap")
    p.add_argument("--alphabet", default="ab", help="experimental: e.g. abc for ternary words")
    p.add_argument("--parity", choices=["even", "odd", "both"], default="even",
                   help="standard-plus orders included (table stdplus)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check closed forms against the engine")
    p.add_argument("kind", choices=["fibplus", "stdplus"])
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--trials", type=_positive, default=500)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catastrophe", parents=[common], help="one-letter extension blow-up")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_catastrophe)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.func is cmd_table:
            return cmd_table(args, out, err)
        return args.func(args, out)
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line interface.

Exit codes: 0 success, 1 verification failure or route disagreement,
2 usage error, 3 expression parse/evaluation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import chromatic, seriesdsl
from .exactpoly import Polynomial, render, render_latex

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DSL = 0, 1, 2, 3

FORMATS = ("text", "csv", "json", "latex")
METHODS = ("direct", "recursive", "genfun", "closed", "spectrum", "all")


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _positive(text: str) -> int:
    n = _nat(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _heights(text: str) -> range:
    """``N`` or an inclusive range ``A..B``."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        a, b = _nat(lo), _nat(hi)
        if b < a:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return range(a, b + 1)
    n = _nat(text)
    return range(n, n + 1)


def _route(name: str, n: int) -> Polynomial:
    # look up epsilon at call time so a patched module-level epsilon is honoured
    eps = chromatic.epsilon
    if name == "direct":
        return chromatic.l_direct(n)
    if name == "recursive":
        return chromatic.l_recursive(n, eps)
    if name == "genfun":
        return chromatic.l_genfun(n, n, eps)
    if name == "closed":
        return chromatic.l_closed_form(n, eps)
    return chromatic.spectrum_poincare(n)


# -- table emitters ---------------------------------------------------------------


def format_table(rows: list[tuple[int, Polynomial]], fmt: str,
                 label: str = "L", latex_label: str = "{\\sf L}") -> str:
    """Render ``(height, polynomial)`` rows; csv and json schemas ignore the labels."""
    if fmt == "text":
        return "".join(f"{label}_{n}(T) = {render(p)}\n" for n, p in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "exponent", "coefficient"])
        for n, p in rows:
            for e, c in p.terms:
                w.writerow([n, e, c])
        return buf.getvalue()
    if fmt == "json":
        objs = [{"n": n, "poly": {str(e): str(c) for e, c in p.terms}} for n, p in rows]
        return json.dumps(objs, indent=2) + "\n"
    if fmt == "latex":
        return "".join(f"\\[\n{latex_label}_{{{n}}}(T) = {render_latex(p)}\n\\]\n" for n, p in rows)
    raise ValueError(f"unknown format {fmt!r}")


def format_report(report: chromatic.VerificationReport) -> str:
    lines = []
    for r in report.results:
        line = f"n={r.height:<3d} {r.name:<20s} {'PASS' if r.passed else 'FAIL'}"
        if r.counterexample:
            line += f"  {r.counterexample}"
        lines.append(line)
    fails = report.failures
    if fails:
        first = fails[0]
        lines.append(f"FAILED: {len(fails)} of {len(report.results)} checks; "
                     f"first at n={first.height} ({first.name})")
    else:
        lines.append(f"OK: {len(report.results)} checks passed for 0 <= n <= {report.n_max}")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------


def cmd_epsilon(args, out, err) -> int:
    p = chromatic.epsilon(args.k)
    if args.format == "text":
        out.write(render(p) + "\n")
    else:
        out.write(format_table([(args.k, p)], args.format, "eps", "\\epsilon"))
    return EXIT_OK


def cmd_ln(args, out, err) -> int:
    heights = args.n
    if args.method != "all":
        if args.method == "spectrum" and heights.start == 0:
            err.write("error: the spectrum route needs n >= 1\n")
            return EXIT_USAGE
        rows = [(n, _route(args.method, n)) for n in heights]
        if len(rows) == 1 and args.format == "text":
            out.write(render(rows[0][1]) + "\n")
        else:
            out.write(format_table(rows, args.format))
        return EXIT_OK

    status = EXIT_OK
    for n in heights:
        names = [m for m in METHODS[:-1] if not (m == "spectrum" and n == 0)]
        values = {m: _route(m, n) for m in names}
        for m in names:
            out.write(f"L_{n}(T) [{m}] = {render(values[m])}\n")
        if len(set(values.values())) != 1:
            err.write(f"error: routes disagree at n={n}\n")
            status = EXIT_FAIL
    return status


def cmd_table(args, out, err) -> int:
    rows = [(n, chromatic.l_recursive(n)) for n in range(args.max_n + 1)]
    out.write(format_table(rows, args.format))
    return EXIT_OK


def cmd_spectrum(args, out, err) -> int:
    summands = chromatic.spectrum_summands(args.n)
    if args.format == "json":
        objs = [{"suspension": s.suspension, "unitary_ranks": list(s.unitary_ranks)} for s in summands]
        out.write(json.dumps(objs, indent=2) + "\n")
        return EXIT_OK
    for s in summands:
        groups = " x ".join(f"U({k})" for k in s.unitary_ranks)
        out.write(f"S^{s.suspension} ({groups})_+\tsuspension={s.suspension}\t"
                  f"ranks={','.join(map(str, s.unitary_ranks))}\n")
    out.write(f"# {len(summands)} summands; Poincare series {render(chromatic.spectrum_poincare(args.n))}\n")
    return EXIT_OK


def cmd_eval(args, out, err) -> int:
    try:
        value = seriesdsl.run(args.expr, args.trunc)
    except seriesdsl.DSLError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DSL
    out.write(seriesdsl.render_value(value) + "\n")
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    report = chromatic.verify(args.max_n, eps=chromatic.epsilon, workers=args.workers)
    out.write(format_report(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromsplit",
        description="Poincare series L_n(T) of the chromatic splitting conjecture.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("epsilon", help="print eps_k(T)")
    p.add_argument("--k", type=_nat, required=True)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_epsilon)

    p = sub.add_parser("ln", help="compute L_n(T) by one route or all of them")
    p.add_argument("--n", type=_heights, required=True, help="height N or range A..B")
    p.add_argument("--method", choices=METHODS, default="recursive")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_ln)

    p = sub.add_parser("table", help="tabulate L_0 .. L_M")
    p.add_argument("--max-n", type=_nat, required=True)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("spectrum", help="list the wedge summands for height N")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eval", help="evaluate a series expression")
    p.add_argument("expr")
    p.add_argument("--trunc", type=_nat, default=16)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="cross-check all routes and laws")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors by exiting
        return int(exc.code or 0)
    return args.func(args, out, err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line front end.

    sl2hahn verify {sl2,hahn,decomp,johnson,all}
    sl2hahn decompose M N [--l L]
    sl2hahn table DMIN DMAX

Exit status is 0 when every check passes, 1 when one fails and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from math import comb

from . import __version__
from .errors import OutOfRange
from .hahn import classify_hahn_rep
from .johnson import blocks_report, formula_case, terwilliger_dim_bruteforce, terwilliger_dim_formula
from .latticedecomp import iso_orbit, weight_module, weight_module_descriptor
from .report import Report, make_record, render, to_csv, to_json, to_text
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE_FIELDS = ("D", "k", "case", "dim_formula", "blocks", "dim_bruteforce", "agree")


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# table rows


@dataclass(frozen=True)
class TableRow:
    D: int
    k: int
    case: str
    dim_formula: int
    blocks: tuple
    dim_bruteforce: int | None
    agree: bool

    def as_strings(self) -> dict:
        return {
            "D": str(self.D),
            "k": str(self.k),
            "case": self.case,
            "dim_formula": str(self.dim_formula),
            "blocks": ";".join(map(str, self.blocks)),
            "dim_bruteforce": "" if self.dim_bruteforce is None else str(self.dim_bruteforce),
            "agree": render(self.agree),
        }

    @classmethod
    def from_strings(cls, row: dict) -> "TableRow":
        return cls(
            int(row["D"]),
            int(row["k"]),
            row["case"],
            int(row["dim_formula"]),
            tuple(int(b) for b in row["blocks"].split(";") if b),
            int(row["dim_bruteforce"]) if row["dim_bruteforce"] else None,
            row["agree"] == "true",
        )


def table_row(D: int, k: int, cap: int) -> TableRow:
    formula = terwilliger_dim_formula(D, k)
    blocks, report = blocks_report(D, k)
    brute = terwilliger_dim_bruteforce(D, k, cap=cap) if comb(D, k) <= cap else None
    agree = report.passed and formula == sum(b * b for b in blocks) and brute in (None, formula)
    return TableRow(D, k, formula_case(D, k), formula, blocks, brute, agree)


def table_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_strings())
    return buf.getvalue()


def table_from_csv(text: str) -> list[TableRow]:
    return [TableRow.from_strings(r) for r in csv.DictReader(io.StringIO(text))]


def table_to_json(rows, config: dict) -> str:
    doc = {"version": __version__, "config": config, "rows": [r.as_strings() for r in rows]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def table_from_json(text: str) -> list[TableRow]:
    return [TableRow.from_strings(r) for r in json.loads(text)["rows"]]


def table_to_text(rows) -> str:
    header = ("D", "k", "case", "formula", "blocks", "brute", "agree")
    body = [
        (str(r.D), str(r.k), r.case, str(r.dim_formula), ";".join(map(str, r.blocks)),
         "-" if r.dim_bruteforce is None else str(r.dim_bruteforce), render(r.agree))
        for r in rows
    ]
    widths = [max(len(line[i]) for line in [header, *body]) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(line, widths)) + "\n" for line in [header, *body])


# ---------------------------------------------------------------------------
# commands


def _config(args) -> RunConfig:
    config = RunConfig(
        m_max=args.m_max,
        n_max=args.n_max,
        d_max=args.d_max,
        seed=args.seed,
        cap=args.cap,
        timing=not args.no_timing,
    )
    try:
        config.validate()
    except OutOfRange as exc:
        raise ConfigError(str(exc)) from None
    return config


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    return to_text(report)


def cmd_verify(args) -> int:
    config = _config(args)
    report = Report({"command": "verify", "suite": args.suite, **config.echo()}, run_suite(args.suite, config))
    _emit(_render_report(report, args.format), args)
    return EXIT_OK if report.passed else EXIT_FAIL


def decompose_records(m: int, n: int, ell: int | None = None, timing: bool = False):
    """One record per weight space: the predicted (weight, (a,b,d), dim, orbit)
    against the same data read off the actual matrices."""
    if m < 0 or n < 0:
        raise ConfigError("m and n must be nonnegative")
    if ell is not None and not 0 <= ell <= m + n:
        raise ConfigError(f"--l must lie in [0, {m + n}]")
    ells = range(m + n + 1) if ell is None else (ell,)
    records = []
    for l in ells:
        desc = weight_module_descriptor(m, n, l)
        orbit = tuple(sorted(iso_orbit(m, n, l)))
        expected = (desc.weight, desc.key, desc.dim, orbit)
        h, basis = weight_module(m, n, l)
        try:
            actual = (desc.weight, classify_hahn_rep(h), len(basis), orbit)
        except ValueError as exc:
            actual = f"unclassified: {exc}"
        records.append(make_record("decompose.weight_space", {"m": m, "n": n, "l": l}, expected, actual, expected == actual))
    return records


def cmd_decompose(args) -> int:
    _config(args)
    records = decompose_records(args.m, args.n, args.l)
    report = Report({"command": "decompose", "m": args.m, "n": args.n, "l": args.l}, records)
    if args.format == "text":
        lines = []
        for l in ([args.l] if args.l is not None else range(args.m + args.n + 1)):
            desc = weight_module_descriptor(args.m, args.n, l)
            a, b, d = desc.key
            orbit = " ".join(render(t) for t in sorted(iso_orbit(args.m, args.n, l)))
            lines.append(
                f"l={l} weight={desc.weight} (a,b,d)=({render(a)},{render(b)},{d}) dim={desc.dim} orbit={orbit}"
            )
        failed = [r for r in records if not r.passed]
        lines.append("all weight spaces match their predicted class" if not failed
                     else f"{len(failed)} weight spaces disagree with the prediction")
        text = "\n".join(lines) + "\n"
    else:
        text = _render_report(report, args.format)
    _emit(text, args)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args) -> int:
    config = _config(args)
    if not 2 <= args.dmin <= args.dmax:
        raise ConfigError("need 2 <= DMIN <= DMAX")
    rows = [table_row(D, k, config.cap) for D in range(args.dmin, args.dmax + 1) for k in range(1, D)]
    if args.format == "csv":
        text = table_to_csv(rows)
    elif args.format == "json":
        text = table_to_json(rows, {"command": "table", "dmin": args.dmin, "dmax": args.dmax, **config.echo()})
    else:
        text = table_to_text(rows)
    _emit(text, args)
    return EXIT_OK if all(r.agree for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random anchors")
    common.add_argument("--m-max", type=int, default=4)
    common.add_argument("--n-max", type=int, default=4)
    common.add_argument("--d-max", type=int, default=8)
    common.add_argument("--cap", type=int, default=RunConfig.cap, help="largest slice size for span closures")
    common.add_argument("--no-timing", action="store_true", help="record 0 ms per check for reproducible reports")

    parser = argparse.ArgumentParser(prog="sl2hahn", description="Exact checks for sl2, Hahn and Terwilliger algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="weight-space modules of L_m ⊗ L_n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--l", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("table", parents=[common], help="Terwilliger algebra dimensions and blocks")
    p.add_argument("dmin", type=int)
    p.add_argument("dmax", type=int)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"sl2hahn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

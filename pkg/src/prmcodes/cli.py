"""Command line entry point: ``prmcodes {params,encode,decode,simulate,tables}``.

Vectors are read and written as one line of comma separated integers (field
elements in their integer encoding, points in canonical order).  Exit status
is 0 on success, 1 when a decode fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .codes import encode, parameter_table, prm_params
from .decoder import decode_prm, mdd_decode
from .galois import FieldError, parse_field
from .monomials import parse_polynomial
from .simulate import METHODS, ChannelSpec, analytic, log_grid, simulate_many

DEFAULT_SEED = 20240501


class UsageError(Exception):
    pass


def _version() -> str:
    from .fixtures import fixture_hash

    return f"prmcodes {__version__} (fixtures {fixture_hash()})"


def _code_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--field", required=required, help="p^e or p^e:modulus-hex, e.g. 2^4")
    p.add_argument("-m", type=int, required=required, help="projective dimension")
    p.add_argument("--nu", type=int, required=required, help="order (degree of the polynomials)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prmcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="code parameters as JSON")
    _code_args(p)
    p.add_argument("--generator-csv", help="also write the generator matrix here")
    p.add_argument("-o", "--output", help="JSON output file (default stdout)")

    p = sub.add_parser("encode", help="encode a message or a homogeneous polynomial")
    _code_args(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--message", help="CSV file with k field elements ('-' for stdin)")
    src.add_argument("--poly", help="polynomial text, e.g. '1*X0^3*X1^2+2*X3^5'")
    p.add_argument("-o", "--output", help="CSV output file (default stdout)")

    p = sub.add_parser("decode", help="decode a received word, JSON report")
    _code_args(p, required=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV file with n field elements ('-' for stdin)")
    src.add_argument(
        "--example", action="store_true", help="the bundled PRM_5(3,4) received word over GF(4)"
    )
    p.add_argument("--oracle", choices=["none", "mdd"], default="none", help="use nearest-codeword decoding")
    p.add_argument("--voting", choices=["on", "off"], default="on", help="majority voting in BMS")
    p.add_argument("--bounded", action="store_true", help="accept at most t0 errors per BMS chart")
    p.add_argument("--trace", action="store_true", help="write the BMS step trace to stderr")
    p.add_argument("-o", "--output", help="JSON output file (default stdout)")

    p = sub.add_parser("simulate", help="codeword error rates as CSV")
    _code_args(p)
    p.add_argument("--methods", default="PM1,PM2", help=f"comma separated subset of {','.join(METHODS)}")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"default {DEFAULT_SEED}")
    p.add_argument("--p", type=float, action="append", help="symbol error rate (repeatable)")
    p.add_argument("--pmin", type=float, default=1e-3)
    p.add_argument("--pmax", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--analytic", action="store_true", help="closed forms instead of Monte Carlo")
    p.add_argument("-o", "--output", help="CSV output file (default stdout)")

    p = sub.add_parser("tables", help="parameter tables as CSV")
    p.add_argument("--paper-table", type=int, choices=sorted((1, 3, 4)), required=True)
    p.add_argument("-o", "--output", help="CSV output file (default stdout)")
    return parser


# -- helpers -----------------------------------------------------------------------


def _spec(args):
    try:
        field = parse_field(args.field)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    try:
        return prm_params(args.m, field, args.nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def read_vector(path: str, length: int, q: int) -> np.ndarray:
    text = sys.stdin.read() if path == "-" else open(path).read()
    try:
        values = [int(x) for row in csv.reader(io.StringIO(text)) for x in row if x.strip()]
    except ValueError:
        raise UsageError(f"{path}: expected comma separated integers") from None
    if len(values) != length:
        raise UsageError(f"{path}: expected {length} entries, found {len(values)}")
    if any(not 0 <= v < q for v in values):
        raise UsageError(f"{path}: entries must lie in [0, {q})")
    return np.array(values, dtype=np.uint8)


def format_vector(v) -> str:
    return ",".join(str(int(x)) for x in v) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv(rows: list[dict]) -> str:
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return out.getvalue()


# -- subcommands -------------------------------------------------------------------


def cmd_params(args) -> int:
    spec = _spec(args)
    if args.generator_csv:
        with open(args.generator_csv, "w") as fh:
            for row in spec.generator:
                fh.write(format_vector(row))
    _write(args.output, json.dumps(spec.as_dict(), indent=2) + "\n")
    return 0


def cmd_encode(args) -> int:
    spec = _spec(args)
    if args.poly is not None:
        try:
            f = parse_polynomial(args.poly, spec.field, spec.m + 1, offset=0)
            word = encode(spec, f)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        word = encode(spec, read_vector(args.message, spec.k, spec.q))
    _write(args.output, format_vector(word))
    return 0


def cmd_decode(args) -> int:
    if args.example:
        from . import fixtures

        spec = fixtures.example_spec()
        received = fixtures.received()
    else:
        if args.field is None or args.m is None or args.nu is None:
            raise UsageError("--field, -m and --nu are required with --input")
        spec = _spec(args)
        received = read_vector(args.input, spec.n, spec.q)
    if args.oracle == "mdd":
        try:
            cw = mdd_decode(spec, received)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        err = spec.field.vsub(received, cw)
        report = {
            "status": "success",
            "decoder": "mdd",
            "codeword": [int(x) for x in cw],
            "error": [int(x) for x in err],
            "charts": [],
            "failures": [],
        }
        _write(args.output, json.dumps(report) + "\n")
        return 0
    out = decode_prm(spec, received, voting=args.voting == "on", bounded=args.bounded, trace=args.trace)
    if args.trace:
        for c in out.charts:
            if c.bms is not None:
                sys.stderr.write(f"# chart {c.chart}\n")
                for line in c.bms.trace:
                    sys.stderr.write(line + "\n")
    report = {"decoder": "chartwise", **out.as_dict()}
    _write(args.output, json.dumps(report) + "\n")
    return 0 if out.ok else 1


def cmd_simulate(args) -> int:
    spec = _spec(args)
    methods = [m.strip().upper() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise UsageError(f"--methods must be a subset of {','.join(METHODS)}")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    try:
        grid = args.p if args.p else log_grid(args.pmin, args.pmax, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if any(not 0 <= p <= 1 for p in grid):
        raise UsageError("error rates must lie in [0, 1]")
    lines = ["p,method,cer,stderr,trials,seed"]
    for p in grid:
        if args.analytic:
            lines += [analytic(spec, p, m).row() for m in methods]
        else:
            res = simulate_many(spec, ChannelSpec(p, spec.field, args.seed), methods, args.trials)
            lines += [res[m].row() for m in methods]
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_tables(args) -> int:
    _write(args.output, _csv(parameter_table(args.paper_table)))
    return 0


COMMANDS = {
    "params": cmd_params,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "tables": cmd_tables,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, OSError) as exc:
        sys.stderr.write(f"prmcodes {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())

"""Command-line entry point: check, eval, solve, roundtrip.

Exit status is 0 when everything passes, 1 on a failed check or an undefined
result, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .core import Mode, PseudofieldInstance, scalar, undefined
from .extraction import default_solver
from .instances import KINDS, InstanceDescriptor, make_instance
from .report import CheckReport, SampleConfig
from .verify import check_all, check_roundtrip
from .words import act

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, choices=KINDS)
    common.add_argument("--n", type=int, help="degree, required for semidirect and mikhailichenko")
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FLOAT.value)

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--samples", type=int, default=1000)
    sampled.add_argument("--seed", type=int, default=42)
    sampled.add_argument("--tol", type=float, help="float-mode tolerance (default depends on instance)")
    sampled.add_argument("--report", metavar="PATH", help="write the JSON report here instead of stdout")

    p = argparse.ArgumentParser(prog="pseudofield", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common, sampled], help="run every verification suite")
    sub.add_parser("roundtrip", parents=[common, sampled], help="extract the pseudofield back from G^n")
    ev = sub.add_parser("eval", parents=[common], help="print x . [y_1, ..., y_n]")
    ev.add_argument("--x", required=True, help="comma-separated coordinates of x")
    ev.add_argument("--tuple", required=True, dest="ys", help="n*dim comma-separated values, row-major")
    so = sub.add_parser("solve", parents=[common], help="print Z with X . Z = Y")
    so.add_argument("--from", required=True, dest="src", help="X as n*dim values, row-major")
    so.add_argument("--to", required=True, dest="dst", help="Y as n*dim values, row-major")
    return p


def _instance(args) -> PseudofieldInstance:
    desc = InstanceDescriptor(args.instance, args.n, Mode(args.mode))
    try:
        n = desc.resolved_n()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n is not None and args.n != n:
        raise UsageError(f"{args.instance} has fixed degree {n}")
    return make_instance(desc)


def _coords(text: str, mode: Mode) -> List:
    try:
        return [scalar(part.strip(), mode) for part in text.split(",")]
    except (ValueError, ArithmeticError):
        raise UsageError(f"malformed coordinates: {text!r}") from None


def _element(inst: PseudofieldInstance, text: str):
    values = _coords(text, inst.mode)
    if len(values) != inst.dim:
        raise UsageError(f"expected {inst.dim} coordinates, got {len(values)}")
    return tuple(values)


def _tuple(inst: PseudofieldInstance, text: str):
    values = _coords(text, inst.mode)
    if len(values) != inst.n * inst.dim:
        raise UsageError(f"expected {inst.n * inst.dim} values (n={inst.n}, dim={inst.dim}), got {len(values)}")
    d = inst.dim
    return tuple(tuple(values[i * d:(i + 1) * d]) for i in range(inst.n))


def format_number(v, mode: Mode) -> str:
    if mode is Mode.RATIONAL:
        return str(v)
    # 12 significant digits hide the last-bit noise of the word calculus
    out = format(float(v), ".12g")
    return "0" if out == "-0" else out


def _print_values(values, mode: Mode):
    print(",".join(format_number(v, mode) for v in values))


def _write_report(report: CheckReport, path: Optional[str]):
    text = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)


def _run(args) -> int:
    inst = _instance(args)
    mode = inst.mode
    if args.command in ("check", "roundtrip"):
        if args.samples < 1:
            raise UsageError("--samples must be >= 1")
        tol = inst.tolerance if args.tol is None else args.tol
        if tol <= 0:
            raise UsageError("--tol must be positive")
        cfg = SampleConfig(seed=args.seed, samples=args.samples, tolerance=tol, mode=mode)
        runner = check_all if args.command == "check" else check_roundtrip
        report = runner(inst, cfg)
        _write_report(report, args.report)
        return EXIT_OK if report.passed else EXIT_FAIL

    if args.command == "eval":
        value = act(inst, _element(inst, args.x), _tuple(inst, args.ys))
    else:
        X, Y = _tuple(inst, args.src), _tuple(inst, args.dst)
        value = default_solver(inst)(X, Y)
        if not undefined(value):
            value = tuple(c for row in value for c in row)
    if undefined(value):
        print(f"undefined: {value.reason.value}", file=sys.stderr)
        return EXIT_FAIL
    _print_values(value, mode)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"pseudofield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

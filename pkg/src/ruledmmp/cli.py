"""ruledmmp command line.

Exit codes: 0 success (flags included), 2 usage, 3 invalid instance, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import dot
from .contraction import ContractionError, initial_state
from .generator import GeneratorParams, ParameterError, random_instance
from .goodmodel import InvalidInstance, run
from .io import InstanceFormatError, dumps_instance, dumps_trace, loads_instance, replay
from .lattice import LatticeError
from .surface import validate
from .verify import CHECKS, verify

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_IO = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror}") from None


def _load(path: str):
    text = _read(path)
    try:
        sp = loads_instance(text)
        report = validate(sp)
    except (InstanceFormatError, LatticeError) as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    if not report.overall:
        lines = [f"{path}: invalid instance"] + [
            f"  {c.name}: {c.message}" for c in report.failures()
        ]
        raise CliError(EXIT_INVALID, "\n".join(lines))
    return sp, text


def cmd_generate(args) -> int:
    params = GeneratorParams(args.g, args.e, args.blowups, args.dv_density, args.whole_dv)
    try:
        sp = random_instance(args.seed, params)
    except ParameterError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    _write(args.out, dumps_instance(sp))
    return EXIT_OK


def cmd_run(args) -> int:
    sp, _ = _load(args.input)
    try:
        plan = run(sp)
    except InvalidInstance as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None
    if args.out:
        _write(args.out, dumps_trace(plan))
    print(f"k1={plan.k1} k2={plan.k2} m={plan.m} gamma={plan.gamma}")
    return EXIT_OK


def _verify_one(path: str, names: list[str]) -> tuple[int, str, str]:
    try:
        sp, _ = _load(path)
    except CliError as exc:
        return exc.code, "", str(exc) + "\n"
    report = verify(sp, checks=names)
    out = "".join(f"{c.name}: {c.status}\n" for c in report.checks)
    err = "".join(f"{c.name}: {c.message} {json.dumps(c.witness, sort_keys=True, default=str)}\n" for c in report.failures())
    return (EXIT_OK if report.overall else 1), out, err


def cmd_verify(args) -> int:
    names = list(CHECKS) if not args.checks else [n.strip() for n in args.checks.split(",") if n.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise CliError(EXIT_USAGE, f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    paths = args.inputs
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, paths, [names] * len(paths)))
    else:
        results = [_verify_one(p, names) for p in paths]
    worst = EXIT_OK
    for path, (code, out, err) in zip(paths, results):
        if len(paths) > 1:
            sys.stdout.write(f"== {path}\n")
        sys.stdout.write(out)
        sys.stderr.write(err)
        if code in (EXIT_INVALID, EXIT_IO):
            worst = max(worst, code)
        elif code != EXIT_OK and worst == EXIT_OK:
            worst = 1
    return worst


def cmd_export_dot(args) -> int:
    text = _read(args.input)
    sp, _ = _load(args.input)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = {}
    if "steps" in data:
        try:
            states = replay(sp, data)
        except (ContractionError, InstanceFormatError, KeyError) as exc:
            raise CliError(EXIT_INVALID, f"{args.input}: trace does not replay: {exc}") from None
    else:
        states = [initial_state(sp)]
    _write(args.out, dot.export_states(states))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ruledmmp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random valid instance")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--g", type=int, default=0, help="base curve genus (0..3)")
    g.add_argument("--e", type=int, default=0, help="ruled surface invariant (0..4)")
    g.add_argument("--blowups", type=int, default=0, help="number of blow-ups (0..12)")
    g.add_argument("--dv-density", type=float, default=0.5, help="chance a fiber component is in D^v")
    g.add_argument("--whole-dv", type=int, default=0, help="smooth fibers wholly in D^v (0..4)")
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run the staged contraction and print k1, k2, m, gamma")
    r.add_argument("input")
    r.add_argument("--out", help="write the trace file here")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run the theorem checks")
    v.add_argument("inputs", nargs="+")
    v.add_argument("--checks", help="comma separated subset of: " + ", ".join(CHECKS))
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("export-dot", help="DOT graphs of the degenerate fibers")
    d.add_argument("input", help="instance file or trace file")
    d.add_argument("--out", help="output path (default stdout)")
    d.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ruledmmp: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

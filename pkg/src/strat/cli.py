"""The strat command line: enumerate, apply, check, witness, scenario.

Commands read a .ars document, materialise the named strategy bounded by a
depth, and report results on standard output; diagnostics go to standard
error. Exit codes let shells branch on verdicts: 0 for success or an
affirmative verdict, 2 for usage errors and diagnostics, 3 for a negative
verdict (a closure property that fails, a non-closedness witness found, a
safety violation). With --machine each invocation emits exactly one JSON
record {kind, verdict, witness, count} in that key order; output is
byte-deterministic for identical invocations.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import speclang
from .ars import Ars, enumerate_derivations
from .errors import NoWitnessUpToHorizon, StratError
from .extensional import (
    AbstractStrategy,
    ApplicationStatus,
    is_closed,
    is_composition_closed,
    is_factor_closed,
    is_prefix_closed,
)
from .intensional import Universal, finite_support, lassos_of_memoryless
from .logic import accepted, as_logical, nonclosed_witness
from .traffic import (
    build_traffic_ars,
    fairness_nonclosed_witness,
    good_starts,
    never_both_green,
    safety_violation,
)

_CHECKS = {
    "prefix": is_prefix_closed,
    "factor": is_factor_closed,
    "composition": is_composition_closed,
    "closed": is_closed,
}


def _at_least(minimum: int, what: str):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be an integer") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{what} must be at least {minimum}")
        return value

    return convert


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strat",
        description="Bounded analysis of strategies over finite reduction systems.",
    )
    parser.add_argument(
        "--machine", action="store_true", help="emit one JSON record instead of text"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def machine_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--machine",
            action="store_true",
            default=argparse.SUPPRESS,
            help="emit one JSON record instead of text",
        )

    p_enum = sub.add_parser("enumerate", help="list derivations, optionally under a strategy")
    p_enum.add_argument("-f", "--file", required=True, help="the .ars document")
    p_enum.add_argument("-s", "--strategy", help="strategy name within the document")
    p_enum.add_argument("--from", dest="source", help="restrict to this source object")
    p_enum.add_argument("--depth", required=True, type=_at_least(1, "depth"))
    machine_flag(p_enum)

    p_apply = sub.add_parser("apply", help="apply a strategy to an object")
    p_apply.add_argument("-f", "--file", required=True)
    p_apply.add_argument("-s", "--strategy", required=True)
    p_apply.add_argument("--from", dest="source", required=True)
    p_apply.add_argument("--depth", required=True, type=_at_least(1, "depth"))
    machine_flag(p_apply)

    p_check = sub.add_parser("check", help="check a closure property of the materialised set")
    p_check.add_argument("-f", "--file", required=True)
    p_check.add_argument("-s", "--strategy", required=True)
    p_check.add_argument("--prop", required=True, choices=sorted(_CHECKS))
    p_check.add_argument("--depth", required=True, type=_at_least(1, "depth"))
    machine_flag(p_check)

    p_wit = sub.add_parser("witness", help="search for a non-closedness lasso witness")
    p_wit.add_argument("-f", "--file", required=True)
    p_wit.add_argument("-s", "--strategy", required=True)
    p_wit.add_argument("--horizon", required=True, type=_at_least(2, "horizon"))
    machine_flag(p_wit)

    p_scn = sub.add_parser("scenario", help="run a built-in scenario")
    p_scn.add_argument("name", choices=["traffic"])
    p_scn.add_argument("--queue-bound", required=True, type=_at_least(1, "queue-bound"))
    p_scn.add_argument("--depth", required=True, type=_at_least(1, "depth"))
    p_scn.add_argument("--strategy", choices=["safe", "universal"], default="safe")
    p_scn.add_argument("--check", choices=["safety", "fairness"])
    machine_flag(p_scn)

    return parser


def _machine(args: argparse.Namespace) -> bool:
    return bool(getattr(args, "machine", False))


def _record(kind: str, verdict: str, witness: str | None, count: int) -> None:
    print(json.dumps({"kind": kind, "verdict": verdict, "witness": witness, "count": count}))


def _load(path: str) -> tuple[speclang.SpecDocument, Ars]:
    text = Path(path).read_text(encoding="utf-8")
    doc = speclang.parse(text)
    return doc, speclang.build_ars(doc)


def _cmd_enumerate(args: argparse.Namespace) -> int:
    doc, ars = _load(args.file)
    if args.source is not None:
        ars.object_index(args.source)
    if args.strategy is not None:
        ls = as_logical(speclang.build_strategy(doc, args.strategy, ars))
        sources = None if args.source is None else (args.source,)
        members = accepted(ls, ars, args.depth, sources).members()
    else:
        members = tuple(enumerate_derivations(ars, args.depth, args.source))
    if _machine(args):
        _record("enumerate", "ok", None, len(members))
    else:
        for d in members:
            print(d.render())
        print(f"COUNT={len(members)}")
    return 0


def _cmd_apply(args: argparse.Namespace) -> int:
    doc, ars = _load(args.file)
    ars.object_index(args.source)
    ls = as_logical(speclang.build_strategy(doc, args.strategy, ars))
    z = accepted(ls, ars, args.depth, (args.source,))
    lassos = ()
    if ls.base.memoryless:
        lassos = tuple(lassos_of_memoryless(ls.base, ars, (args.source,)))
    result = AbstractStrategy(ars, z.finite_part, frozenset(lassos)).apply(args.source)
    if result.status is ApplicationStatus.APPLIES:
        rendered = "{" + ", ".join(result.targets) + "}"
        if _machine(args):
            _record("apply", "applies", rendered, len(result.targets))
        else:
            print(rendered)
    else:
        verdict = "fails" if result.status is ApplicationStatus.FAILS else "indeterminate"
        if _machine(args):
            _record("apply", verdict, None, 0)
        else:
            print(verdict.upper())
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    doc, ars = _load(args.file)
    ls = as_logical(speclang.build_strategy(doc, args.strategy, ars))
    z = accepted(ls, ars, args.depth)
    verdict = _CHECKS[args.prop](z)
    witness = None if verdict.holds else verdict.missing.render()
    if _machine(args):
        _record("check", "true" if verdict.holds else "false", witness, z.size())
    else:
        print(f"PROPERTY={'true' if verdict.holds else 'false'}")
        if witness is not None:
            print(f"WITNESS={witness}")
    return 0 if verdict.holds else 3


def _cmd_witness(args: argparse.Namespace) -> int:
    doc, ars = _load(args.file)
    ls = as_logical(speclang.build_strategy(doc, args.strategy, ars))
    lasso = nonclosed_witness(ls, ars, args.horizon)
    if lasso is None:
        if _machine(args):
            _record("witness", "none", None, 0)
        else:
            print("NO_WITNESS_UP_TO_HORIZON")
        return 0
    if _machine(args):
        _record("witness", "found", lasso.render(), 0)
    else:
        print(f"WITNESS={lasso.render()}")
    return 3


def _cmd_scenario(args: argparse.Namespace) -> int:
    ars = build_traffic_ars(args.queue_bound)
    strategy = never_both_green(ars) if args.strategy == "safe" else Universal()
    support = finite_support(strategy, ars, args.depth, good_starts(ars))
    verdict, witness, code = "ok", None, 0
    if args.check == "safety":
        violation = safety_violation(ars, strategy)
        if violation is not None:
            verdict, witness, code = "violation", violation.render(), 3
    elif args.check == "fairness":
        try:
            lasso = fairness_nonclosed_witness(ars, args.depth)
            verdict, witness, code = "found", lasso.render(), 3
        except NoWitnessUpToHorizon:
            verdict = "none"
    if _machine(args):
        _record("scenario", verdict, witness, support.size())
        return code
    print(f"OBJECTS={len(ars.objects)}")
    print(f"STEPS={len(ars.steps)}")
    print(f"SUPPORT={support.size()}")
    if args.check == "safety":
        print(f"SAFETY={'ok' if code == 0 else 'violation'}")
        if witness is not None:
            print(f"WITNESS={witness}")
    elif args.check == "fairness":
        if witness is None:
            print("NO_WITNESS_UP_TO_HORIZON")
        else:
            print(f"WITNESS={witness}")
    return code


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "apply": _cmd_apply,
    "check": _cmd_check,
    "witness": _cmd_witness,
    "scenario": _cmd_scenario,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except speclang.SpecLangError as err:
        path = getattr(args, "file", "<input>")
        for diag in err.diagnostics:
            print(f"{path}:{diag.render()}", file=sys.stderr)
        return 2
    except (StratError, OSError) as err:
        print(f"strat: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

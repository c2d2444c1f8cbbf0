"""Command-line entry points.

    costsem check FILE
    costsem run-op FILE [--trace]
    costsem run-den FILE
    costsem adequacy FILE
    costsem fuzz --lang {stlc,ma} --count N --seed S

The language of FILE is taken from its extension, ``.stlc`` or ``.ma``.
Exit status: 0 on success or a match, 1 on a mismatch or type error, 2 on a
parse error, 3 when fuel runs out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from costsem import stlc
from costsem.algol import dynamics as mad
from costsem.algol import syntax as ma
from costsem.algol.statics import check_cmd, check_exp
from costsem.harness.differential import (
    AdequacyReport,
    Outcome,
    Verdict,
    differential_ma,
    differential_stlc,
    ma_denotational,
    ma_operational,
    stlc_denotational,
    stlc_operational,
)
from costsem.harness.fuzz import fuzz_campaign
from costsem.harness.gen import GenConfig
from costsem.kernel import Counted, Phase
from costsem.surface import (
    ParseError,
    parse_ma,
    parse_stlc,
    print_ma,
    print_ma_exp,
    print_ma_type,
    print_stlc,
    print_stlc_type,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_FUEL = 3

DEFAULT_FUEL = 1_000_000


class _Usage(Exception):
    pass


def _language(path: str) -> str:
    suffix = Path(path).suffix
    if suffix == ".stlc":
        return "stlc"
    if suffix == ".ma":
        return "ma"
    raise _Usage(f"{path}: expected a .stlc or .ma file")


def _load(path: str):
    lang = _language(path)
    src = Path(path).read_text(encoding="utf-8")
    return lang, (parse_stlc(src) if lang == "stlc" else parse_ma(src))


def _typecheck(lang: str, t):
    if lang == "stlc":
        ty = stlc.check((), t)
        return ty, (None if ty is None else print_stlc_type(ty))
    ty = check_cmd((), (), t) if isinstance(t, ma.CMD_TYPES) else check_exp((), (), t)
    return ty, (None if ty is None else print_ma_type(ty))


def _show(lang: str, t) -> str:
    return print_stlc(t) if lang == "stlc" else print_ma(t)


def _fuel(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("COSTSEM_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _Usage(f"COSTSEM_FUEL is not an integer: {env!r}") from None
    return DEFAULT_FUEL


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def _outcome_text(o: Outcome) -> str:
    if not o.converged:
        return "out of fuel"
    parts = [o.value]
    if isinstance(o.cost, Counted):
        parts.append(f"cost {o.cost.cost}")
    if o.store is not None:
        parts.append(f"store [{', '.join(o.store)}]")
    return "  ".join(parts)


def _single(program: str, phase: Phase, o: Outcome) -> dict:
    return {"program": program, "phase": phase.value, **o.to_json()}


# -- subcommands -----------------------------------------------------------------


def cmd_check(args) -> int:
    lang, t = _load(args.file)
    ty, shown = _typecheck(lang, t)
    ok = ty is not None
    _emit(
        args,
        {"program": _show(lang, t), "well_typed": ok, "type": shown},
        f"{_show(lang, t)} : {shown}" if ok else f"{_show(lang, t)} : ill-typed",
    )
    return EXIT_OK if ok else EXIT_FAIL


def _trace_line(lang: str, state) -> str:
    if lang == "stlc":
        return print_stlc(state)
    if isinstance(state, mad.State):
        store = ", ".join(print_ma_exp(v) for v in state.store)
        return f"[{store}] {print_ma(state.cmd)}"
    return print_ma(state)


def _checked(args):
    lang, t = _load(args.file)
    ty, _ = _typecheck(lang, t)
    if ty is None:
        print(f"{args.file}: ill-typed", file=sys.stderr)
        return lang, None
    return lang, t


def cmd_run_op(args) -> int:
    lang, t = _checked(args)
    if t is None:
        return EXIT_FAIL
    fuel, phase = _fuel(args.fuel), Phase(args.phase)
    if args.trace:
        trace: list = []
        if lang == "stlc":
            stlc.eval_op(t, fuel, trace)
        elif isinstance(t, ma.CMD_TYPES):
            mad.eval_cmd_op(mad.State((), t), fuel, trace)
        else:
            mad.eval_exp_op(t, fuel, trace)
        for state in trace:
            print(_trace_line(lang, state), file=sys.stderr if args.json else sys.stdout)
    o = stlc_operational(t, phase, fuel) if lang == "stlc" else ma_operational(t, phase, fuel)
    _emit(args, _single(_show(lang, t), phase, o), _outcome_text(o))
    return EXIT_OK if o.converged else EXIT_FUEL


def cmd_run_den(args) -> int:
    lang, t = _checked(args)
    if t is None:
        return EXIT_FAIL
    fuel, phase = _fuel(args.fuel), Phase(args.phase)
    o = stlc_denotational(t, phase) if lang == "stlc" else ma_denotational(t, phase, fuel)
    _emit(args, _single(_show(lang, t), phase, o), _outcome_text(o))
    return EXIT_OK if o.converged else EXIT_FUEL


def _report_text(r: AdequacyReport) -> str:
    return "\n".join(
        [
            r.program,
            f"  operational:  {_outcome_text(r.operational)}",
            f"  denotational: {_outcome_text(r.denotational)}",
            f"  verdict: {r.verdict.value}",
        ]
    )


def cmd_adequacy(args) -> int:
    lang, t = _checked(args)
    if t is None:
        return EXIT_FAIL
    fuel, phase = _fuel(args.fuel), Phase(args.phase)
    r = differential_stlc(t, phase, fuel) if lang == "stlc" else differential_ma(t, phase, fuel)
    _emit(args, r.to_json(), _report_text(r))
    if r.verdict is Verdict.MATCH:
        return EXIT_OK
    return EXIT_FUEL if r.verdict is Verdict.BOTH_FUEL else EXIT_FAIL


def cmd_fuzz(args) -> int:
    cfg = GenConfig(seed=args.seed, max_size=args.max_size, max_sig=args.max_sig, fuel=_fuel(args.fuel))
    summary = fuzz_campaign(cfg, args.lang, Phase(args.phase), args.count)
    lines = [
        f"{summary.language} seed {summary.seed}: {summary.count} cases, "
        f"{summary.matches} match, {summary.both_fuel} both-fuel, {len(summary.failures)} failures"
    ]
    for f in summary.failures:
        lines.append(f"  case {f.index}: {f.report.verdict.value}, shrunk to size {f.shrunk_size}:")
        lines.append("    " + f.shrunk.program)
    _emit(args, summary.to_json(), "\n".join(lines))
    return EXIT_OK if not summary.failures else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--fuel", type=int, default=d(None), help="step budget (default 1000000, or $COSTSEM_FUEL)")
    p.add_argument(
        "--phase", choices=[ph.value for ph in Phase], default=d("intensional"), help="cost phase to report"
    )
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="costsem", description="Cost-aware semantics toolkit.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="parse and type-check a program")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run-op", parents=[common], help="run the step-counting machine")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print every intermediate state")
    p.set_defaults(func=cmd_run_op)

    p = sub.add_parser("run-den", parents=[common], help="run the denotational interpreter")
    p.add_argument("file")
    p.set_defaults(func=cmd_run_den)

    p = sub.add_parser("adequacy", parents=[common], help="compare both semantics on a program")
    p.add_argument("file")
    p.set_defaults(func=cmd_adequacy)

    p = sub.add_parser("fuzz", parents=[common], help="differential fuzzing campaign")
    p.add_argument("--lang", choices=["stlc", "ma"], required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=GenConfig.max_size)
    p.add_argument("--max-sig", type=int, default=GenConfig.max_sig)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{getattr(args, 'file', '<input>')}:{exc}", file=sys.stderr)
        return EXIT_PARSE
    except (_Usage, OSError, ValueError) as exc:
        print(f"costsem: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

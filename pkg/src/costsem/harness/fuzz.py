"""Fuzz campaigns with greedy, type-preserving shrinking."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from costsem import stlc
from costsem.algol import semantics as mas
from costsem.algol import syntax as ma
from costsem.algol.statics import check_cmd, check_exp
from costsem.harness.differential import AdequacyReport, Verdict, differential_ma, differential_stlc
from costsem.harness.gen import GenConfig, gen_ma, gen_stlc
from costsem.kernel import Phase

LANGUAGES = ("stlc", "ma")


# -- positions -----------------------------------------------------------------


def _replace(t, path: tuple[str, ...], new):
    if not path:
        return new
    head, *rest = path
    return dataclasses.replace(t, **{head: _replace(getattr(t, head), tuple(rest), new)})


def _stlc_positions(e: stlc.Tm, ctx: tuple, path: tuple) -> Iterator[tuple]:
    yield path, e, ctx
    match e:
        case stlc.Lam(body, ty):
            yield from _stlc_positions(body, (ty, *ctx), (*path, "body"))
        case stlc.Ap(f, a):
            yield from _stlc_positions(f, ctx, (*path, "fn"))
            yield from _stlc_positions(a, ctx, (*path, "arg"))


def _stlc_minimal(ctx: tuple, ty: stlc.Ty) -> list[stlc.Tm]:
    out = [stlc.Var(i) for i, t in enumerate(ctx) if t == ty]
    if isinstance(ty, stlc.Bool):
        out += [stlc.TT(), stlc.FF()]
    elif not out:
        out.append(stlc.Lam(_stlc_minimal((ty.dom, *ctx), ty.cod)[0], ty.dom))
    return out


def _stlc_candidates(e: stlc.Tm, ctx: tuple) -> list[stlc.Tm]:
    ty = stlc.check(ctx, e)
    if ty is None:
        return []
    out = _stlc_minimal(ctx, ty)
    out += [s for _, s, c in _stlc_positions(e, ctx, ()) if s is not e and c == ctx and stlc.check(c, s) == ty]
    return out


def _ma_positions(t, sig: tuple, ctx: tuple, path: tuple) -> Iterator[tuple]:
    yield path, t, sig, ctx
    match t:
        case ma.Suc(e):
            yield from _ma_positions(e, sig, ctx, (*path, "e"))
        case ma.Ifz(s, z, n):
            yield from _ma_positions(s, sig, ctx, (*path, "e"))
            yield from _ma_positions(z, sig, ctx, (*path, "zero"))
            yield from _ma_positions(n, sig, (ma.NAT, *ctx), (*path, "suc"))
        case ma.Lam(body, ty):
            yield from _ma_positions(body, sig, (ty, *ctx), (*path, "body"))
        case ma.Ap(f, a):
            yield from _ma_positions(f, sig, ctx, (*path, "fn"))
            yield from _ma_positions(a, sig, ctx, (*path, "arg"))
        case ma.CmdVal(m) | ma.Ret(m) | ma.Set(_, m):
            yield from _ma_positions(m, sig, ctx, (*path, "m" if isinstance(t, ma.CmdVal) else "e"))
        case ma.While(_, m):
            yield from _ma_positions(m, sig, ctx, (*path, "m"))
        case ma.Bnd(e, m):
            yield from _ma_positions(e, sig, ctx, (*path, "e"))
            ty = check_exp(sig, ctx, e)
            if isinstance(ty, ma.CmdTy):
                yield from _ma_positions(m, sig, (ty.res, *ctx), (*path, "m"))
        case ma.Dcl(e, m):
            yield from _ma_positions(e, sig, ctx, (*path, "e"))
            ty = check_exp(sig, ctx, e)
            if ty is not None:
                yield from _ma_positions(m, (ty, *sig), ctx, (*path, "m"))


def _ma_type(t, sig, ctx):
    if isinstance(t, ma.CMD_TYPES):
        return check_cmd(sig, ctx, t)
    return check_exp(sig, ctx, t)


def _ma_minimal_exp(sig: tuple, ctx: tuple, ty: ma.MaTy) -> list[ma.Exp]:
    out: list[ma.Exp] = [ma.Var(i) for i, t in enumerate(ctx) if t == ty]
    match ty:
        case ma.Unit():
            out.append(ma.Triv())
        case ma.Bool():
            out += [ma.TT(), ma.FF()]
        case ma.Nat():
            out.append(ma.Zero())
        case ma.Arrow(dom, cod):
            out.append(ma.Lam(_ma_minimal_exp(sig, (dom, *ctx), cod)[0], dom))
        case ma.CmdTy(res):
            out.append(ma.CmdVal(_ma_minimal_cmd(sig, ctx, res)[0]))
    return out


def _ma_minimal_cmd(sig: tuple, ctx: tuple, ty: ma.MaTy) -> list[ma.Cmd]:
    out: list[ma.Cmd] = [ma.Get(n) for n, t in enumerate(sig) if t == ty]
    return out + [ma.Ret(e) for e in _ma_minimal_exp(sig, ctx, ty)]


def _ma_candidates(t, sig: tuple, ctx: tuple) -> list:
    ty = _ma_type(t, sig, ctx)
    if ty is None:
        return []
    is_cmd = isinstance(t, ma.CMD_TYPES)
    out = _ma_minimal_cmd(sig, ctx, ty) if is_cmd else _ma_minimal_exp(sig, ctx, ty)
    for _, s, s_sig, s_ctx in _ma_positions(t, sig, ctx, ()):
        if s is t or s_sig != sig or s_ctx != ctx or isinstance(s, ma.CMD_TYPES) != is_cmd:
            continue
        if _ma_type(s, sig, ctx) == ty:
            out.append(s)
    return out


# -- binder removal ----------------------------------------------------------------
#
# Replacing a binder by its body is only sound when the body ignores the bound
# name. The body is substituted with an out-of-range variable in place of
# index 0, so a body that did use it fails the type check of the trial.

_UNBOUND = 1 << 40


def _stlc_strengthen(body: stlc.Tm, depth: int) -> stlc.Tm:
    return stlc.subst_apply(body, (stlc.Var(_UNBOUND), *stlc.sub_id(depth)))


def _ma_strengthen(t, depth: int):
    sigma = (ma.Var(_UNBOUND), *ma.sub_id(depth))
    return ma.subst_cmd(t, sigma) if isinstance(t, ma.CMD_TYPES) else ma.subst_exp(t, sigma)


def _drop_cell(t, depth: int = 0):
    """Remove assignable ``depth`` from scope, or None if it is mentioned."""

    def cell(n: int) -> Optional[int]:
        return None if n == depth else (n - 1 if n > depth else n)

    match t:
        case ma.Get(n):
            k = cell(n)
            return None if k is None else ma.Get(k)
        case ma.Set(n, e) | ma.While(n, e):
            k, inner = cell(n), _drop_cell(e, depth)
            return None if k is None or inner is None else dataclasses.replace(t, n=k, **{
                "e" if isinstance(t, ma.Set) else "m": inner})
        case ma.Dcl(e, m):
            e1, m1 = _drop_cell(e, depth), _drop_cell(m, depth + 1)
            return None if e1 is None or m1 is None else ma.Dcl(e1, m1)
    kids = {}
    for f in dataclasses.fields(t):
        v = getattr(t, f.name)
        if isinstance(v, (*ma.EXP_TYPES, *ma.CMD_TYPES)):
            v = _drop_cell(v, depth)
            if v is None:
                return None
        kids[f.name] = v
    return dataclasses.replace(t, **kids)


def _stlc_unbinders(e: stlc.Tm, ctx: tuple) -> list[stlc.Tm]:
    if isinstance(e, stlc.Ap) and isinstance(e.fn, stlc.Lam):
        return [_stlc_strengthen(e.fn.body, len(ctx))]
    return []


def _ma_unbinders(t, sig: tuple, ctx: tuple) -> list:
    out = []
    match t:
        case ma.Ap(ma.Lam(body, _), _):
            out.append(_ma_strengthen(body, len(ctx)))
        case ma.Ifz(_, z, n):
            out += [z, _ma_strengthen(n, len(ctx))]
        case ma.Bnd(e, m):
            out.append(_ma_strengthen(m, len(ctx)))
            if isinstance(e, ma.CmdVal) and m == ma.Ret(ma.Var(0)):
                out.append(e.m)
        case ma.Dcl(_, m):
            dropped = _drop_cell(m)
            if dropped is not None:
                out.append(dropped)
    return out


# -- shrinking ---------------------------------------------------------------------


def shrink(program, language: str, still_fails: Callable[[object], bool]):
    """Greedy local minimisation.

    Each round tries, smallest first, every typed replacement of every
    subterm and keeps the first whole program that still type-checks at the
    original type and still fails.
    """
    if language == "stlc":
        size, root_ty = stlc.size, (lambda t: stlc.check((), t))
    else:
        size, root_ty = ma.size, (lambda t: _ma_type(t, (), ()))
    goal = root_ty(program)
    current = program
    improved = True
    while improved:
        improved = False
        if language == "stlc":
            sites = [
                (p, s, _stlc_unbinders(s, c) + _stlc_candidates(s, c))
                for p, s, c in _stlc_positions(current, (), ())
            ]
        else:
            sites = [
                (p, s, _ma_unbinders(s, sg, c) + _ma_candidates(s, sg, c))
                for p, s, sg, c in _ma_positions(current, (), (), ())
            ]
        for path, sub, cands in sites:
            for cand in sorted(cands, key=size):
                if size(cand) >= size(sub):
                    continue
                trial = _replace(current, path, cand)
                if root_ty(trial) == goal and still_fails(trial):
                    current = trial
                    improved = True
                    break
            if improved:
                break
    return current


# -- campaigns -----------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    index: int
    report: AdequacyReport
    shrunk: AdequacyReport
    shrunk_size: int

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "report": self.report.to_json(),
            "shrunk": self.shrunk.to_json(),
            "shrunk_size": self.shrunk_size,
        }


@dataclass
class CampaignSummary:
    language: str
    phase: Phase
    seed: int
    count: int = 0
    matches: int = 0
    both_fuel: int = 0
    failures: list[Failure] = field(default_factory=list)
    reports: list[AdequacyReport] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "language": self.language,
            "phase": self.phase.value,
            "seed": self.seed,
            "count": self.count,
            "matches": self.matches,
            "both_fuel": self.both_fuel,
            "failures": [f.to_json() for f in self.failures],
        }


def generate(cfg: GenConfig, language: str):
    return gen_stlc(cfg) if language == "stlc" else gen_ma(cfg)


def differential(program, language: str, phase: Phase, fuel: int, denotation=None) -> AdequacyReport:
    if language == "stlc":
        return differential_stlc(program, phase, fuel, denotation)
    return differential_ma(program, phase, fuel, denotation)


def fuzz_campaign(
    cfg: GenConfig,
    language: str,
    phase: Phase = Phase.INTENSIONAL,
    count: int = 1000,
    denotation=None,
    keep_reports: bool = False,
    stop_after: Optional[int] = None,
    stop_when: Optional[Callable[[Failure], bool]] = None,
    shrink_fuel: Optional[int] = None,
) -> CampaignSummary:
    """Generate ``count`` programs and compare both semantics on each.

    Case ``i`` is generated from ``cfg.for_case(i)``, so a campaign is fully
    determined by ``cfg``. The campaign ends early once ``stop_after``
    failures have been shrunk, or once a shrunk failure satisfies
    ``stop_when``. Shrinking trials run with ``shrink_fuel`` (by default the
    smaller of ``cfg.fuel`` and 10^4); a smaller budget can only make a trial
    look inconclusive, never make a passing program look failing.
    """
    if language not in LANGUAGES:
        raise ValueError(f"unknown language {language!r}")
    summary = CampaignSummary(language, phase, cfg.seed)
    size = stlc.size if language == "stlc" else ma.size
    sfuel = shrink_fuel if shrink_fuel is not None else min(cfg.fuel, 10_000)
    for i in range(count):
        program = generate(cfg.for_case(i), language)
        report = differential(program, language, phase, cfg.fuel, denotation)
        summary.count += 1
        if keep_reports:
            summary.reports.append(report)
        if report.verdict is Verdict.MATCH:
            summary.matches += 1
        elif report.verdict is Verdict.BOTH_FUEL:
            summary.both_fuel += 1
        else:
            small = shrink(
                program,
                language,
                lambda t: not differential(t, language, phase, sfuel, denotation).verdict.ok,
            )
            shrunk = differential(small, language, phase, cfg.fuel, denotation)
            failure = Failure(i, report, shrunk, size(small))
            summary.failures.append(failure)
            if stop_after is not None and len(summary.failures) >= stop_after:
                break
            if stop_when is not None and stop_when(failure):
                break
    return summary


def mutated(language: str, site: str):
    """A denotational interpreter with one step insertion removed."""
    if language == "stlc":
        return stlc.Denotation(drop=frozenset({site}))
    return mas.Denotation(drop=frozenset({site}))

"""Type-directed random program generators.

Generation works backwards from a goal type under a size budget. Every
choice is made only when its minimal completion still fits the remaining
budget, so generation never dead-ends and the result is always well typed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from costsem import stlc
from costsem.algol import syntax as ma

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 50
    max_sig: int = 4
    fuel: int = 1_000_000

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")

    def for_case(self, index: int) -> "GenConfig":
        seed = (self.seed * 0x9E3779B97F4A7C15 + index * 0xBF58476D1CE4E5B9 + 1) & MASK64
        return GenConfig(seed, self.max_size, self.max_sig, self.fuel)


def _split(rng: random.Random, budget: int, mins: list[int]) -> list[int]:
    """Upper bounds for each child, each at least its minimum, summing to at most ``budget``."""
    out = []
    rest = sum(mins)
    for m in mins:
        rest -= m
        hi = budget - rest
        b = rng.randint(m, hi) if hi > m else m
        out.append(b)
        budget -= b
    return out


# -- STLC ------------------------------------------------------------------------

_BB = stlc.Arrow(stlc.BOOL, stlc.BOOL)
STLC_ARG_TYPES = (stlc.BOOL, stlc.BOOL, _BB, stlc.Arrow(_BB, stlc.BOOL), stlc.Arrow(stlc.BOOL, _BB))


class _StlcGen:
    def __init__(self, rng: random.Random):
        self.rng = rng

    def min_size(self, ctx: list, ty: stlc.Ty) -> int:
        if isinstance(ty, stlc.Bool) or ty in ctx:
            return 1
        return 1 + self.min_size([ty.dom, *ctx], ty.cod)

    def term(self, ctx: list, ty: stlc.Ty, budget: int) -> stlc.Tm:
        rng = self.rng
        options = []
        var_ixs = [i for i, t in enumerate(ctx) if t == ty]
        if var_ixs:
            options.append(("var", 2))
        if isinstance(ty, stlc.Bool):
            options.append(("lit", 2))
        if isinstance(ty, stlc.Arrow) and budget >= 1 + self.min_size([ty.dom, *ctx], ty.cod):
            options.append(("lam", 4))
        arg_ty = rng.choice(STLC_ARG_TYPES)
        fn_ty = stlc.Arrow(arg_ty, ty)
        if budget >= 1 + self.min_size(ctx, fn_ty) + self.min_size(ctx, arg_ty):
            options.append(("ap", budget))
        kind = rng.choices([k for k, _ in options], [w for _, w in options])[0]
        match kind:
            case "var":
                return stlc.Var(rng.choice(var_ixs))
            case "lit":
                return rng.choice((stlc.TT(), stlc.FF()))
            case "lam":
                return stlc.Lam(self.term([ty.dom, *ctx], ty.cod, budget - 1), ty.dom)
        fb, ab = _split(rng, budget - 1, [self.min_size(ctx, fn_ty), self.min_size(ctx, arg_ty)])
        return stlc.Ap(self.term(ctx, fn_ty, fb), self.term(ctx, arg_ty, ab))


def _target_size(rng: random.Random, max_size: int) -> int:
    # half the cases use the full budget, the rest a uniform smaller one
    return max_size if rng.random() < 0.5 else rng.randint(1, max_size)


def gen_stlc(cfg: GenConfig) -> stlc.Tm:
    """A closed boolean term of size at most ``cfg.max_size``."""
    rng = random.Random(cfg.seed)
    return _StlcGen(rng).term([], stlc.BOOL, _target_size(rng, cfg.max_size))


# -- Modernized Algol --------------------------------------------------------------

POSITIVE = (ma.UNIT, ma.BOOL, ma.NAT)
_NB = ma.Arrow(ma.NAT, ma.BOOL)
MA_ARG_TYPES = (ma.BOOL, ma.NAT, ma.UNIT, _NB, ma.CmdTy(ma.BOOL), ma.CmdTy(ma.NAT))
MA_BIND_TYPES = (
    ma.BOOL, ma.BOOL, ma.NAT, ma.NAT, ma.UNIT, _NB,
    ma.CmdTy(ma.BOOL), ma.Arrow(ma.NAT, ma.CmdTy(ma.NAT)),
)

# dcl n := <k> in while[guard] { countdown body }: k iterations
_COUNTDOWN_SIZE = 26


class _MaGen:
    def __init__(self, rng: random.Random, max_sig: int):
        self.rng = rng
        self.max_sig = max_sig
        # signature levels (counted from the outermost cell) a loop body must not assign
        self.guarded: set[int] = set()

    # minimal completions

    def exp_min(self, ctx: list, ty: ma.MaTy) -> int:
        if ty in ctx or ma.is_positive(ty):
            return 1
        if isinstance(ty, ma.Arrow):
            return 1 + self.exp_min([ty.dom, *ctx], ty.cod)
        return 1 + self.cmd_min((), ctx, ty.res)

    def cmd_min(self, sig: tuple, ctx: list, ty: ma.MaTy) -> int:
        if ty in sig:
            return 1
        return 1 + self.exp_min(ctx, ty)

    # expressions

    def exp(self, sig: tuple, ctx: list, ty: ma.MaTy, budget: int) -> ma.Exp:
        rng = self.rng
        options = []
        var_ixs = [i for i, t in enumerate(ctx) if t == ty]
        if var_ixs:
            options.append(("var", 3))
        if ma.is_positive(ty):
            options.append(("lit", 2))
        if ty == ma.NAT and budget >= 2:
            options.append(("suc", 2))
        if isinstance(ty, ma.Arrow) and budget >= 1 + self.exp_min([ty.dom, *ctx], ty.cod):
            options.append(("lam", 4))
        if isinstance(ty, ma.CmdTy) and budget >= 1 + self.cmd_min(sig, ctx, ty.res):
            options.append(("cmd", 4))
        ifz_min = 1 + 1 + self.exp_min(ctx, ty) + self.exp_min([ma.NAT, *ctx], ty)
        if budget >= ifz_min:
            options.append(("ifz", budget // 2))
        arg_ty = rng.choice(MA_ARG_TYPES)
        fn_ty = ma.Arrow(arg_ty, ty)
        if budget >= 1 + self.exp_min(ctx, fn_ty) + self.exp_min(ctx, arg_ty):
            options.append(("ap", budget // 2))
        kind = rng.choices([k for k, _ in options], [w for _, w in options])[0]
        match kind:
            case "var":
                return ma.Var(rng.choice(var_ixs))
            case "lit":
                if ty == ma.UNIT:
                    return ma.Triv()
                if ty == ma.NAT:
                    return ma.Zero()
                return rng.choice((ma.TT(), ma.FF()))
            case "suc":
                return ma.Suc(self.exp(sig, ctx, ma.NAT, budget - 1))
            case "lam":
                return ma.Lam(self.exp(sig, [ty.dom, *ctx], ty.cod, budget - 1), ty.dom)
            case "cmd":
                return ma.CmdVal(self.cmd(sig, ctx, ty.res, budget - 1))
            case "ifz":
                sb, zb, nb = _split(
                    rng, budget - 1, [1, self.exp_min(ctx, ty), self.exp_min([ma.NAT, *ctx], ty)]
                )
                return ma.Ifz(
                    self.exp(sig, ctx, ma.NAT, sb),
                    self.exp(sig, ctx, ty, zb),
                    self.exp(sig, [ma.NAT, *ctx], ty, nb),
                )
        fb, ab = _split(rng, budget - 1, [self.exp_min(ctx, fn_ty), self.exp_min(ctx, arg_ty)])
        return ma.Ap(self.exp(sig, ctx, fn_ty, fb), self.exp(sig, ctx, arg_ty, ab))

    # commands

    def cmd(self, sig: tuple, ctx: list, ty: ma.MaTy, budget: int) -> ma.Cmd:
        rng = self.rng
        options = []
        cells = [n for n, t in enumerate(sig) if t == ty]
        writable = [n for n in cells if len(sig) - 1 - n not in self.guarded]
        if budget >= 1 + self.exp_min(ctx, ty):
            options.append(("ret", 2))
        if cells:
            options.append(("get", 3))
        if writable and budget >= 1 + self.exp_min(ctx, ty):
            options.append(("set", 3))
        bind_ty = rng.choice(MA_BIND_TYPES)
        bnd_min = 1 + self.exp_min(ctx, ma.CmdTy(bind_ty)) + self.cmd_min(sig, [bind_ty, *ctx], ty)
        if budget >= bnd_min:
            options.append(("bnd", budget))
        cell_ty = rng.choices(POSITIVE, (1, 3, 2))[0]
        if ma.is_positive(ty) and len(sig) < self.max_sig:
            dcl_min = 1 + 1 + self.cmd_min((cell_ty, *sig), ctx, ty)
            if budget >= dcl_min:
                options.append(("dcl", budget if not sig else budget // 2))
        guards = [n for n, t in enumerate(sig) if t == ma.BOOL]
        if ty == ma.UNIT and guards and budget >= 7:
            options.append(("while", budget))
        after_min = self.cmd_min(sig, [ma.UNIT, *ctx], ty)
        if guards and budget >= 2 + 7 + after_min:
            options.append(("loop-then", 2 * budget))
        kind = rng.choices([k for k, _ in options], [w for _, w in options])[0]
        match kind:
            case "ret":
                return ma.Ret(self.exp(sig, ctx, ty, budget - 1))
            case "get":
                return ma.Get(rng.choice(cells))
            case "set":
                return ma.Set(rng.choice(writable), self.exp(sig, ctx, ty, budget - 1))
            case "bnd":
                ctx1 = [bind_ty, *ctx]
                eb, mb = _split(
                    rng, budget - 1, [self.exp_min(ctx, ma.CmdTy(bind_ty)), self.cmd_min(sig, ctx1, ty)]
                )
                return ma.Bnd(self.exp(sig, ctx, ma.CmdTy(bind_ty), eb), self.cmd(sig, ctx1, ty, mb))
            case "dcl":
                sig1 = (cell_ty, *sig)
                mmin = self.cmd_min(sig1, ctx, ty)
                eb = rng.randint(1, max(1, min(1 + budget // 5, budget - 1 - mmin)))
                mb = budget - 1 - eb
                init = self.exp(sig, ctx, cell_ty, eb)
                if cell_ty == ma.BOOL and rng.random() < 0.6:
                    init = ma.TT()  # give loops on this cell a chance to run
                return ma.Dcl(init, self.cmd(sig1, ctx, ty, mb))
            case "loop-then":
                lb, mb = _split(rng, budget - 2, [7, after_min])
                loop = self.loop(sig, ctx, rng.choice(guards), lb)
                return ma.Bnd(ma.CmdVal(loop), self.cmd(sig, [ma.UNIT, *ctx], ty, mb))
        return self.loop(sig, ctx, rng.choice(guards), budget)

    def loop(self, sig: tuple, ctx: list, guard: int, budget: int) -> ma.Cmd:
        """A while loop biased towards termination.

        The body clears the guard (usually) or counts a nat cell down when
        one is in scope and the budget allows. Nothing else in the body may
        assign the guard, so a loop diverges only when the clearing
        expression evaluates to ``tt``.
        """
        rng = self.rng
        counters = [n for n, t in enumerate(sig) if t == ma.NAT]
        if counters and budget >= _COUNTDOWN_SIZE and rng.random() < 0.5:
            return ma.While(guard, self._countdown_body(guard, rng.choice(counters)))
        # while[g] { bnd _ <- cmd { set[g](ff) }; m }
        rest = budget - 6
        clear = ma.FF() if rng.random() < 0.9 else self.exp(sig, ctx, ma.BOOL, 1 + rest // 3)
        rest -= ma.size(clear) - 1
        ctx1 = [ma.BOOL, *ctx]
        if rest > 2 and rng.random() < 0.7:
            level = len(sig) - 1 - guard
            fresh = level not in self.guarded
            self.guarded.add(level)
            try:
                body = self.cmd(sig, ctx1, ma.UNIT, 2 + rng.randint(0, rest - 2))
            finally:
                if fresh:
                    self.guarded.discard(level)
        else:
            body = ma.Ret(ma.Triv())
        return ma.While(guard, ma.Bnd(ma.CmdVal(ma.Set(guard, clear)), body))

    @staticmethod
    def _countdown_body(guard: int, counter: int) -> ma.Cmd:
        # bnd k <- cmd{get[c]}; bnd _ <- cmd{set[c](pred k)}; bnd _ <- cmd{set[g](k >= 2)}; ret ()
        pred = ma.Ifz(ma.Var(0), ma.Zero(), ma.Var(0))
        at_least_two = ma.Ifz(ma.Var(1), ma.FF(), ma.Ifz(ma.Var(0), ma.FF(), ma.TT()))
        return ma.Bnd(
            ma.CmdVal(ma.Get(counter)),
            ma.Bnd(
                ma.CmdVal(ma.Set(counter, pred)),
                ma.Bnd(ma.CmdVal(ma.Set(guard, at_least_two)), ma.Ret(ma.Triv())),
            ),
        )


def gen_ma(cfg: GenConfig) -> ma.Cmd:
    """A closed boolean command over the empty signature."""
    rng = random.Random(cfg.seed)
    gen = _MaGen(rng, cfg.max_sig)
    return gen.cmd((), [], ma.BOOL, max(_target_size(rng, cfg.max_size), 2))


def gen_stlc_open(rng: random.Random, ctx: Sequence[stlc.Ty], ty: stlc.Ty, size: int) -> stlc.Tm:
    """A term of type ``ty`` under ``ctx``, as small as possible when ``size`` is too small."""
    g = _StlcGen(rng)
    return g.term(list(ctx), ty, max(size, g.min_size(list(ctx), ty)))


def gen_ma_open(
    rng: random.Random, sig: Sequence[ma.MaTy], ctx: Sequence[ma.MaTy], ty: ma.MaTy, size: int,
    command: bool = True, max_sig: int = 4,
):
    """A command (or expression) of type ``ty`` over ``sig`` and ``ctx``."""
    g = _MaGen(rng, max_sig)
    sig, ctx = tuple(sig), list(ctx)
    if command:
        return g.cmd(sig, ctx, ty, max(size, g.cmd_min(sig, ctx, ty)))
    return g.exp(sig, ctx, ty, max(size, g.exp_min(ctx, ty)))

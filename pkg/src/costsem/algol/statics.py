"""Type synthesis for expressions and commands."""

from __future__ import annotations

from typing import Optional, Sequence

from costsem.algol.syntax import (
    BOOL,
    NAT,
    UNIT,
    Ap,
    Arrow,
    Bnd,
    CmdTy,
    CmdVal,
    Dcl,
    FF,
    Get,
    Ifz,
    Lam,
    MaTy,
    Ret,
    Set,
    Suc,
    TT,
    Triv,
    Var,
    While,
    Zero,
    is_positive,
    is_value,
    peel_suc,
)


def check_exp(sig: Sequence[MaTy], ctx: Sequence[MaTy], e) -> Optional[MaTy]:
    match e:
        case Var(ix):
            return ctx[ix] if 0 <= ix < len(ctx) else None
        case Triv():
            return UNIT
        case Zero():
            return NAT
        case Suc():
            _, core = peel_suc(e)
            return NAT if check_exp(sig, ctx, core) == NAT else None
        case TT() | FF():
            return BOOL
        case Ifz(s, z, n):
            if check_exp(sig, ctx, s) != NAT:
                return None
            tz = check_exp(sig, ctx, z)
            if tz is None or check_exp(sig, [NAT, *ctx], n) != tz:
                return None
            return tz
        case Lam(body, ty):
            if ty is None:
                return None
            cod = check_exp(sig, [ty, *ctx], body)
            return None if cod is None else Arrow(ty, cod)
        case Ap(f, a):
            tf = check_exp(sig, ctx, f)
            if isinstance(tf, Arrow) and check_exp(sig, ctx, a) == tf.dom:
                return tf.cod
            return None
        case CmdVal(m):
            tm = check_cmd(sig, ctx, m)
            return None if tm is None else CmdTy(tm)
    return None


def check_cmd(sig: Sequence[MaTy], ctx: Sequence[MaTy], m) -> Optional[MaTy]:
    match m:
        case Ret(e):
            return check_exp(sig, ctx, e)
        case Bnd(e, body):
            te = check_exp(sig, ctx, e)
            if not isinstance(te, CmdTy):
                return None
            return check_cmd(sig, [te.res, *ctx], body)
        case While(n, body):
            if not (0 <= n < len(sig)) or sig[n] != BOOL:
                return None
            return UNIT if check_cmd(sig, ctx, body) == UNIT else None
        case Get(n):
            return sig[n] if 0 <= n < len(sig) else None
        case Set(n, e):
            if not (0 <= n < len(sig)) or check_exp(sig, ctx, e) != sig[n]:
                return None
            return sig[n]
        case Dcl(e, body):
            te = check_exp(sig, ctx, e)
            if te is None or not is_positive(te):
                return None
            tb = check_cmd((te, *sig), ctx, body)
            return tb if tb is not None and is_positive(tb) else None
    return None


def check_store(sig: Sequence[MaTy], store: Sequence) -> bool:
    return len(sig) == len(store) and all(
        is_value(v) and check_exp((), (), v) == ty for ty, v in zip(sig, store)
    )

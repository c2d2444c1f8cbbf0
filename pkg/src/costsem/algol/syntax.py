"""Syntax of Modernized Algol: types, expressions, commands, signatures.

Expressions and commands are nameless. Variables index the context
innermost-first; assignables index the signature the same way, so the
most recently declared assignable is 0. Signature extensions are
witnessed by ``GeProof`` values and act on terms by ``weaken_exp`` /
``weaken_cmd``.

Numerals are ``Suc`` chains that can get long inside loops, so every
traversal here peels them iteratively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

# -- types -----------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Bool:
    pass


@dataclass(frozen=True)
class Nat:
    pass


@dataclass(frozen=True)
class Arrow:
    dom: MaTy
    cod: MaTy


@dataclass(frozen=True)
class CmdTy:
    res: MaTy


MaTy = Union[Unit, Bool, Nat, Arrow, CmdTy]
UNIT, BOOL, NAT = Unit(), Bool(), Nat()

Sig = tuple
"""A signature: a tuple of positive types, most recent assignable first."""


def is_positive(ty: MaTy) -> bool:
    return isinstance(ty, (Unit, Bool, Nat))


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    ix: int


@dataclass(frozen=True)
class Triv:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Suc:
    e: Exp


@dataclass(frozen=True)
class Ifz:
    e: Exp
    zero: Exp
    suc: Exp  # binds the predecessor


@dataclass(frozen=True)
class TT:
    pass


@dataclass(frozen=True)
class FF:
    pass


@dataclass(frozen=True)
class Lam:
    body: Exp
    ty: Optional[MaTy] = None


@dataclass(frozen=True)
class Ap:
    fn: Exp
    arg: Exp


@dataclass(frozen=True)
class CmdVal:
    m: Cmd


Exp = Union[Var, Triv, Zero, Suc, Ifz, TT, FF, Lam, Ap, CmdVal]

# -- commands ----------------------------------------------------------------


@dataclass(frozen=True)
class Ret:
    e: Exp


@dataclass(frozen=True)
class Bnd:
    e: Exp
    m: Cmd  # binds the result of e


@dataclass(frozen=True)
class While:
    n: int
    m: Cmd


@dataclass(frozen=True)
class Get:
    n: int


@dataclass(frozen=True)
class Set:
    n: int
    e: Exp


@dataclass(frozen=True)
class Dcl:
    e: Exp
    m: Cmd  # runs with the new assignable at index 0


Cmd = Union[Ret, Bnd, While, Get, Set, Dcl]
Term = Union[Exp, Cmd]

EXP_TYPES = (Var, Triv, Zero, Suc, Ifz, TT, FF, Lam, Ap, CmdVal)
CMD_TYPES = (Ret, Bnd, While, Get, Set, Dcl)


def peel_suc(e: Exp) -> tuple[int, Exp]:
    k = 0
    while isinstance(e, Suc):
        k += 1
        e = e.e
    return k, e


def suc_n(k: int, e: Exp) -> Exp:
    for _ in range(k):
        e = Suc(e)
    return e


def numeral(n: int) -> Exp:
    return suc_n(n, Zero())


def numeral_value(e: Exp) -> Optional[int]:
    k, core = peel_suc(e)
    return k if isinstance(core, Zero) else None


def is_value(e: Exp) -> bool:
    _, e = peel_suc(e)
    return isinstance(e, (Triv, Zero, TT, FF, Lam, CmdVal))


def is_final(m: Cmd) -> bool:
    return isinstance(m, Ret) and is_value(m.e)


def size(t: Term) -> int:
    match t:
        case Suc():
            k, core = peel_suc(t)
            return k + size(core)
        case Ifz(e, z, s):
            return 1 + size(e) + size(z) + size(s)
        case Lam(body, _):
            return 1 + size(body)
        case Ap(f, a):
            return 1 + size(f) + size(a)
        case CmdVal(m) | Ret(m) | While(_, m):
            return 1 + size(m)
        case Bnd(e, m) | Dcl(e, m):
            return 1 + size(e) + size(m)
        case Set(_, e):
            return 1 + size(e)
    return 1


# -- the signature preorder ----------------------------------------------------


@dataclass(frozen=True)
class Refl:
    pass


@dataclass(frozen=True)
class Mono:
    p: GeProof


@dataclass(frozen=True)
class Extend:
    p: GeProof


GeProof = Union[Refl, Mono, Extend]
REFL = Refl()


def sh(p: GeProof, n: int) -> int:
    """Where assignable ``n`` of the smaller signature sits in the larger one."""
    shift = 0
    while True:
        match p:
            case Refl():
                return n + shift
            case Mono(q):
                if n == 0:
                    return shift
                n -= 1
                shift += 1
                p = q
            case Extend(q):
                shift += 1
                p = q


def tr(p: GeProof, q: GeProof) -> GeProof:
    """Transitivity: from ``p : S2 >= S1`` and ``q : S1 >= S0`` build ``S2 >= S0``."""
    match p:
        case Refl():
            return q
        case Extend(p1):
            return Extend(tr(p1, q))
        case Mono(p1):
            match q:
                case Refl():
                    return p
                case Mono(q1):
                    return Mono(tr(p1, q1))
                case Extend(q1):
                    return Extend(tr(p1, q1))
    raise TypeError(f"not a signature extension: {p!r}")


def ge_valid(p: GeProof, big: Sequence[MaTy], small: Sequence[MaTy]) -> bool:
    """Does ``p`` witness that ``small`` is a subsequence of ``big``?"""
    big, small = tuple(big), tuple(small)
    while True:
        match p:
            case Refl():
                return big == small
            case Mono(q):
                if not big or not small or big[0] != small[0]:
                    return False
                big, small, p = big[1:], small[1:], q
            case Extend(q):
                if not big:
                    return False
                big, p = big[1:], q


# -- signature weakening -------------------------------------------------------


def weaken_exp(p: GeProof, e: Exp) -> Exp:
    if isinstance(p, Refl):
        return e
    match e:
        case Suc():
            k, core = peel_suc(e)
            return suc_n(k, weaken_exp(p, core))
        case Ifz(s, z, n):
            return Ifz(weaken_exp(p, s), weaken_exp(p, z), weaken_exp(p, n))
        case Lam(body, ty):
            return Lam(weaken_exp(p, body), ty)
        case Ap(f, a):
            return Ap(weaken_exp(p, f), weaken_exp(p, a))
        case CmdVal(m):
            return CmdVal(weaken_cmd(p, m))
    return e


def weaken_cmd(p: GeProof, m: Cmd) -> Cmd:
    if isinstance(p, Refl):
        return m
    match m:
        case Ret(e):
            return Ret(weaken_exp(p, e))
        case Bnd(e, body):
            return Bnd(weaken_exp(p, e), weaken_cmd(p, body))
        case While(n, body):
            return While(sh(p, n), weaken_cmd(p, body))
        case Get(n):
            return Get(sh(p, n))
        case Set(n, e):
            return Set(sh(p, n), weaken_exp(p, e))
        case Dcl(e, body):
            return Dcl(weaken_exp(p, e), weaken_cmd(Mono(p), body))
    raise TypeError(f"not a command: {m!r}")


def weaken_sub(p: GeProof, sigma: Sub) -> Sub:
    return tuple(weaken_exp(p, t) for t in sigma)


# -- context shifting and substitution ----------------------------------------

Sub = tuple
"""A substitution over a fixed signature: entry ``i`` replaces ``Var(i)``."""


def shift_exp(e: Exp, by: int = 1, cutoff: int = 0) -> Exp:
    match e:
        case Var(ix):
            return Var(ix + by) if ix >= cutoff else e
        case Suc():
            k, core = peel_suc(e)
            return suc_n(k, shift_exp(core, by, cutoff))
        case Ifz(s, z, n):
            return Ifz(shift_exp(s, by, cutoff), shift_exp(z, by, cutoff), shift_exp(n, by, cutoff + 1))
        case Lam(body, ty):
            return Lam(shift_exp(body, by, cutoff + 1), ty)
        case Ap(f, a):
            return Ap(shift_exp(f, by, cutoff), shift_exp(a, by, cutoff))
        case CmdVal(m):
            return CmdVal(shift_cmd(m, by, cutoff))
    return e


def shift_cmd(m: Cmd, by: int = 1, cutoff: int = 0) -> Cmd:
    match m:
        case Ret(e):
            return Ret(shift_exp(e, by, cutoff))
        case Bnd(e, body):
            return Bnd(shift_exp(e, by, cutoff), shift_cmd(body, by, cutoff + 1))
        case While(n, body):
            return While(n, shift_cmd(body, by, cutoff))
        case Get():
            return m
        case Set(n, e):
            return Set(n, shift_exp(e, by, cutoff))
        case Dcl(e, body):
            return Dcl(shift_exp(e, by, cutoff), shift_cmd(body, by, cutoff))
    raise TypeError(f"not a command: {m!r}")


def sub_id(n: int) -> Sub:
    return tuple(Var(i) for i in range(n))


def sub_cons(e: Exp, sigma: Sub) -> Sub:
    return (e, *sigma)


def sub_shift(sigma: Sub) -> Sub:
    return (Var(0), *(shift_exp(t) for t in sigma))


def subst_exp(e: Exp, sigma: Sub) -> Exp:
    match e:
        case Var(ix):
            return sigma[ix]
        case Suc():
            k, core = peel_suc(e)
            return suc_n(k, subst_exp(core, sigma))
        case Ifz(s, z, n):
            return Ifz(subst_exp(s, sigma), subst_exp(z, sigma), subst_exp(n, sub_shift(sigma)))
        case Lam(body, ty):
            return Lam(subst_exp(body, sub_shift(sigma)), ty)
        case Ap(f, a):
            return Ap(subst_exp(f, sigma), subst_exp(a, sigma))
        case CmdVal(m):
            return CmdVal(subst_cmd(m, sigma))
    return e


def subst_cmd(m: Cmd, sigma: Sub) -> Cmd:
    match m:
        case Ret(e):
            return Ret(subst_exp(e, sigma))
        case Bnd(e, body):
            return Bnd(subst_exp(e, sigma), subst_cmd(body, sub_shift(sigma)))
        case While(n, body):
            return While(n, subst_cmd(body, sigma))
        case Get():
            return m
        case Set(n, e):
            return Set(n, subst_exp(e, sigma))
        case Dcl(e, body):
            # the body lives one assignable further out
            return Dcl(subst_exp(e, sigma), subst_cmd(body, weaken_sub(Extend(REFL), sigma)))
    raise TypeError(f"not a command: {m!r}")


def coer(e: Exp) -> Exp:
    """Move a closed value of positive type to another signature.

    Positive values mention no assignables, so this is the identity on
    structure; it refuses anything else.
    """
    _, core = peel_suc(e)
    if not isinstance(core, (Triv, Zero, TT, FF)) or (core is not e and not isinstance(core, Zero)):
        raise TypeError(f"coer needs a value of positive type, got {e!r}")
    return e

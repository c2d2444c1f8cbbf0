"""Possible-worlds, cost-instrumented denotational semantics.

An expression at signature ``sig`` is interpreted at any future signature
``sig1`` together with a witness ``p : sig1 >= sig``; its meaning is a total
computation. A command additionally takes a semantic store over ``sig1`` and
yields a lifted computation of a value and a final store. Function and
command values are families over further extensions of the world they were
built in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from costsem.algol.syntax import (
    BOOL,
    NAT,
    REFL,
    UNIT,
    Ap,
    Bnd,
    CmdVal,
    Dcl,
    Exp,
    Extend,
    FF,
    GeProof,
    Get,
    Ifz,
    Lam,
    MaTy,
    Mono,
    Ret,
    Set,
    Suc,
    TT,
    Triv,
    Var,
    While,
    Zero,
    numeral,
    peel_suc,
    sh,
    tr,
)
from costsem.kernel import Comp, comp_bind, comp_ret, comp_step
from costsem.lift import Continue, Done, Lift, iterate, lift_bind, lift_of_comp, lift_ret, lift_step

# -- semantic values ---------------------------------------------------------


@dataclass(frozen=True)
class U:
    pass


@dataclass(frozen=True)
class B:
    b: bool


@dataclass(frozen=True)
class N:
    n: int


@dataclass(frozen=True, eq=False)
class Fn:
    """``f(sig, p, a)`` applies the function at a future world ``sig``."""

    f: Callable[[tuple, GeProof, "SemVal"], Comp["SemVal"]]


@dataclass(frozen=True, eq=False)
class C:
    """``f(sig, p, store)`` runs the command at a future world ``sig``."""

    f: Callable[[tuple, GeProof, tuple], Lift[tuple["SemVal", tuple]]]


SemVal = Union[U, B, N, Fn, C]
SemStore = tuple
SemEnv = tuple

POSITIVE_VALUES = (U, B, N)


def up(p: GeProof, v: SemVal) -> SemVal:
    """Transport a semantic value along a signature extension."""
    match v:
        case Fn(f):
            return Fn(lambda sig, q, a: f(sig, tr(q, p), a))
        case C(f):
            return C(lambda sig, q, s: f(sig, tr(q, p), s))
    return v


def up_env(p: GeProof, env: Sequence[SemVal]) -> SemEnv:
    if all(isinstance(v, POSITIVE_VALUES) for v in env):
        return tuple(env)
    return tuple(up(p, v) for v in env)


def positive_type(v: SemVal) -> MaTy:
    match v:
        case U():
            return UNIT
        case B():
            return BOOL
        case N():
            return NAT
    raise TypeError(f"not a value of positive type: {v!r}")


def readback(v: SemVal) -> Exp:
    """The closed syntactic value naming a positive semantic value."""
    match v:
        case U():
            return Triv()
        case B(b):
            return TT() if b else FF()
        case N(n):
            return numeral(n)
    raise TypeError(f"cannot read back {v!r}")


def reflect(e: Exp) -> SemVal:
    """Interpret a closed syntactic value of positive type."""
    match e:
        case Triv():
            return U()
        case TT():
            return B(True)
        case FF():
            return B(False)
    k, core = peel_suc(e)
    if isinstance(core, Zero):
        return N(k)
    raise TypeError(f"not a positive value: {e!r}")


# -- the interpreter -----------------------------------------------------------

STEP_SITES = frozenset(
    {"ap", "ifz-zero", "ifz-suc", "bnd", "get", "set", "dcl", "while-ff", "while-iter"}
)


class Denotation:
    """Interpreter for expressions and commands.

    ``drop`` switches off individual step insertions; it is a mutation hook
    for checking that the differential harness is not vacuous.
    """

    def __init__(self, drop: frozenset[str] = frozenset()):
        unknown = set(drop) - STEP_SITES
        if unknown:
            raise ValueError(f"unknown step sites: {sorted(unknown)}")
        self.drop = frozenset(drop)

    def _charge(self, site: str, c: int) -> int:
        return 0 if site in self.drop else c

    def exp(self, e: Exp, sig: tuple, p: GeProof, env: SemEnv) -> Comp[SemVal]:
        match e:
            case Var(ix):
                return comp_ret(env[ix])
            case Triv():
                return comp_ret(U())
            case TT():
                return comp_ret(B(True))
            case FF():
                return comp_ret(B(False))
            case Zero():
                return comp_ret(N(0))
            case Suc():
                k, core = peel_suc(e)
                inner = self.exp(core, sig, p, env)
                return Comp(inner.cost, N(inner.value.n + k))
            case Ifz(s, z, n):

                def branch(v: N) -> Comp[SemVal]:
                    if v.n == 0:
                        return comp_step(self._charge("ifz-zero", 1), self.exp(z, sig, p, env))
                    return comp_step(self._charge("ifz-suc", 1), self.exp(n, sig, p, (N(v.n - 1), *env)))

                return comp_bind(self.exp(s, sig, p, env), branch)
            case Lam(body, _):
                return comp_ret(
                    Fn(lambda sig2, q, a: self.exp(body, sig2, tr(q, p), (a, *up_env(q, env))))
                )
            case Ap(f, a):
                charge = self._charge("ap", 1)
                return comp_bind(
                    self.exp(f, sig, p, env),
                    lambda fv: comp_bind(
                        self.exp(a, sig, p, env), lambda av: comp_step(charge, fv.f(sig, REFL, av))
                    ),
                )
            case CmdVal(m):
                return comp_ret(
                    C(lambda sig2, q, store: self.cmd(m, sig2, tr(q, p), up_env(q, env), store))
                )
        raise TypeError(f"not an expression: {e!r}")

    def cmd(self, m, sig: tuple, p: GeProof, env: SemEnv, store: SemStore) -> Lift[tuple[SemVal, SemStore]]:
        match m:
            case Ret(e):
                return lift_of_comp(comp_bind(self.exp(e, sig, p, env), lambda v: comp_ret((v, store))))
            case Bnd(e, body):
                charge = self._charge("bnd", 1)

                def rest(r: tuple[SemVal, SemStore]) -> Lift[tuple[SemVal, SemStore]]:
                    a, store1 = r
                    return lift_step(charge, self.cmd(body, sig, p, (a, *env), store1))

                return lift_bind(
                    lift_of_comp(self.exp(e, sig, p, env)),
                    lambda c: lift_bind(c.f(sig, REFL, store), rest),
                )
            case While(n, body):
                cell = sh(p, n)
                ff_charge = self._charge("while-ff", 1)
                iter_charge = self._charge("while-iter", 2)

                def g(s: SemStore):
                    if not s[cell].b:
                        return lift_step(ff_charge, lift_ret(Done((U(), s))))
                    return lift_bind(
                        self.cmd(body, sig, p, env, s),
                        lambda r: lift_step(iter_charge, lift_ret(Continue(r[1]))),
                    )

                return iterate(g, store)
            case Get(n):
                cell = sh(p, n)
                return lift_step(self._charge("get", 1), lift_ret((store[cell], store)))
            case Set(n, e):
                cell = sh(p, n)
                charge = self._charge("set", 1)

                def assign(a: SemVal) -> Lift[tuple[SemVal, SemStore]]:
                    updated = (*store[:cell], a, *store[cell + 1 :])
                    return lift_step(charge, lift_ret((store[cell], updated)))

                return lift_bind(lift_of_comp(self.exp(e, sig, p, env)), assign)
            case Dcl(e, body):
                charge = self._charge("dcl", 1)

                def declare(a: SemVal) -> Lift[tuple[SemVal, SemStore]]:
                    inner = self.cmd(
                        body,
                        (positive_type(a), *sig),
                        Mono(p),
                        up_env(Extend(REFL), env),
                        (a, *store),
                    )
                    return lift_bind(inner, lambda r: lift_step(charge, lift_ret((r[0], r[1][1:]))))

                return lift_bind(lift_of_comp(self.exp(e, sig, p, env)), declare)
        raise TypeError(f"not a command: {m!r}")


_DEFAULT = Denotation()


def denote_exp(e: Exp, sig: tuple = (), p: GeProof = REFL, env: SemEnv = ()) -> Comp[SemVal]:
    return _DEFAULT.exp(e, tuple(sig), p, tuple(env))


def denote_cmd(
    m, sig: tuple = (), p: GeProof = REFL, env: SemEnv = (), store: SemStore = ()
) -> Lift[tuple[SemVal, SemStore]]:
    return _DEFAULT.cmd(m, tuple(sig), p, tuple(env), tuple(store))

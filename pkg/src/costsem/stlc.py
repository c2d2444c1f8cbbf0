"""Simply-typed lambda calculus over booleans.

Terms are nameless (de Bruijn); ``Var(0)`` is the innermost binder and a
context lists types innermost-first. Lambda binders may carry a type
annotation, which ``check`` requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from costsem.kernel import Comp, comp_bind, comp_ret, comp_step
from costsem.lift import FUEL_EXHAUSTED, FuelExhausted


# -- types -----------------------------------------------------------------


@dataclass(frozen=True)
class Bool:
    pass


@dataclass(frozen=True)
class Arrow:
    dom: Ty
    cod: Ty


Ty = Union[Bool, Arrow]
BOOL = Bool()


# -- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    ix: int


@dataclass(frozen=True)
class Lam:
    body: Tm
    ty: Optional[Ty] = None


@dataclass(frozen=True)
class Ap:
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class TT:
    pass


@dataclass(frozen=True)
class FF:
    pass


Tm = Union[Var, Lam, Ap, TT, FF]


def is_value(e: Tm) -> bool:
    return isinstance(e, (Lam, TT, FF))


def size(e: Tm) -> int:
    match e:
        case Lam(body, _):
            return 1 + size(body)
        case Ap(f, a):
            return 1 + size(f) + size(a)
        case _:
            return 1


def check(ctx: Sequence[Ty], e: Tm) -> Optional[Ty]:
    match e:
        case Var(ix):
            return ctx[ix] if 0 <= ix < len(ctx) else None
        case TT() | FF():
            return BOOL
        case Lam(body, ty):
            if ty is None:
                return None
            cod = check([ty, *ctx], body)
            return None if cod is None else Arrow(ty, cod)
        case Ap(f, a):
            tf = check(ctx, f)
            ta = check(ctx, a)
            if isinstance(tf, Arrow) and ta is not None and tf.dom == ta:
                return tf.cod
            return None
    return None


# -- substitution ------------------------------------------------------------

Sub = tuple
"""A substitution: entry ``i`` is the image of ``Var(i)``."""


def rename(e: Tm, f: Callable[[int], int]) -> Tm:
    match e:
        case Var(ix):
            return Var(f(ix))
        case Lam(body, ty):
            return Lam(rename(body, lambda i: 0 if i == 0 else f(i - 1) + 1), ty)
        case Ap(fn, a):
            return Ap(rename(fn, f), rename(a, f))
    return e


def weaken(e: Tm) -> Tm:
    return rename(e, lambda i: i + 1)


def sub_id(n: int) -> Sub:
    return tuple(Var(i) for i in range(n))


def sub_cons(e: Tm, sigma: Sub) -> Sub:
    return (e, *sigma)


def sub_shift(sigma: Sub) -> Sub:
    """Push a substitution under one binder: ``cons(Var 0, weaken . sigma)``."""
    return (Var(0), *(weaken(t) for t in sigma))


def subst_apply(e: Tm, sigma: Sub) -> Tm:
    match e:
        case Var(ix):
            return sigma[ix]
        case Lam(body, ty):
            return Lam(subst_apply(body, sub_shift(sigma)), ty)
        case Ap(f, a):
            return Ap(subst_apply(f, sigma), subst_apply(a, sigma))
    return e


# -- operational semantics ---------------------------------------------------


def step_once(e: Tm) -> Optional[Tm]:
    """One call-by-value transition, function position first.

    Returns None for values and for stuck (ill-typed) terms.
    """
    match e:
        case Ap(f, a):
            if not is_value(f):
                f1 = step_once(f)
                return None if f1 is None else Ap(f1, a)
            if not is_value(a):
                a1 = step_once(a)
                return None if a1 is None else Ap(f, a1)
            if isinstance(f, Lam):
                return subst_apply(f.body, (a,))
    return None


@dataclass(frozen=True)
class Value:
    cost: int
    v: Tm


@dataclass(frozen=True)
class Stuck:
    cost: int
    at: Tm


EvalResult = Union[Value, Stuck, FuelExhausted]


def eval_op(e: Tm, fuel: int, trace: Optional[list] = None) -> EvalResult:
    """Iterate ``step_once``, charging one unit per transition.

    ``fuel`` bounds the number of transitions. When ``trace`` is a list,
    every visited term, the initial one included, is appended to it.
    """
    cost = 0
    if trace is not None:
        trace.append(e)
    while not is_value(e):
        if cost >= fuel:
            return FUEL_EXHAUSTED
        nxt = step_once(e)
        if nxt is None:
            return Stuck(cost, e)
        e = nxt
        cost += 1
        if trace is not None:
            trace.append(e)
    return Value(cost, e)


# -- denotational semantics --------------------------------------------------


@dataclass(frozen=True)
class B:
    b: bool


@dataclass(frozen=True, eq=False)
class Fn:
    f: Callable[[SemVal], Comp[SemVal]]


SemVal = Union[B, Fn]

STEP_SITES = frozenset({"ap"})


class Denotation:
    """The cost-instrumented interpreter.

    ``drop`` names step sites to leave out; it exists only so mutation tests
    can check that the differential harness notices a missing step.
    """

    def __init__(self, drop: frozenset[str] = frozenset()):
        unknown = set(drop) - STEP_SITES
        if unknown:
            raise ValueError(f"unknown step sites: {sorted(unknown)}")
        self.drop = frozenset(drop)

    def denote(self, e: Tm, env: Sequence[SemVal]) -> Comp[SemVal]:
        match e:
            case Var(ix):
                return comp_ret(env[ix])
            case TT():
                return comp_ret(B(True))
            case FF():
                return comp_ret(B(False))
            case Lam(body, _):
                env = tuple(env)
                return comp_ret(Fn(lambda a: self.denote(body, (a, *env))))
            case Ap(fn, arg):
                charge = 0 if "ap" in self.drop else 1
                return comp_bind(
                    self.denote(fn, env),
                    lambda f: comp_bind(self.denote(arg, env), lambda a: comp_step(charge, f.f(a))),
                )
        raise TypeError(f"not a term: {e!r}")


_DEFAULT = Denotation()


def denote(e: Tm, env: Sequence[SemVal] = ()) -> Comp[SemVal]:
    return _DEFAULT.denote(e, env)


def numeral(b: bool) -> Tm:
    """The boolean literal naming an observed boolean."""
    return TT() if b else FF()

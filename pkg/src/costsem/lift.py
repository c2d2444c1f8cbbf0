"""Lifted (possibly divergent) computations observed through fuel.

A lifted computation is a lazily produced chain of delay nodes ending in a
cost/value pair. ``iterate`` is the only way to build an infinite chain; every
unfolding of the loop contributes exactly one delay node, so the fuel a
loop needs equals the number of times its body runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Optional, TypeVar, Union

from costsem.kernel import Comp, Cost, CostMonoid

A = TypeVar("A")
B = TypeVar("B")
S = TypeVar("S")

DEFAULT_OBSERVATION_BOUND = 2**16


@dataclass(frozen=True)
class Now(Generic[A]):
    cost: Cost
    value: A


@dataclass(frozen=True, eq=False)
class Later(Generic[A]):
    """One delay node. ``pending`` is cost already charged in front of it.

    Keeping the pending cost on the node lets ``lift_step`` stay O(1) on a
    delayed chain instead of stacking a closure per step.
    """

    suspension: Callable[[], "Lift[A]"]
    pending: Cost = 0

    def force(self) -> "Lift[A]":
        return lift_step(self.pending, self.suspension())


Lift = Union[Now[A], Later[A]]


@dataclass(frozen=True)
class Done(Generic[B]):
    value: B


@dataclass(frozen=True)
class Continue(Generic[S]):
    state: S


@dataclass(frozen=True)
class Converged(Generic[A]):
    cost: Cost
    value: A


@dataclass(frozen=True)
class FuelExhausted:
    pass


FUEL_EXHAUSTED = FuelExhausted()

RunOutcome = Union[Converged[A], FuelExhausted]


def lift_ret(v: A) -> Lift[A]:
    return Now(CostMonoid.zero, v)


def lift_of_comp(e: Comp[A]) -> Lift[A]:
    return Now(e.cost, e.value)


def lift_step(c: Cost, e: Lift[A]) -> Lift[A]:
    if c == 0:
        return e
    if isinstance(e, Now):
        return Now(CostMonoid.add(c, e.cost), e.value)
    return Later(e.suspension, CostMonoid.add(c, e.pending))


def lift_bind(e: Lift[A], f: Callable[[A], Lift[B]]) -> Lift[B]:
    if isinstance(e, Now):
        return lift_step(e.cost, f(e.value))
    return Later(lambda: lift_bind(e.suspension(), f), e.pending)


def iterate(f: Callable[[S], Lift[Union[Done[B], Continue[S]]]], a: S) -> Lift[B]:
    """Unbounded iteration: run ``f`` until it answers ``Done``."""

    def unfold() -> Lift[B]:
        return lift_bind(f(a), _after_iteration)

    def _after_iteration(r: Union[Done[B], Continue[S]]) -> Lift[B]:
        if isinstance(r, Done):
            return lift_ret(r.value)
        return iterate(f, r.state)

    return Later(unfold)


def seq(
    f: Callable[[S], Lift[Union[Done[B], Continue[S]]]], k: int, a: S
) -> Lift[Union[Done[B], Continue[S]]]:
    """The ``k``-step prefix of ``iterate(f, a)``.

    Iterations whose result is already available are folded in a loop so
    long prefixes do not recurse; the result is the same chain the textbook
    recursion produces.
    """
    cost = CostMonoid.zero
    while k > 0:
        r = f(a)
        if isinstance(r, Later):
            rest = k - 1
            return lift_step(
                cost,
                lift_bind(r, lambda x: lift_ret(x) if isinstance(x, Done) else seq(f, rest, x.state)),
            )
        cost = CostMonoid.add(cost, r.cost)
        if isinstance(r.value, Done):
            return Now(cost, r.value)
        a = r.value.state
        k -= 1
    return Now(cost, Continue(a))


def run_counted(e: Lift[A], fuel: int) -> tuple[RunOutcome[A], int]:
    """Force at most ``fuel`` delay nodes; also report how many were forced."""
    used = 0
    while isinstance(e, Later):
        if used >= fuel:
            return FUEL_EXHAUSTED, used
        used += 1
        e = e.force()
    return Converged(e.cost, e.value), used


def run(e: Lift[A], fuel: int) -> RunOutcome[A]:
    return run_counted(e, fuel)[0]


def compactness_witness(
    f: Callable[[S], Lift[Union[Done[B], Continue[S]]]], a: S, fuel: int
) -> Optional[int]:
    """Least ``k <= fuel`` whose prefix ``seq(f, k, a)`` reproduces ``iterate(f, a)``."""
    out = run(iterate(f, a), fuel)
    if not isinstance(out, Converged):
        return None
    target = Converged(out.cost, Done(out.value))
    for k in range(fuel + 1):
        if run(seq(f, k, a), fuel) == target:
            return k
    return None


def observationally_equal(e1: Lift[Any], e2: Lift[Any], bound: int = DEFAULT_OBSERVATION_BOUND) -> bool:
    """Equal outcomes at every fuel up to ``bound``.

    By fuel monotonicity this holds iff both chains need the same number of
    delay nodes and agree on the result, or both outlast ``bound``.
    """
    o1, n1 = run_counted(e1, bound)
    o2, n2 = run_counted(e2, bound)
    if isinstance(o1, FuelExhausted) or isinstance(o2, FuelExhausted):
        return o1 == o2
    return n1 == n2 and o1 == o2

"""Cost monoid, evaluation phase, sealed costs and the free computation monad."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Generic, TypeVar, Union

A = TypeVar("A")
B = TypeVar("B")

Cost = int
"""Evaluation steps. Natural numbers under addition."""


class CostMonoid:
    """The additive monoid of natural numbers.

    Everything cost-related goes through ``zero``/``add`` so a different
    cancellative monoid could be substituted; only this one is built.
    """

    zero: Cost = 0

    @staticmethod
    def add(a: Cost, b: Cost) -> Cost:
        return a + b

    @staticmethod
    def cancel(total: Cost, known: Cost) -> Cost:
        """Solve ``known + x = total`` for ``x``."""
        if total < known:
            raise ValueError(f"{known} does not divide {total} in the monoid")
        return total - known


class Phase(enum.Enum):
    INTENSIONAL = "intensional"
    EXTENSIONAL = "extensional"


@dataclass(frozen=True)
class Counted:
    cost: Cost

    def __add__(self, other: SealedCost) -> SealedCost:
        if isinstance(other, Counted):
            return Counted(self.cost + other.cost)
        return ERASED


@dataclass(frozen=True)
class Erased:
    def __add__(self, other: SealedCost) -> SealedCost:
        return self


ERASED = Erased()

SealedCost = Union[Counted, Erased]


def seal(phase: Phase, cost: Cost) -> SealedCost:
    if phase is Phase.EXTENSIONAL:
        return ERASED
    return Counted(cost)


@dataclass(frozen=True)
class Comp(Generic[A]):
    """A total computation in writer normal form: ``step^cost(ret value)``."""

    cost: Cost
    value: A


def comp_ret(v: A) -> Comp[A]:
    return Comp(CostMonoid.zero, v)


def comp_step(c: Cost, e: Comp[A]) -> Comp[A]:
    if c == 0:
        return e
    return Comp(CostMonoid.add(c, e.cost), e.value)


def comp_bind(e: Comp[A], f: Callable[[A], Comp[B]]) -> Comp[B]:
    r = f(e.value)
    return Comp(CostMonoid.add(e.cost, r.cost), r.value)

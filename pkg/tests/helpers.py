"""Random builders shared by the test modules."""

from __future__ import annotations

import random

from costsem.algol import syntax as ma
from costsem.algol.syntax import REFL, Extend, Mono
from costsem.kernel import Comp
from costsem.lift import Continue, Done, Later, Now, iterate, lift_ret, lift_step

POS = (ma.UNIT, ma.BOOL, ma.NAT)
MA_TYPES = POS + (ma.Arrow(ma.NAT, ma.BOOL), ma.CmdTy(ma.NAT), ma.CmdTy(ma.BOOL))


def delay(n: int, e):
    for _ in range(n):
        e = (lambda inner: Later(lambda: inner))(e)
    return e


def random_comp(rng: random.Random) -> Comp:
    return Comp(rng.randint(0, 20), rng.randint(-5, 5))


def random_lift(rng: random.Random, max_laters: int = 5, diverge: float = 0.0):
    """A chain of delay nodes around a ``Now``; optionally a loop that never ends."""
    if rng.random() < diverge:
        return iterate(lambda s: lift_ret(Continue(s)), 0)
    e = Now(rng.randint(0, 20), rng.randint(-5, 5))
    e = delay(rng.randint(0, max_laters), e)
    if rng.random() < 0.5:
        e = lift_step(rng.randint(0, 5), e)
    return e


def random_lift_fn(rng: random.Random, max_laters: int = 3):
    """A pure function int -> Lift, tabulated from a seed."""
    seed = rng.getrandbits(32)

    def f(a):
        r = random.Random(hash((seed, a)))
        return delay(r.randint(0, max_laters), Now(r.randint(0, 9), a * r.randint(1, 3) + r.randint(0, 4)))

    return f


def random_comp_fn(rng: random.Random):
    seed = rng.getrandbits(32)

    def f(a):
        r = random.Random(hash((seed, a)))
        return Comp(r.randint(0, 9), a + r.randint(-3, 3))

    return f


def finite_state_step(rng: random.Random, states: int = 8, max_laters: int = 2):
    """A loop body over states ``0..states-1`` given by a random transition table."""
    table = []
    for _ in range(states):
        if rng.random() < 0.3:
            r = Done(rng.randint(0, 3))
        else:
            r = Continue(rng.randrange(states))
        table.append((rng.randint(0, 4), rng.randint(0, max_laters), r))

    def f(s: int):
        c, laters, r = table[s]
        return lift_step(c, delay(laters, lift_ret(r)))

    return f


def countdown(n: int):
    if n == 0:
        return lift_ret(Done("*"))
    return lift_step(1, lift_ret(Continue(n - 1)))


def random_extension(rng, small: tuple, depth: int = 4):
    """A random ``(big, p)`` with ``p : big >= small``."""
    if not small:
        p, big = REFL, ()
        for _ in range(rng.randint(0, depth)):
            p, big = Extend(p), (rng.choice(POS), *big)
        return big, p
    pick = rng.random()
    if pick < 0.2:
        return small, REFL
    if pick < 0.6:
        big, p = random_extension(rng, small[1:], depth)
        return (small[0], *big), Mono(p)
    big, p = random_extension(rng, small, depth - 1) if depth > 0 else (small, REFL)
    return (rng.choice(POS), *big), Extend(p)


def random_sig(rng, n=3):
    return tuple(rng.choice(POS) for _ in range(rng.randint(0, n)))

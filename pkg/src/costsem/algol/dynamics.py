"""Transition system for closed expressions and store/command states.

Every transition costs one step. Command transitions:

* congruence on the expression position of ``Ret``, ``Bnd``, ``Set``, ``Dcl``;
* ``Bnd(CmdVal(m1), m)`` runs ``m1`` in place, then ``Bnd(CmdVal(Ret v), m) -> m[v]``;
* ``While[n](m)`` unfolds to ``Bnd(CmdVal(m), While[n](m))`` or stops with ``Ret(())``;
* ``Get``/``Set`` act on the store in one transition, ``Set`` answering the old contents;
* ``Dcl(v, m)`` runs ``m`` on the store extended with ``v`` (the cell's current
  contents live in the ``Dcl`` node) and pops with ``Dcl(v, Ret b) -> Ret b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from costsem.algol.syntax import (
    Ap,
    Bnd,
    Cmd,
    CmdVal,
    Dcl,
    Exp,
    FF,
    Get,
    Ifz,
    Lam,
    Ret,
    Set,
    Suc,
    TT,
    Triv,
    While,
    Zero,
    coer,
    is_final,
    is_value,
    peel_suc,
    shift_cmd,
    subst_cmd,
    subst_exp,
    suc_n,
)
from costsem.lift import FUEL_EXHAUSTED, FuelExhausted

Store = tuple
"""Closed values, one per assignable, most recent first."""


@dataclass(frozen=True)
class State:
    store: Store
    cmd: Cmd


def exp_step_once(e: Exp) -> Optional[Exp]:
    """One transition of a closed expression; None on values and stuck terms."""
    match e:
        case Suc():
            k, core = peel_suc(e)
            if is_value(core):
                return None
            nxt = exp_step_once(core)
            return None if nxt is None else suc_n(k, nxt)
        case Ifz(s, z, n):
            if not is_value(s):
                nxt = exp_step_once(s)
                return None if nxt is None else Ifz(nxt, z, n)
            if isinstance(s, Zero):
                return z
            if isinstance(s, Suc):
                return subst_exp(n, (s.e,))
            return None
        case Ap(f, a):
            if not is_value(f):
                nxt = exp_step_once(f)
                return None if nxt is None else Ap(nxt, a)
            if not is_value(a):
                nxt = exp_step_once(a)
                return None if nxt is None else Ap(f, nxt)
            if isinstance(f, Lam):
                return subst_exp(f.body, (a,))
    return None


def cmd_step_once(state: State) -> Optional[State]:
    """One transition of a state; None when the command is final or stuck."""
    mu, m = state.store, state.cmd
    match m:
        case Ret(e):
            nxt = exp_step_once(e)
            return None if nxt is None else State(mu, Ret(nxt))
        case Bnd(e, body):
            if not is_value(e):
                nxt = exp_step_once(e)
                return None if nxt is None else State(mu, Bnd(nxt, body))
            if not isinstance(e, CmdVal):
                return None
            if is_final(e.m):
                return State(mu, subst_cmd(body, (e.m.e,)))
            inner = cmd_step_once(State(mu, e.m))
            return None if inner is None else State(inner.store, Bnd(CmdVal(inner.cmd), body))
        case While(n, body):
            guard = mu[n] if 0 <= n < len(mu) else None
            if isinstance(guard, FF):
                return State(mu, Ret(Triv()))
            if isinstance(guard, TT):
                return State(mu, Bnd(CmdVal(body), shift_cmd(m)))
            return None
        case Get(n):
            return State(mu, Ret(mu[n])) if 0 <= n < len(mu) else None
        case Set(n, e):
            if not is_value(e):
                nxt = exp_step_once(e)
                return None if nxt is None else State(mu, Set(n, nxt))
            if not 0 <= n < len(mu):
                return None
            return State((*mu[:n], e, *mu[n + 1 :]), Ret(mu[n]))
        case Dcl(e, body):
            if not is_value(e):
                nxt = exp_step_once(e)
                return None if nxt is None else State(mu, Dcl(nxt, body))
            if is_final(body):
                return State(mu, Ret(coer(body.e)))
            inner = cmd_step_once(State((e, *mu), body))
            if inner is None:
                return None
            return State(inner.store[1:], Dcl(inner.store[0], inner.cmd))
    return None


@dataclass(frozen=True)
class Value:
    cost: int
    v: Exp


@dataclass(frozen=True)
class Final:
    cost: int
    store: Store
    v: Exp


@dataclass(frozen=True)
class Stuck:
    cost: int
    at: Union[Exp, State]


def eval_exp_op(e: Exp, fuel: int, trace: Optional[list] = None) -> Union[Value, Stuck, FuelExhausted]:
    cost = 0
    if trace is not None:
        trace.append(e)
    while not is_value(e):
        if cost >= fuel:
            return FUEL_EXHAUSTED
        nxt = exp_step_once(e)
        if nxt is None:
            return Stuck(cost, e)
        e, cost = nxt, cost + 1
        if trace is not None:
            trace.append(e)
    return Value(cost, e)


def eval_cmd_op(state: State, fuel: int, trace: Optional[list] = None) -> Union[Final, Stuck, FuelExhausted]:
    """Run a state to a final command, charging one unit per transition."""
    cost = 0
    if trace is not None:
        trace.append(state)
    while not is_final(state.cmd):
        if cost >= fuel:
            return FUEL_EXHAUSTED
        nxt = cmd_step_once(state)
        if nxt is None:
            return Stuck(cost, state)
        state, cost = nxt, cost + 1
        if trace is not None:
            trace.append(state)
    return Final(cost, state.store, state.cmd.e)

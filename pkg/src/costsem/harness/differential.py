"""The differential adequacy oracle.

Runs a closed program through the step-counting machine and through the
denotational interpreter and compares what is observable: the value at a
base type, the final store cell by cell, and the cost sealed at the
requested phase.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from costsem import stlc
from costsem.algol import dynamics as mad
from costsem.algol import semantics as mas
from costsem.algol import syntax as ma
from costsem.kernel import Counted, Phase, SealedCost, seal
from costsem.lift import Converged, run
from costsem.surface import print_ma, print_ma_exp, print_stlc


class Verdict(enum.Enum):
    MATCH = "match"
    COST_MISMATCH = "cost-mismatch"
    VALUE_MISMATCH = "value-mismatch"
    STORE_MISMATCH = "store-mismatch"
    BOTH_FUEL = "both-fuel"

    @property
    def ok(self) -> bool:
        return self in (Verdict.MATCH, Verdict.BOTH_FUEL)


@dataclass(frozen=True)
class Outcome:
    """One side's observation. ``cost`` is None exactly when fuel ran out."""

    converged: bool
    cost: Optional[SealedCost] = None
    value: Optional[str] = None
    store: Optional[tuple[str, ...]] = None

    def to_json(self) -> dict:
        return {
            "status": "value" if self.converged else "fuel",
            "cost": self.cost.cost if isinstance(self.cost, Counted) else None,
            "value": self.value,
            "store": None if self.store is None else list(self.store),
        }


FUEL = Outcome(False)


def verdict(op: Outcome, den: Outcome) -> Verdict:
    if not op.converged and not den.converged:
        return Verdict.BOTH_FUEL
    if op.converged != den.converged or op.value != den.value:
        return Verdict.VALUE_MISMATCH
    if op.store != den.store:
        return Verdict.STORE_MISMATCH
    if op.cost != den.cost:
        return Verdict.COST_MISMATCH
    return Verdict.MATCH


@dataclass(frozen=True)
class AdequacyReport:
    program: str
    phase: Phase
    operational: Outcome
    denotational: Outcome
    verdict: Verdict

    def to_json(self) -> dict:
        return {
            "program": self.program,
            "phase": self.phase.value,
            "operational": self.operational.to_json(),
            "denotational": self.denotational.to_json(),
            "verdict": self.verdict.value,
        }


def _report(program: str, phase: Phase, op: Outcome, den: Outcome) -> AdequacyReport:
    return AdequacyReport(program, phase, op, den, verdict(op, den))


class IllTyped(ValueError):
    """The program got stuck, so it was not a closed well-typed program."""


# -- STLC ------------------------------------------------------------------------


def stlc_operational(e: stlc.Tm, phase: Phase, fuel: int) -> Outcome:
    r = stlc.eval_op(e, fuel)
    if isinstance(r, stlc.Stuck):
        raise IllTyped(f"stuck at {print_stlc(r.at)}")
    if isinstance(r, stlc.Value):
        return Outcome(True, seal(phase, r.cost), print_stlc(r.v))
    return FUEL


def stlc_denotational(e: stlc.Tm, phase: Phase, denotation: Optional[stlc.Denotation] = None) -> Outcome:
    den = (denotation or stlc.Denotation()).denote(e, ())
    v = den.value
    shown = print_stlc(stlc.numeral(v.b)) if isinstance(v, stlc.B) else "<fn>"
    return Outcome(True, seal(phase, den.cost), shown)


def differential_stlc(
    e: stlc.Tm, phase: Phase = Phase.INTENSIONAL, fuel: int = 1_000_000,
    denotation: Optional[stlc.Denotation] = None,
) -> AdequacyReport:
    return _report(
        print_stlc(e), phase, stlc_operational(e, phase, fuel), stlc_denotational(e, phase, denotation)
    )


# -- Modernized Algol --------------------------------------------------------------


def _show_sem(v: mas.SemVal) -> str:
    if isinstance(v, mas.POSITIVE_VALUES):
        return print_ma_exp(mas.readback(v))
    return "<fn>" if isinstance(v, mas.Fn) else "<cmd>"


def ma_operational(t: ma.Term, phase: Phase, fuel: int) -> Outcome:
    if isinstance(t, ma.CMD_TYPES):
        r = mad.eval_cmd_op(mad.State((), t), fuel)
        if isinstance(r, mad.Stuck):
            raise IllTyped("stuck command")
        if isinstance(r, mad.Final):
            return Outcome(
                True, seal(phase, r.cost), print_ma_exp(r.v), tuple(print_ma_exp(v) for v in r.store)
            )
        return FUEL
    r = mad.eval_exp_op(t, fuel)
    if isinstance(r, mad.Stuck):
        raise IllTyped("stuck expression")
    if isinstance(r, mad.Value):
        return Outcome(True, seal(phase, r.cost), print_ma_exp(r.v))
    return FUEL


def ma_denotational(
    t: ma.Term, phase: Phase, fuel: int, denotation: Optional[mas.Denotation] = None
) -> Outcome:
    d = denotation or mas.Denotation()
    if isinstance(t, ma.CMD_TYPES):
        r = run(d.cmd(t, (), ma.REFL, (), ()), fuel)
        if isinstance(r, Converged):
            v, store = r.value
            return Outcome(True, seal(phase, r.cost), _show_sem(v), tuple(_show_sem(c) for c in store))
        return FUEL
    c = d.exp(t, (), ma.REFL, ())
    return Outcome(True, seal(phase, c.cost), _show_sem(c.value))


def differential_ma(
    t: ma.Term, phase: Phase = Phase.INTENSIONAL, fuel: int = 100_000,
    denotation: Optional[mas.Denotation] = None,
) -> AdequacyReport:
    """Compare both semantics on a closed program over the empty signature.

    The operational budget counts transitions, the denotational one counts
    delay nodes; each side gets ``fuel`` of its own. A loop needs fewer
    delay nodes than transitions, so when the machine runs dry but the
    denotation converged at a cost above ``fuel``, the machine is rerun
    with exactly that cost as its budget before anything is concluded.
    """
    den = ma_denotational(t, Phase.INTENSIONAL, fuel, denotation)
    op = ma_operational(t, Phase.INTENSIONAL, fuel)
    if not op.converged and den.converged and den.cost.cost > fuel:
        op = ma_operational(t, Phase.INTENSIONAL, den.cost.cost)
    return _report(print_ma(t), phase, _reseal(op, phase), _reseal(den, phase))


def _reseal(o: Outcome, phase: Phase) -> Outcome:
    if not o.converged or not isinstance(o.cost, Counted):
        return o
    return Outcome(True, seal(phase, o.cost.cost), o.value, o.store)


Program = Union[stlc.Tm, ma.Term]

"""Modernized Algol: statics, store dynamics and possible-worlds semantics."""

from costsem.algol.dynamics import (
    Final,
    State,
    Stuck,
    Value,
    cmd_step_once,
    eval_cmd_op,
    eval_exp_op,
    exp_step_once,
)
from costsem.algol.semantics import Denotation, denote_cmd, denote_exp, up
from costsem.algol.statics import check_cmd, check_exp
from costsem.algol.syntax import *  # noqa: F401,F403

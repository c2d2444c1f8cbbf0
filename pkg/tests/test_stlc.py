import random

from hypothesis import given
from hypothesis import strategies as st

from costsem import stlc
from costsem.harness.gen import GenConfig, gen_stlc, gen_stlc_open
from costsem.kernel import Comp
from costsem.stlc import (
    BOOL,
    FF,
    TT,
    Ap,
    Arrow,
    B,
    Lam,
    Value,
    Var,
    check,
    denote,
    eval_op,
    step_once,
    sub_cons,
    sub_id,
    sub_shift,
    subst_apply,
)

ID = Lam(Var(0), BOOL)
BB = Arrow(BOOL, BOOL)
seeds = st.integers(min_value=0, max_value=2**32)


def test_check():
    assert check([], Lam(Var(0))) is None
    assert check([], ID) == BB
    assert check([], Ap(TT(), TT())) is None
    assert check([BOOL], Var(0)) == BOOL
    assert check([], Var(0)) is None


def test_subst_examples():
    assert subst_apply(Var(0), sub_cons(TT(), sub_id(0))) == TT()
    sigma = (FF(), TT())
    assert subst_apply(subst_apply(Var(1), sub_shift(sigma)), (ID,)) == sigma[0]
    assert subst_apply(Var(1), sub_cons(ID, sigma)) == sigma[0]
    assert subst_apply(ID, sigma) == ID


def test_step_examples():
    assert step_once(Ap(ID, TT())) == TT()
    assert step_once(TT()) is None
    assert step_once(Ap(Ap(Lam(Var(0)), Lam(Var(0))), TT())) == Ap(Lam(Var(0)), TT())


def test_eval_examples():
    assert eval_op(Ap(ID, TT()), 10) == Value(1, TT())
    assert eval_op(TT(), 10) == Value(0, TT())
    assert eval_op(Ap(ID, Ap(ID, FF())), 10) == Value(2, FF())


def test_eval_fuel_and_trace():
    e = Ap(ID, Ap(ID, FF()))
    assert not isinstance(eval_op(e, 1), Value)
    trace = []
    r = eval_op(e, 10, trace)
    assert len(trace) == r.cost + 1
    assert trace[0] == e and trace[-1] == FF()


def test_denote_examples():
    assert denote(TT()) == Comp(0, B(True))
    assert denote(Ap(ID, TT())) == Comp(1, B(True))
    assert denote(Ap(ID, Ap(ID, FF()))) == Comp(2, B(False))


def test_lambda_is_free():
    assert denote(Lam(Ap(ID, Var(0)), BOOL)).cost == 0


def test_tt_and_ff_are_values():
    assert stlc.is_value(TT()) and stlc.is_value(FF()) and stlc.is_value(ID)


@given(seeds)
def test_subject_reduction_and_progress(seed):
    e = gen_stlc(GenConfig(seed=seed, max_size=30))
    while not stlc.is_value(e):
        nxt = step_once(e)
        assert nxt is not None
        assert check([], nxt) == BOOL
        e = nxt


@given(seeds)
def test_deterministic(seed):
    e = gen_stlc(GenConfig(seed=seed, max_size=30))
    assert eval_op(e, 10**6) == eval_op(e, 10**6)
    assert denote(e) == denote(e)


@given(seeds)
def test_substitution_lemma(seed):
    rng = random.Random(seed)
    ctx = [rng.choice([BOOL, BB]) for _ in range(rng.randint(0, 3))]
    a = rng.choice([BOOL, BB])
    e = gen_stlc_open(rng, [a, *ctx], BOOL, rng.randint(1, 15))
    target = [rng.choice([BOOL, BB]) for _ in range(rng.randint(0, 2))]
    sigma = tuple(gen_stlc_open(rng, target, t, rng.randint(1, 5)) for t in ctx)
    e1 = gen_stlc_open(rng, target, a, rng.randint(1, 5))
    assert subst_apply(subst_apply(e, sub_shift(sigma)), (e1, *sub_id(len(target)))) == subst_apply(
        e, sub_cons(e1, sigma)
    )


@given(seeds)
def test_identity_substitution(seed):
    rng = random.Random(seed)
    ctx = [rng.choice([BOOL, BB]) for _ in range(rng.randint(0, 3))]
    e = gen_stlc_open(rng, ctx, BOOL, rng.randint(1, 20))
    assert subst_apply(e, sub_id(len(ctx))) == e


def test_deep_terms():
    e = TT()
    for _ in range(200):
        e = Ap(ID, e)
    assert eval_op(e, 10**6) == Value(200, TT())
    assert denote(e) == Comp(200, B(True))

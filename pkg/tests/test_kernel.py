from hypothesis import given
from hypothesis import strategies as st

from costsem.kernel import (
    ERASED,
    Comp,
    CostMonoid,
    Counted,
    Erased,
    Phase,
    comp_bind,
    comp_ret,
    comp_step,
    seal,
)

costs = st.integers(min_value=0, max_value=10**6)
comps = st.builds(Comp, costs, st.integers())
sealed = st.one_of(st.builds(Counted, costs), st.just(ERASED))


def test_ret():
    assert comp_ret(True) == Comp(0, True)
    assert comp_ret(7) == Comp(0, 7)
    assert comp_step(3, comp_ret("x")) != comp_ret("x")


def test_step_examples():
    assert comp_step(0, Comp(5, "v")) == Comp(5, "v")
    assert comp_step(2, comp_step(3, Comp(0, "v"))) == Comp(5, "v")
    assert comp_step(1, Comp(0, True)) == Comp(1, True)


def test_bind_examples():
    assert comp_bind(Comp(2, "x"), lambda a: Comp(3, ("g", a))) == Comp(5, ("g", "x"))
    f = lambda a: Comp(4, a * 2)
    assert comp_bind(comp_ret(21), f) == f(21)


def test_seal():
    assert seal(Phase.INTENSIONAL, 4) == Counted(4)
    assert seal(Phase.EXTENSIONAL, 4) == ERASED
    assert seal(Phase.EXTENSIONAL, 0) == seal(Phase.EXTENSIONAL, 99)
    assert Counted(0) != ERASED
    assert isinstance(seal(Phase.EXTENSIONAL, 1), Erased)


@given(sealed, sealed, sealed)
def test_sealed_addition_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(sealed)
def test_erased_absorbs(a):
    assert a + ERASED == ERASED
    assert ERASED + a == ERASED


@given(costs, costs)
def test_counted_adds(a, b):
    assert Counted(a) + Counted(b) == Counted(a + b)


@given(costs, costs, costs)
def test_monoid(a, b, c):
    m = CostMonoid
    assert m.add(m.zero, a) == a == m.add(a, m.zero)
    assert m.add(m.add(a, b), c) == m.add(a, m.add(b, c))
    assert m.add(a, b) == m.add(b, a)
    assert m.cancel(m.add(a, b), a) == b


def test_cancel_rejects_underflow():
    import pytest

    with pytest.raises(ValueError):
        CostMonoid.cancel(1, 2)


@given(comps, costs, costs)
def test_step_laws(e, c1, c2):
    assert comp_step(0, e) == e
    assert comp_step(c1, comp_step(c2, e)) == comp_step(c1 + c2, e)


@given(comps, costs, st.integers(0, 9), st.integers(-3, 3))
def test_bind_step(e, c, k, d):
    f = lambda a: Comp(k, a + d)
    assert comp_bind(comp_step(c, e), f) == comp_step(c, comp_bind(e, f))


@given(comps, st.integers(0, 9), st.integers(0, 9))
def test_monad_laws(e, k1, k2):
    f = lambda a: Comp(k1, a + 1)
    g = lambda a: Comp(k2, a * 3)
    assert comp_bind(e, comp_ret) == e
    assert comp_bind(comp_ret(e.value), f) == f(e.value)
    assert comp_bind(comp_bind(e, f), g) == comp_bind(e, lambda a: comp_bind(f(a), g))


@given(comps, comps)
def test_representation_injective(a, b):
    if a == b:
        assert a.cost == b.cost and a.value == b.value

"""Acceptance criteria, one test per criterion.

Each criterion yields one ``PASS``/``FAIL`` line; under pytest they are
gathered into an "acceptance" section of the terminal summary. The module
also runs as a script (``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import functools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from costsem import stlc  # noqa: E402
from costsem.algol import dynamics as dyn  # noqa: E402
from costsem.algol import semantics as sem  # noqa: E402
from costsem.algol import syntax as ma  # noqa: E402
from costsem.harness import GenConfig, Verdict, differential_ma, fuzz_campaign, mutated  # noqa: E402
from costsem.harness.gen import gen_ma_open, gen_stlc_open  # noqa: E402
from costsem.kernel import Comp, comp_bind, comp_ret, comp_step  # noqa: E402
from costsem.lift import (  # noqa: E402
    Converged,
    Done,
    compactness_witness,
    iterate,
    lift_bind,
    lift_of_comp,
    lift_ret,
    lift_step,
    observationally_equal,
    run,
    seq,
)
from costsem.surface import parse_ma  # noqa: E402
from helpers import (  # noqa: E402
    MA_TYPES,
    finite_state_step,
    random_comp,
    random_comp_fn,
    random_extension,
    random_lift,
    random_lift_fn,
    random_sig,
)

STLC_CFG = GenConfig(seed=0, max_size=50, fuel=10**6)
MA_CFG = GenConfig(seed=0, max_size=40, max_sig=4, fuel=10**5)
MAX_COUNTEREXAMPLE = 10


LINES: list[str] = []


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    LINES.append(line)
    print(line, flush=True)
    return ok


# -- 1-3: adequacy campaigns --------------------------------------------------------


@functools.cache
def stlc_campaign(phase: str):
    t = time.perf_counter()
    s = fuzz_campaign(STLC_CFG, "stlc", sem_phase(phase), count=10_000, keep_reports=phase == "extensional")
    return s, time.perf_counter() - t


@functools.cache
def ma_campaign(phase: str):
    t = time.perf_counter()
    s = fuzz_campaign(MA_CFG, "ma", sem_phase(phase), count=2_000, keep_reports=phase == "extensional")
    return s, time.perf_counter() - t


def sem_phase(name: str):
    from costsem.kernel import Phase

    return Phase(name)


def criterion_1() -> bool:
    s, secs = stlc_campaign("intensional")
    ok = s.count == 10_000 and not s.failures and s.matches == 10_000
    return report(1, ok, f"STLC {s.count} programs, {len(s.failures)} mismatches, {secs:.1f} s (target < 60 s)")


def criterion_2() -> bool:
    s, secs = ma_campaign("intensional")
    ok = s.count == 2_000 and not s.failures and s.matches + s.both_fuel == 2_000
    return report(
        2,
        ok,
        f"MA {s.count} commands, {s.matches} match, {s.both_fuel} both-fuel, "
        f"{len(s.failures)} mismatches, {secs:.1f} s",
    )


def _numeric_costs(reports) -> int:
    n = 0
    for r in reports:
        j = r.to_json()
        n += sum(j[side]["cost"] is not None for side in ("operational", "denotational"))
    return n


def criterion_3() -> bool:
    s1, _ = stlc_campaign("extensional")
    s2, _ = ma_campaign("extensional")
    value_bad = sum(
        r.verdict in (Verdict.VALUE_MISMATCH, Verdict.STORE_MISMATCH) for r in s1.reports + s2.reports
    )
    numeric = _numeric_costs(s1.reports) + _numeric_costs(s2.reports)
    other_bad = len(s1.failures) + len(s2.failures)
    ok = value_bad == 0 and numeric == 0 and other_bad == 0 and s1.count == 10_000 and s2.count == 2_000
    return report(
        3, ok, f"extensional rerun of {s1.count + s2.count} programs, {value_bad} value mismatches, "
        f"{numeric} numeric costs"
    )


# -- 4: cost table -------------------------------------------------------------------

COST_PROGRAMS = {
    "Ap": "ret (fn (x: bool) => x) tt",
    "Ifz": "ret ifz 1 { zero => ff | suc x => ifz x { zero => tt | suc y => ff } }",
    "Bnd": "bnd x <- cmd { ret tt }; ret x",
    "Get": "dcl a := tt in get[a]",
    "Set": "dcl a := tt in set[a](ff)",
    "Dcl": "dcl a := () in ret tt",
    "While-ff": "dcl a := ff in bnd x <- cmd { while[a] { ret () } }; get[a]",
    "While-iter": "dcl a := tt in bnd x <- cmd { while[a] { bnd y <- cmd { set[a](ff) }; ret () } }; get[a]",
}


def criterion_4() -> bool:
    bad = []
    for name, src in COST_PROGRAMS.items():
        m = parse_ma(src)
        op = dyn.eval_cmd_op(dyn.State((), m), 1000)
        den = run(sem.Denotation().cmd(m, (), ma.REFL, (), ()), 1000)
        if not isinstance(op, dyn.Final) or not isinstance(den, Converged):
            bad.append(name)
            continue
        if den.cost != op.cost or differential_ma(m).verdict is not Verdict.MATCH:
            bad.append(name)
    return report(4, not bad, f"{len(COST_PROGRAMS) - len(bad)}/{len(COST_PROGRAMS)} cost-table programs match")


# -- 5: kernel and lift laws ------------------------------------------------------------


def _kernel_lift_laws(rng: random.Random) -> list[str]:
    bad = []
    for i in range(1000):
        e, c1, c2 = random_comp(rng), rng.randint(0, 9), rng.randint(0, 9)
        f, g = random_comp_fn(rng), random_comp_fn(rng)
        le, lf, lg = random_lift(rng), random_lift_fn(rng), random_lift_fn(rng)
        a = rng.randint(-5, 5)
        checks = {
            "step_0": comp_step(0, e) == e,
            "step_+": comp_step(c1, comp_step(c2, e)) == comp_step(c1 + c2, e),
            "bind_step": comp_bind(comp_step(c1, e), f) == comp_step(c1, comp_bind(e, f)),
            "comp monad": comp_bind(comp_ret(a), f) == f(a)
            and comp_bind(e, comp_ret) == e
            and comp_bind(comp_bind(e, f), g) == comp_bind(e, lambda x: comp_bind(f(x), g)),
            "lift/step": lift_of_comp(comp_step(c1, e)) == lift_step(c1, lift_of_comp(e)),
            "lift/bind": observationally_equal(
                lift_of_comp(comp_bind(e, f)), lift_bind(lift_of_comp(e), lambda x: lift_of_comp(f(x)))
            ),
            "lift monad": observationally_equal(lift_bind(lift_ret(a), lf), lf(a))
            and observationally_equal(lift_bind(le, lift_ret), le)
            and observationally_equal(
                lift_bind(lift_bind(le, lf), lg), lift_bind(le, lambda x: lift_bind(lf(x), lg))
            ),
        }
        n = rng.randint(0, 10)
        out = run(lift_bind(le, lf), n)
        dec = True
        if isinstance(out, Converged):
            first = run(le, n)
            second = run(lf(first.value), n) if isinstance(first, Converged) else None
            dec = isinstance(second, Converged) and out == Converged(first.cost + second.cost, second.value)
        checks["bind_L decomposition"] = dec
        stepped = run(lift_step(c1, le), n)
        checks["step_L decomposition"] = not isinstance(stepped, Converged) or run(le, n) == Converged(
            stepped.cost - c1, stepped.value
        )
        c, x, y = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        same = observationally_equal(lift_step(c, lift_ret(x)), lift_ret(y))
        checks["step/ret injectivity"] = same == (c == 0 and x == y)
        bad += [f"{k}#{i}" for k, ok in checks.items() if not ok]
    return bad


def criterion_5() -> bool:
    t = time.perf_counter()
    bad = _kernel_lift_laws(random.Random(5))
    secs = time.perf_counter() - t
    ok = not bad and secs < 5.0
    return report(5, ok, f"10 law families x 1000 instances, {len(bad)} failures, {secs:.2f} s (limit 5 s)")


# -- 6: iterate/unfold and compactness ----------------------------------------------------


def criterion_6() -> bool:
    rng = random.Random(6)
    fuel = 10**4
    bad = converged = 0
    for _ in range(1000):
        states = rng.randint(1, 12)
        f = finite_state_step(rng, states=states)
        a = rng.randrange(states)
        out = run(iterate(f, a), fuel)

        def after(r, f=f):
            return lift_ret(r.value) if isinstance(r, Done) else iterate(f, r.state)

        if out != run(lift_bind(f(a), after), fuel - 1) and isinstance(out, Converged):
            bad += 1
        if not isinstance(out, Converged):
            if compactness_witness(f, a, fuel) is not None:
                bad += 1
            continue
        converged += 1
        k = compactness_witness(f, a, fuel)
        if k is None or k > fuel or run(seq(f, k, a), fuel) != Converged(out.cost, Done(out.value)):
            bad += 1
    return report(6, bad == 0, f"1000 loops ({converged} converge), {bad} failures")


# -- 7: syntax lemmas ---------------------------------------------------------------------


def _stlc_prop31(rng) -> bool:
    tys = [stlc.BOOL, stlc.Arrow(stlc.BOOL, stlc.BOOL)]
    ctx = [rng.choice(tys) for _ in range(rng.randint(0, 3))]
    a = rng.choice(tys)
    target = [rng.choice(tys) for _ in range(rng.randint(0, 2))]
    e = gen_stlc_open(rng, [a, *ctx], rng.choice(tys), rng.randint(1, 20))
    sigma = tuple(gen_stlc_open(rng, target, t, rng.randint(1, 6)) for t in ctx)
    e1 = gen_stlc_open(rng, target, a, rng.randint(1, 6))
    lhs = stlc.subst_apply(stlc.subst_apply(e, stlc.sub_shift(sigma)), (e1, *stlc.sub_id(len(target))))
    return lhs == stlc.subst_apply(e, stlc.sub_cons(e1, sigma))


def _ma_term(rng, sig, ctx):
    command = rng.random() < 0.6
    return gen_ma_open(rng, sig, ctx, rng.choice(MA_TYPES), rng.randint(1, 20), command=command), command


def _w(p, t, command):
    return ma.weaken_cmd(p, t) if command else ma.weaken_exp(p, t)


def _s(t, sigma, command):
    return ma.subst_cmd(t, sigma) if command else ma.subst_exp(t, sigma)


def _ma_subst_lemma(rng) -> bool:
    sig = random_sig(rng)
    ctx = [rng.choice(MA_TYPES) for _ in range(rng.randint(0, 3))]
    a = rng.choice(MA_TYPES)
    target = [rng.choice(MA_TYPES) for _ in range(rng.randint(0, 2))]
    t, command = _ma_term(rng, sig, [a, *ctx])
    sigma = tuple(gen_ma_open(rng, sig, target, b, rng.randint(1, 6), command=False) for b in ctx)
    e1 = gen_ma_open(rng, sig, target, a, rng.randint(1, 6), command=False)
    lhs = _s(_s(t, ma.sub_shift(sigma), command), (e1, *ma.sub_id(len(target))), command)
    return lhs == _s(t, ma.sub_cons(e1, sigma), command)


def _ma_weaken_compose(rng) -> bool:
    sig = random_sig(rng)
    t, command = _ma_term(rng, sig, [])
    mid, q = random_extension(rng, sig)
    _, p = random_extension(rng, mid)
    return _w(p, _w(q, t, command), command) == _w(ma.tr(p, q), t, command)


def _ma_weaken_subst(rng) -> bool:
    sig = random_sig(rng)
    ctx = [rng.choice(MA_TYPES) for _ in range(rng.randint(0, 3))]
    t, command = _ma_term(rng, sig, ctx)
    sigma = tuple(gen_ma_open(rng, sig, [], b, rng.randint(1, 6), command=False) for b in ctx)
    _, p = random_extension(rng, sig)
    return _w(p, _s(t, sigma, command), command) == _s(_w(p, t, command), ma.weaken_sub(p, sigma), command)


def criterion_7() -> bool:
    rng = random.Random(7)
    lemmas = {
        "stlc substitution": _stlc_prop31,
        "ma substitution": _ma_subst_lemma,
        "weakening composition": _ma_weaken_compose,
        "weakening/substitution": _ma_weaken_subst,
    }
    bad = {name: sum(not prop(rng) for _ in range(1000)) for name, prop in lemmas.items()}
    return report(7, not any(bad.values()), f"4 lemmas x 1000 instances, failures {bad}")


# -- 8: mutation sensitivity ----------------------------------------------------------------

MUTANTS = [("stlc", "ap")] + [("ma", s) for s in sorted(sem.STEP_SITES)]


@functools.cache
def mutation_result(language: str, site: str):
    cfg = STLC_CFG if language == "stlc" else MA_CFG
    s = fuzz_campaign(
        cfg, language, count=500, denotation=mutated(language, site),
        stop_when=lambda f: f.shrunk_size <= MAX_COUNTEREXAMPLE,
    )
    best = min(s.failures, key=lambda f: f.shrunk_size) if s.failures else None
    return s.count, best


def criterion_8() -> bool:
    parts, ok = [], True
    for language, site in MUTANTS:
        _, best = mutation_result(language, site)
        size = None if best is None else best.shrunk_size
        ok &= size is not None and size <= MAX_COUNTEREXAMPLE
        parts.append(f"{language}/{site}={size}")
    return report(8, ok, "smallest shrunk counterexample per mutant: " + ", ".join(parts))


# -- 9: fuel monotonicity ---------------------------------------------------------------------


def criterion_9() -> bool:
    rng = random.Random(9)
    bad = 0
    for _ in range(1000):
        e = random_lift(rng, max_laters=8, diverge=0.1)
        n = rng.randint(0, 10)
        m = rng.randint(n, 30)
        out = run(e, n)
        if isinstance(out, Converged) and run(e, m) != out:
            bad += 1
    return report(9, bad == 0, f"1000 (lift, n <= m) pairs, {bad} violations")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def test_criterion_1_stlc_adequacy():
    assert criterion_1()


def test_criterion_2_ma_adequacy():
    assert criterion_2()


def test_criterion_3_extensional():
    assert criterion_3()


def test_criterion_4_cost_table():
    assert criterion_4()


def test_criterion_5_laws():
    assert criterion_5()


def test_criterion_6_compactness():
    assert criterion_6()


def test_criterion_7_syntax_lemmas():
    assert criterion_7()


def test_criterion_8_mutation():
    assert criterion_8()


def test_criterion_9_fuel_monotonicity():
    assert criterion_9()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)

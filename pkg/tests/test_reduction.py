import random

from fwh.reduction import (
    NormalizeResult,
    all_safe_redexes,
    all_steps,
    is_value,
    neutral_var,
    normalize_term,
    safe_step,
    step,
    try_redex,
)
from fwh.terms import (
    Fix,
    TmApp,
    TmConst,
    TmVar,
    term_alpha_eq,
    tmlam,
)
from fwh.typecheck import capp_terms

UNIT = TmConst("unit")
PAIR = TmConst("pair")
FST = TmConst("fst")
SND = TmConst("snd")
INL = TmConst("inl")
INR = TmConst("inr")
CASE = TmConst("case")
IN = TmConst("in")
OUT = TmConst("out")


def pair(a, b):
    return capp_terms(PAIR, a, b)


def lam(x, b):
    return tmlam(x, None, b)


def test_fst_pair():
    t = TmApp(FST, pair(UNIT, TmVar("s")))
    r = step(t)
    assert r.kind == "stepped" and term_alpha_eq(r.term, UNIT)


def test_mu_fix_unfolds_on_fold():
    s = lam("rec", lam("x", TmVar("x")))
    fix = Fix("mu", 0, None, s)
    arg = TmApp(IN, UNIT)
    t = TmApp(fix, arg)
    r = step(t)
    assert r.kind == "stepped"
    assert term_alpha_eq(r.term, capp_terms(s, fix, arg))


def test_mu_fix_blocks_on_variable():
    s = lam("rec", lam("x", TmVar("x")))
    t = TmApp(Fix("mu", 0, None, s), TmVar("x"))
    r = step(t)
    assert r.kind == "neutral" and r.var == "x"


def test_mu_fix_fires_on_any_value():
    # unchecked programs may pass a function where data is expected;
    # unfolding still fires so divergence demos run
    s = lam("rec", lam("g", TmApp(TmVar("rec"), TmVar("g"))))
    t = TmApp(Fix("mu", 0, None, s), lam("n", TmVar("n")))
    assert step(t).kind == "stepped"
    out = normalize_term(t, 1000)
    assert out.status == "out_of_fuel"


def test_nu_fix_unfolds_only_under_out():
    s = lam("rec", pair(UNIT, TmVar("rec")))
    fix = Fix("nu", 0, None, s)
    assert step(fix).kind == "value"
    r = step(TmApp(OUT, fix))
    assert r.kind == "stepped"
    assert term_alpha_eq(r.term, TmApp(OUT, TmApp(s, fix)))


def test_case_inl_beta():
    r, u, v = TmVar("r"), lam("a", UNIT), lam("b", TmVar("b"))
    t = capp_terms(CASE, TmApp(INL, r), u, v)
    out = normalize_term(t, 100)
    assert out.status == "normal"
    assert term_alpha_eq(out.term, TmApp(u, r).fun.body if False else UNIT)


def test_junk_is_stuck_not_a_crash():
    t = TmApp(FST, lam("x", TmVar("x")))
    r = step(t)
    assert r.kind == "stuck"
    out = normalize_term(t, 100)
    assert out.status == "normal"  # no rule applies; term is its own normal form


def test_out_in():
    t = TmApp(OUT, TmApp(IN, TmVar("r")))
    nxt = safe_step(t)
    assert term_alpha_eq(nxt, TmVar("r"))


def test_values_are_safe_normal():
    assert safe_step(lam("x", TmVar("x"))) is None
    assert safe_step(pair(UNIT, UNIT)) is None


def test_step_and_normalize_agree_on_normal_forms():
    rng = random.Random(99)
    for _ in range(150):
        t = random_closed_term(rng, 4)
        slow = t
        for _ in range(200):
            r = step(slow)
            if r.kind != "stepped":
                break
            slow = r.term
        else:
            continue
        fast = normalize_term(t, 400)
        if fast.status == "normal":
            assert term_alpha_eq(fast.term, slow)


def random_closed_term(rng, depth, scope=()):
    if depth <= 0:
        choices = [UNIT, INL, INR, IN, lam("x", UNIT)]
        if scope:
            choices.append(TmVar(rng.choice(scope)))
        return rng.choice(choices)
    roll = rng.random()
    if roll < 0.25:
        x = f"v{rng.randrange(10**6)}"
        return tmlam(x, None, random_closed_term(rng, depth - 1, scope + (x,)))
    if roll < 0.5:
        return TmApp(
            random_closed_term(rng, depth - 1, scope),
            random_closed_term(rng, depth - 1, scope),
        )
    if roll < 0.6:
        return pair(
            random_closed_term(rng, depth - 1, scope),
            random_closed_term(rng, depth - 1, scope),
        )
    if roll < 0.7:
        return TmApp(rng.choice([FST, SND, OUT]), random_closed_term(rng, depth - 1, scope))
    if roll < 0.78:
        return TmApp(rng.choice([INL, INR, IN]), random_closed_term(rng, depth - 1, scope))
    if roll < 0.86:
        return capp_terms(
            CASE,
            random_closed_term(rng, depth - 1, scope),
            random_closed_term(rng, depth - 1, scope),
            random_closed_term(rng, depth - 1, scope),
        )
    flavor = rng.choice(["mu", "nu"])
    n = rng.randrange(2)
    fx = Fix(flavor, n, None, random_closed_term(rng, depth - 1, scope))
    args = [random_closed_term(rng, depth - 1, scope) for _ in range(rng.randrange(n + 2))]
    out = fx
    for a in args:
        out = TmApp(out, a)
    if flavor == "nu" and rng.random() < 0.5:
        out = TmApp(OUT, out)
    return out


def test_safe_step_determinism_and_containment():
    rng = random.Random(500)
    checked = 0
    for _ in range(300):
        t = random_closed_term(rng, 4)
        redexes = all_safe_redexes(t, sn_fuel=50)
        assert len(redexes) <= 1
        nxt = safe_step(t, sn_fuel=50)
        if nxt is not None:
            checked += 1
            reducts = all_steps(t)
            assert any(term_alpha_eq(nxt, r) for r in reducts)
    assert checked > 30

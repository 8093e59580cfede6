import random

from fwh.constructor import (
    App,
    Const,
    Lam,
    Var,
    alpha_eq,
    arrow,
    capp,
    infty,
    lam,
    mu,
    spine,
    succ,
    sum_,
)
from fwh.kinding import kind_check
from fwh.kinds import ORD, STAR, karrow
from fwh.normalize import (
    OrdNF,
    as_ordnf,
    check_and_normalize,
    constr_equal,
    normalize,
)
from fwh.polarity import MIXED, PLUS

from helpers import (
    EMPTY,
    nat_at,
    nat_def,
    random_constructor,
    random_kind,
    unit,
)


def test_beta_step():
    c = App(lam("X", STAR, arrow(Var("X"), unit)), nat_at(infty()))
    _, nf = check_and_normalize(EMPTY, c)
    _, expected = check_and_normalize(EMPTY, arrow(nat_at(infty()), unit))
    assert alpha_eq(nf, expected)


def test_succ_of_infty_collapses():
    _, nf = check_and_normalize(EMPTY, succ(infty()))
    assert as_ordnf(nf) == OrdNF(None)
    _, nf2 = check_and_normalize(EMPTY, succ(succ(infty())))
    assert as_ordnf(nf2) == OrdNF(None)


def test_eta_long_variable():
    ctx = EMPTY.extend("F", MIXED, karrow(PLUS, STAR, STAR))
    _, nf = check_and_normalize(ctx, Var("F"))
    assert isinstance(nf, Lam)
    head, args = spine(nf.body)
    assert head == Var("F") or head == __import__("fwh.constructor", fromlist=["Bound"]).Bound(0)


def test_mu_infty_equals_mu_succ_infty():
    functional = lam("X", STAR, sum_(unit, Var("X")))
    a = mu(STAR, infty(), functional)
    b = mu(STAR, succ(infty()), functional)
    assert constr_equal(EMPTY, a, b)


def test_alpha_at_kind():
    assert constr_equal(EMPTY, lam("X", STAR, Var("X")), lam("Y", STAR, Var("Y")))


def test_distinct_ordinals_not_equal():
    ctx = EMPTY.extend("i", MIXED, ORD)
    assert not constr_equal(ctx, nat_at(Var("i")), nat_at(succ(Var("i"))))


def test_normalize_idempotent_and_kind_preserving():
    rng = random.Random(23)
    ctx = EMPTY.extend("A", MIXED, STAR).extend("i", MIXED, ORD)
    for _ in range(150):
        c = random_constructor(rng, ctx, random_kind(rng, 2), rng.randrange(6))
        res = kind_check(ctx, c)
        nf = normalize(ctx, res.constructor, res.kind)
        res2 = kind_check(ctx, nf)
        assert res2.kind == res.kind
        nf2 = normalize(ctx, res2.constructor, res2.kind)
        assert alpha_eq(nf, nf2)


def test_constr_equal_equivalence_laws():
    rng = random.Random(29)
    ctx = EMPTY.extend("A", MIXED, STAR).extend("i", MIXED, ORD)
    pool = []
    for _ in range(40):
        kind = random_kind(rng, 1)
        c = random_constructor(rng, ctx, kind, rng.randrange(4))
        pool.append((kind, c))
    for kind, c in pool:
        assert constr_equal(ctx, c, c, kind)
    for kind, c in pool[:15]:
        # beta-expansion preserves equality
        expanded = App(lam("Z", STAR, c), unit)
        assert constr_equal(ctx, c, expanded, kind)
        assert constr_equal(ctx, expanded, c, kind)

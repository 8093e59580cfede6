"""Randomized metatheory suites at 500 cases each with fixed seeds."""

import random

from fwh.constructor import App, KindContext, alpha_eq, lam
from fwh.kinding import kind_check
from fwh.kinds import ORD, STAR
from fwh.normalize import check_and_normalize, constr_equal, normalize
from fwh.polarity import MIXED, PLUS
from fwh.reduction import all_safe_redexes, all_steps, safe_step
from fwh.subtyping import is_subtype, subtype, validate_subtyping
from fwh.terms import term_alpha_eq

from helpers import EMPTY, random_constructor, random_kind, unit
from test_reduction import random_closed_term

TRIALS = 500


def _ctx():
    from fwh.kinds import karrow

    return (
        EMPTY.extend("i", MIXED, ORD)
        .extend("A", MIXED, STAR)
        .extend("F", MIXED, karrow(PLUS, STAR, STAR))
    )


def test_subtype_reflexivity_500():
    rng = random.Random(101)
    ctx = _ctx()
    for _ in range(TRIALS):
        c = random_constructor(rng, ctx, STAR, rng.randrange(5))
        k, nf = check_and_normalize(ctx, c)
        d = subtype(ctx, nf, nf, k)
        assert validate_subtyping(d)


def test_subtype_transitivity_500():
    from test_subtyping import _weaken

    rng = random.Random(103)
    ctx = _ctx()
    confirmed = 0
    for _ in range(TRIALS):
        c = random_constructor(rng, ctx, STAR, rng.randrange(4))
        k, n0 = check_and_normalize(ctx, c)
        _, n1 = check_and_normalize(ctx, _weaken(rng, ctx, n0, k))
        _, n2 = check_and_normalize(ctx, _weaken(rng, ctx, n1, k))
        if is_subtype(ctx, n0, n1, k) and is_subtype(ctx, n1, n2, k):
            confirmed += 1
            assert is_subtype(ctx, n0, n2, k)
    assert confirmed >= TRIALS // 2


def test_constr_equal_equivalence_500():
    rng = random.Random(107)
    ctx = _ctx()
    for _ in range(TRIALS):
        kind = random_kind(rng, 1)
        c = random_constructor(rng, ctx, kind, rng.randrange(4))
        assert constr_equal(ctx, c, c, kind)
        expanded = App(lam("Zq", STAR, c), unit)
        assert constr_equal(ctx, c, expanded, kind)
        assert constr_equal(ctx, expanded, c, kind)


def test_normalize_idempotent_and_kind_preserving_500():
    rng = random.Random(109)
    ctx = _ctx()
    for _ in range(TRIALS):
        c = random_constructor(rng, ctx, random_kind(rng, 2), rng.randrange(5))
        res = kind_check(ctx, c)
        nf = normalize(ctx, res.constructor, res.kind)
        res2 = kind_check(ctx, nf)
        assert res2.kind == res.kind
        assert alpha_eq(nf, normalize(ctx, res2.constructor, res2.kind))


def test_safe_reduction_deterministic_500():
    rng = random.Random(113)
    for _ in range(TRIALS):
        t = random_closed_term(rng, 4)
        assert len(all_safe_redexes(t, sn_fuel=50)) <= 1


def test_safe_reduction_contained_in_reduction_500():
    rng = random.Random(127)
    fired = 0
    for _ in range(TRIALS):
        t = random_closed_term(rng, 4)
        nxt = safe_step(t, sn_fuel=50)
        if nxt is None:
            continue
        fired += 1
        assert any(term_alpha_eq(nxt, r) for r in all_steps(t))
    assert fired >= TRIALS // 10

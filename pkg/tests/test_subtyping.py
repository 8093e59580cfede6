import random

import pytest

from fwh.constructor import Var, capp, infty, succ
from fwh.errors import SubtypeError
from fwh.kinding import kind_check
from fwh.kinds import ORD, STAR
from fwh.normalize import OrdNF, check_and_normalize
from fwh.polarity import MIXED, PLUS
from fwh.subtyping import is_subtype, ord_leq, subtype, subtype_source, validate_subtyping

from helpers import (
    EMPTY,
    grose_def,
    list_at,
    nat_at,
    random_constructor,
    stream_at,
    unit,
)
from declarative import declarative_subtype_search

IVAR = OrdNF("i", 0)


def test_ord_leq_examples():
    assert ord_leq(OrdNF("i"), OrdNF("i", 1))
    assert ord_leq(OrdNF("i", 2), OrdNF(None))
    assert not ord_leq(OrdNF("i", 2), OrdNF("i"))
    assert not ord_leq(OrdNF("i"), OrdNF("j", 5))
    assert not ord_leq(OrdNF(None), OrdNF("i", 3))


def _ctx():
    return (
        EMPTY.extend("i", MIXED, ORD)
        .extend("A", MIXED, STAR)
        .extend("B", MIXED, STAR)
        .extend("F", MIXED, __import__("fwh.kinds", fromlist=["karrow"]).karrow(PLUS, STAR, STAR))
    )


def test_nat_size_weakening():
    ctx = _ctx()
    d = subtype_source(ctx, nat_at(Var("i")), nat_at(succ(Var("i"))))
    assert validate_subtyping(d)
    assert "leq-s-r" in d.rules()


def test_stream_size_antitone():
    ctx = _ctx()
    d = subtype_source(
        ctx, stream_at(succ(Var("i")), Var("A")), stream_at(Var("i"), Var("A"))
    )
    assert validate_subtyping(d)
    assert "leq-app-" in d.rules()
    with pytest.raises(SubtypeError):
        subtype_source(ctx, stream_at(Var("i"), Var("A")), stream_at(succ(Var("i")), Var("A")))


def test_grose_to_closure_ordinal():
    ctx = _ctx()
    small = capp(grose_def(), Var("i"), Var("F"), Var("A"))
    big = capp(grose_def(), infty(), Var("F"), Var("A"))
    d = subtype_source(ctx, small, big)
    assert validate_subtyping(d)
    # cross-check against a bounded search over the declarative rules
    kf, nf = check_and_normalize(ctx, small)
    _, ng = check_and_normalize(ctx, big)
    assert declarative_subtype_search(ctx, nf, ng, kf, depth=5)


def test_head_clash():
    ctx = _ctx()
    with pytest.raises(SubtypeError):
        subtype_source(ctx, nat_at(Var("i")), stream_at(Var("i"), Var("A")))


def test_reflexive_on_random_normal_forms():
    rng = random.Random(5)
    ctx = _ctx()
    for _ in range(100):
        c = random_constructor(rng, ctx, STAR, rng.randrange(5))
        k, nf = check_and_normalize(ctx, c)
        d = subtype(ctx, nf, nf, k)
        assert validate_subtyping(d)


def _weaken(rng, ctx, c, kind):
    """Produce a constructor provably above `c` by nudging ordinal arguments."""
    from fwh.constructor import App, Const, Lam, spine
    from fwh.normalize import as_ordnf

    match c:
        case Lam(h, k, b, p):
            return Lam(h, k, _weaken(rng, ctx, b, kind.cod if hasattr(kind, "cod") else kind), p)
        case App(_, _):
            head, args = spine(c)
            if isinstance(head, Const) and head.name == "mu" and rng.random() < 0.6:
                a = as_ordnf(args[0])
                if a is not None and not a.is_infty:
                    bigger = succ(args[0]) if rng.random() < 0.7 else infty()
                    return capp(head, bigger, *args[1:])
            if isinstance(head, Const) and head.name == "nu" and rng.random() < 0.6:
                a = as_ordnf(args[0])
                if a is not None and a.is_infty:
                    return c
            new_args = [
                _weaken(rng, ctx, a, STAR) if rng.random() < 0.4 else a for a in args[1:]
            ] if isinstance(head, Const) and head.name in ("+", "*") else args[1:]
            if isinstance(head, Const) and head.name in ("+", "*"):
                return capp(head, args[0], *new_args) if False else capp(head, *( [ _weaken(rng, ctx, a, STAR) for a in args ]))
            return c
        case _:
            return c


def test_transitivity_on_constructed_chains():
    rng = random.Random(13)
    ctx = _ctx()
    checked = 0
    for _ in range(200):
        c = random_constructor(rng, ctx, STAR, rng.randrange(4))
        k, n0 = check_and_normalize(ctx, c)
        n1_raw = _weaken(rng, ctx, n0, k)
        n2_raw = _weaken(rng, ctx, n1_raw, k)
        _, n1 = check_and_normalize(ctx, n1_raw)
        _, n2 = check_and_normalize(ctx, n2_raw)
        if not is_subtype(ctx, n0, n1, k) or not is_subtype(ctx, n1, n2, k):
            continue
        checked += 1
        d = subtype(ctx, n0, n2, k)
        assert validate_subtyping(d)
    assert checked > 50


def test_ord_antisymmetry():
    import itertools

    pool = [OrdNF(None)] + [OrdNF(v, k) for v in ("i", "j") for k in range(4)]
    for a, b in itertools.product(pool, pool):
        if ord_leq(a, b) and ord_leq(b, a):
            assert a == b


def test_monotone_head_application():
    # F : +kappa -> kappa' and G <= G' gives F G <= F G'
    ctx = _ctx()
    small = list_at(Var("i"), Var("A"))
    big = list_at(succ(Var("i")), Var("A"))
    assert is_subtype(ctx, *map(lambda c: check_and_normalize(ctx, c)[1], (small, big)), STAR)

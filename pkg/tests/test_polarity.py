import itertools

from fwh.constructor import KindContext, invert_context
from fwh.kinds import ORD, STAR, karrow
from fwh.polarity import MINUS, MIXED, PLUS, compose_polarity, polarity_leq

ALL = [PLUS, MINUS, MIXED]


def test_composition_table():
    assert compose_polarity(MINUS, MINUS) is PLUS
    assert compose_polarity(MIXED, PLUS) is MIXED
    assert compose_polarity(PLUS, MINUS) is MINUS


def test_composition_commutative_associative_identity():
    for p, q in itertools.product(ALL, ALL):
        assert compose_polarity(p, q) is compose_polarity(q, p)
        assert compose_polarity(PLUS, p) is p
    for p, q, r in itertools.product(ALL, ALL, ALL):
        assert compose_polarity(p, compose_polarity(q, r)) is compose_polarity(
            compose_polarity(p, q), r
        )


def test_ordering():
    assert polarity_leq(MIXED, PLUS)
    assert polarity_leq(PLUS, PLUS)
    assert not polarity_leq(PLUS, MINUS)
    for p in ALL:
        assert polarity_leq(p, p)
        assert polarity_leq(MIXED, p)


def test_invert_context_examples():
    d1 = KindContext().extend("X", PLUS, STAR)
    neg = invert_context(MINUS, d1)
    assert [e.pol for e in neg] == [MINUS]

    d2 = KindContext().extend("X", PLUS, STAR).extend("Y", MIXED, ORD)
    assert invert_context(PLUS, d2) == d2
    kept = invert_context(MIXED, d2)
    assert [e.name for e in kept] == ["Y"]


def test_invert_context_involutions():
    d = (
        KindContext()
        .extend("X", PLUS, STAR)
        .extend("Y", MINUS, karrow(PLUS, STAR, STAR))
        .extend("Z", MIXED, ORD)
    )
    assert invert_context(MINUS, invert_context(MINUS, d)) == d
    assert invert_context(PLUS, d) == d

import random

import pytest

from fwh.constructor import alpha_eq
from fwh.errors import ParseError
from fwh.kinds import KArrow, ORD, STAR
from fwh.parser import parse, parse_constructor, parse_kind, parse_term
from fwh.printer import show_constructor, show_kind, show_term
from fwh.terms import term_alpha_eq
from fwh.polarity import MINUS, MIXED, PLUS


def test_nat_declaration():
    src = "type Nat : ord ->+ * = \\i:ord. mu[i] (\\X:*. 1 + X)"
    f = parse(src)
    (decl,) = f.decls
    assert decl.name == "Nat"
    assert decl.kind == KArrow(PLUS, ORD, STAR)


def test_id_def():
    f = parse("def id : all A:*. A -> A = /\\A:*. \\x. x")
    (decl,) = f.decls
    assert decl.name == "id"


def test_succ_of_infty_parses_and_normalizes():
    from fwh.constructor import KindContext
    from fwh.normalize import check_and_normalize

    c = parse_constructor("mu[s oo] (\\X:*. 1 + X)")
    _, nf = check_and_normalize(KindContext(), c)
    assert show_constructor(nf) == "mu[oo] (\\X:*. 1 + X)"


def test_succ_postfix_vs_sum():
    # unspaced +N is the ordinal successor; a spaced + is the binary sum
    a = parse_constructor("Nat i+2")
    b = parse_constructor("A + 1")
    assert "(i+2)" in show_constructor(a)
    assert show_constructor(b) == "A + 1"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse("type = whoops")
    assert exc.value.line == 1 and exc.value.col > 0
    with pytest.raises(ParseError):
        parse_term("match x with { inr y => y ; inl z => z }")


def test_match_sugar_desugars_to_case():
    t = parse_term("match s with { inl x => <> ; inr y => y }")
    assert term_alpha_eq(t, parse_term("case s (\\x. <>) (\\y. y)"))


def test_shadowing():
    t = parse_term(r"\x. \x. x")
    u = parse_term(r"\a. \b. b")
    assert term_alpha_eq(t, u)


# round trips ------------------------------------------------------------------


def _round_trip_kind(k):
    assert parse_kind(show_kind(k)) == k


def _round_trip_constructor(c):
    printed = show_constructor(c)
    assert alpha_eq(parse_constructor(printed), c), printed


def _round_trip_term(t):
    printed = show_term(t)
    assert term_alpha_eq(parse_term(printed), t), printed


def random_kind(rng, depth):
    if depth <= 0 or rng.random() < 0.4:
        return rng.choice([STAR, ORD])
    return KArrow(
        rng.choice([PLUS, MINUS, MIXED]),
        random_kind(rng, depth - 1),
        random_kind(rng, depth - 1),
    )


def random_surface_constructor(rng, depth, scope):
    from fwh.constructor import (
        App,
        Const,
        Var,
        arrow,
        capp,
        forall,
        infty,
        lam,
        mu,
        nu,
        prod,
        succ,
        sum_,
    )

    if depth <= 0:
        pool = [Const("1"), infty(), Var("G")]
        if scope:
            pool.append(Var(rng.choice(scope)))
        return rng.choice(pool)
    roll = rng.random()
    rec = lambda: random_surface_constructor(rng, depth - 1, scope)
    if roll < 0.12:
        x = f"V{rng.randrange(100)}"
        return lam(x, random_kind(rng, 1), random_surface_constructor(rng, depth - 1, scope + (x,)))
    if roll < 0.24:
        x = f"V{rng.randrange(100)}"
        return forall(x, random_kind(rng, 1), random_surface_constructor(rng, depth - 1, scope + (x,)))
    if roll < 0.4:
        return arrow(rec(), rec())
    if roll < 0.55:
        return sum_(rec(), rec())
    if roll < 0.7:
        return prod(rec(), rec())
    if roll < 0.8:
        # application spines in the surface grammar are atom-headed
        return App(Var(f"H{rng.randrange(100)}"), rec())
    if roll < 0.9:
        return capp(Const("mu"), rec(), rec())
    return succ(rec())


def random_surface_term(rng, depth, scope):
    from fwh.terms import Anno, Fix, TmApp, TmConst, TmVar, tmlam, tylam

    if depth <= 0:
        pool = [TmConst("unit"), TmConst("fst"), TmVar("g")]
        if scope:
            pool.append(TmVar(rng.choice(scope)))
        return rng.choice(pool)
    roll = rng.random()
    rec = lambda: random_surface_term(rng, depth - 1, scope)
    if roll < 0.2:
        x = f"w{rng.randrange(100)}"
        anno = random_surface_constructor(rng, 1, ()) if rng.random() < 0.3 else None
        return tmlam(x, anno, random_surface_term(rng, depth - 1, scope + (x,)))
    if roll < 0.3:
        x = f"W{rng.randrange(100)}"
        return tylam(x, random_kind(rng, 1), random_surface_term(rng, depth - 1, scope))
    if roll < 0.55:
        return TmApp(rec(), rec())
    if roll < 0.65:
        from fwh.terms import TyApp

        return TyApp(rec(), random_surface_constructor(rng, 1, ()))
    if roll < 0.75:
        return Anno(rec(), random_surface_constructor(rng, 1, ()))
    if roll < 0.85:
        return TmApp(TmApp(TmConst("pair"), rec()), rec())
    return Fix(
        rng.choice(["mu", "nu"]),
        rng.randrange(3),
        random_surface_constructor(rng, 1, ()),
        rec(),
    )


def test_round_trip_random_declarations():
    rng = random.Random(2024)
    for i in range(500):
        k = random_kind(rng, 3)
        _round_trip_kind(k)
        c = random_surface_constructor(rng, rng.randrange(5), ())
        _round_trip_constructor(c)
        t = random_surface_term(rng, rng.randrange(5), ())
        _round_trip_term(t)


def test_round_trip_corpus_files():
    from fwh.driver import corpus_path, prelude_source
    from fwh.parser import SourceFile
    from fwh.printer import show_constructor as sc, show_kind as sk, show_term as st

    names = ["prelude.fwh", "natops.fwh", "streams.fwh", "zipstream.fwh",
             "bf.fwh", "eqgrose.fwh", "loop.fwh", "loopnot.fwh", "hungry.fwh"]
    for name in names:
        with open(corpus_path(name), encoding="utf-8") as fh:
            src = fh.read()
        f = parse(src)
        lines = []
        for d in f.decls:
            if hasattr(d, "body"):
                lines.append(f"type {d.name} : {sk(d.kind)} = {sc(d.body)}")
            else:
                lines.append(f"def {d.name} : {sc(d.type)} = {st(d.term)}")
        f2 = parse("\n".join(lines))
        assert len(f2.decls) == len(f.decls)
        for a, b in zip(f.decls, f2.decls):
            if hasattr(a, "body"):
                assert a.kind == b.kind and alpha_eq(a.body, b.body), a.name
            else:
                assert alpha_eq(a.type, b.type) and term_alpha_eq(a.term, b.term), a.name

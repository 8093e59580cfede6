"""Shared constructor builders for the test suite."""

from __future__ import annotations

import random

from fwh.constructor import (
    App,
    Const,
    Constructor,
    CtxEntry,
    KindContext,
    Lam,
    UNIT,
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
from fwh.kinds import KArrow, ORD, STAR, karrow
from fwh.polarity import MINUS, MIXED, PLUS

EMPTY = KindContext()

unit = Const(UNIT)


def ctx(*entries):
    out = KindContext()
    for name, pol, kind in entries:
        out = out.extend(name, pol, kind)
    return out


def nat_def() -> Constructor:
    """ord-indexed naturals: \\i. mu[i] (\\X. 1 + X)"""
    return lam("i", ORD, mu(STAR, Var("i"), lam("X", STAR, sum_(unit, Var("X")))))


def list_def() -> Constructor:
    return lam(
        "i",
        ORD,
        lam(
            "A",
            STAR,
            mu(STAR, Var("i"), lam("X", STAR, sum_(unit, prod(Var("A"), Var("X"))))),
        ),
    )


def stream_def() -> Constructor:
    return lam(
        "i",
        ORD,
        lam("A", STAR, nu(STAR, Var("i"), lam("X", STAR, prod(Var("A"), Var("X"))))),
    )


def grose_def() -> Constructor:
    return lam(
        "i",
        ORD,
        lam(
            "F",
            karrow(PLUS, STAR, STAR),
            lam(
                "A",
                STAR,
                mu(
                    STAR,
                    Var("i"),
                    lam(
                        "X",
                        STAR,
                        sum_(unit, prod(Var("A"), App(Var("F"), Var("X")))),
                    ),
                ),
            ),
        ),
    )


def rose_def() -> Constructor:
    """Non-empty finitely branching trees: \\i A. mu[i] (\\X. A * List[oo] X)."""
    return lam(
        "i",
        ORD,
        lam(
            "A",
            STAR,
            mu(
                STAR,
                Var("i"),
                lam("X", STAR, prod(Var("A"), capp(list_def(), infty(), Var("X")))),
            ),
        ),
    )


def hungry_def() -> Constructor:
    return lam(
        "i",
        ORD,
        lam("A", STAR, mu(STAR, Var("i"), lam("X", STAR, arrow(Var("A"), Var("X"))))),
    )


def nat_at(a: Constructor) -> Constructor:
    return App(nat_def(), a)


def list_at(a: Constructor, elem: Constructor) -> Constructor:
    return capp(list_def(), a, elem)


def stream_at(a: Constructor, elem: Constructor) -> Constructor:
    return capp(stream_def(), a, elem)


def random_kind(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.5:
        return rng.choice([STAR, STAR, ORD])
    pol = rng.choice([PLUS, MINUS, MIXED])
    return karrow(pol, random_kind(rng, depth - 1), random_kind(rng, depth - 1))


def random_constructor(rng: random.Random, context: KindContext, kind, depth: int) -> Constructor:
    """A random well-kinded constructor of the given kind."""
    candidates = [e for e in context if e.kind == kind and e.pol in (PLUS, MIXED)]
    if depth <= 0:
        if isinstance(kind, KArrow):
            x = f"v{rng.randrange(10**6)}"
            body = random_constructor(
                rng, context.extend(x, kind.pol, kind.dom), kind.cod, 0
            )
            return lam(x, kind.dom, body)
        if candidates and rng.random() < 0.5:
            return Var(rng.choice(candidates).name)
        return unit if kind == STAR else infty()

    if isinstance(kind, KArrow):
        x = f"v{rng.randrange(10**6)}"
        body = random_constructor(
            rng, context.extend(x, kind.pol, kind.dom), kind.cod, depth - 1
        )
        return lam(x, kind.dom, body)

    if kind == ORD:
        roll = rng.random()
        if roll < 0.3:
            return infty()
        if roll < 0.6 and candidates:
            return Var(rng.choice(candidates).name)
        return succ(random_constructor(rng, context, ORD, depth - 1))

    roll = rng.random()
    if roll < 0.15 and candidates:
        return Var(rng.choice(candidates).name)
    if roll < 0.3:
        return unit
    if roll < 0.5:
        return sum_(
            random_constructor(rng, context, STAR, depth - 1),
            random_constructor(rng, context, STAR, depth - 1),
        )
    if roll < 0.65:
        return prod(
            random_constructor(rng, context, STAR, depth - 1),
            random_constructor(rng, context, STAR, depth - 1),
        )
    if roll < 0.8:
        return arrow(
            random_constructor(rng, context, STAR, depth - 1),
            random_constructor(rng, context, STAR, depth - 1),
        )
    if roll < 0.9:
        return mu(
            STAR,
            random_constructor(rng, context, ORD, depth - 1),
            _positive_functional(rng, context, depth - 1),
        )
    return nu(
        STAR,
        random_constructor(rng, context, ORD, depth - 1),
        _positive_functional(rng, context, depth - 1),
    )


def _positive_functional(rng, context, depth):
    x = f"v{rng.randrange(10**6)}"
    inner = context.extend(x, PLUS, STAR)
    if depth <= 0 or rng.random() < 0.4:
        body = sum_(unit, Var(x))
    else:
        body = sum_(
            random_constructor(rng, context, STAR, depth - 1),
            prod(random_constructor(rng, context, STAR, depth - 1), Var(x)),
        )
    return lam(x, STAR, body)

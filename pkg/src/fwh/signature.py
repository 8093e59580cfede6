"""Closed type schemes of the term constants."""

from __future__ import annotations

from .constructor import (
    Const,
    Constructor,
    MU,
    NU,
    UNIT,
    Var,
    arrow,
    capp,
    forall,
    prod,
    succ,
    sum_,
)
from .errors import UnknownConstant
from .kinds import Kind, ORD, STAR, karrow, spine_kinds
from .polarity import PLUS
from .terms import OUT


def _fold_scheme(kind: Kind, flavor: str, outward: bool) -> Constructor:
    """in/out at a pure kind: quantify over the functional, the parameters
    of the kind, and the size; fold targets the successor stage."""
    fix = MU if flavor == "mu" else NU
    params, base = spine_kinds(kind)
    assert base == STAR
    f_kind = karrow(PLUS, kind, kind)
    pnames = [f"G{i+1}" for i in range(len(params))]
    i = Var("i")
    inner_fix = capp(Const(fix, kind), i, Var("F"))
    unrolled = capp(Var("F"), inner_fix, *map(Var, pnames))
    rolled = capp(Const(fix, kind), succ(i), Var("F"), *map(Var, pnames))
    body = arrow(unrolled, rolled) if not outward else arrow(rolled, unrolled)
    body = forall("i", ORD, body)
    for name, (_, pk) in reversed(list(zip(pnames, params))):
        body = forall(name, pk, body)
    return forall("F", f_kind, body)


def signature_type(
    name: str, kind: Kind | None = None, flavor: str | None = None
) -> Constructor:
    """The closed scheme of a term constant.

    `in` and `out` form a family indexed by a pure kind and a fixed-point
    flavor; the other constants are single schemes.
    """
    a, b, c = Var("A"), Var("B"), Var("C")
    match name:
        case "unit":
            return Const(UNIT)
        case "pair":
            return forall("A", STAR, forall("B", STAR, arrow(a, arrow(b, prod(a, b)))))
        case "fst":
            return forall("A", STAR, forall("B", STAR, arrow(prod(a, b), a)))
        case "snd":
            return forall("A", STAR, forall("B", STAR, arrow(prod(a, b), b)))
        case "inl":
            return forall("A", STAR, forall("B", STAR, arrow(a, sum_(a, b))))
        case "inr":
            return forall("A", STAR, forall("B", STAR, arrow(b, sum_(a, b))))
        case "case":
            return forall(
                "A",
                STAR,
                forall(
                    "B",
                    STAR,
                    forall(
                        "C",
                        STAR,
                        arrow(sum_(a, b), arrow(arrow(a, c), arrow(arrow(b, c), c))),
                    ),
                ),
            )
        case "in" | "out":
            if kind is None or flavor is None:
                raise UnknownConstant(f"{name} needs a kind instance and a flavor")
            return _fold_scheme(kind, flavor, outward=(name == OUT))
    raise UnknownConstant(f"no signature for constant {name!r}")

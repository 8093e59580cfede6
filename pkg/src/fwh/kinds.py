"""Kinds: *, ord and polarized arrows."""

from __future__ import annotations

from dataclasses import dataclass

from .polarity import MIXED, Polarity, polarity_leq


class Kind:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Star(Kind):
    def __str__(self):
        return "*"


@dataclass(frozen=True, slots=True)
class Ord(Kind):
    def __str__(self):
        return "ord"


@dataclass(frozen=True, slots=True)
class KArrow(Kind):
    pol: Polarity
    dom: Kind
    cod: Kind

    def __str__(self):
        dom = f"({self.dom})" if isinstance(self.dom, KArrow) else str(self.dom)
        return f"{dom} ->{self.pol} {self.cod}"


STAR = Star()
ORD = Ord()


def karrow(pol: Polarity, dom: Kind, cod: Kind) -> Kind:
    return KArrow(pol, dom, cod)


def is_pure(k: Kind) -> bool:
    """A kind is pure when ord occurs nowhere in it."""
    match k:
        case Star():
            return True
        case Ord():
            return False
        case KArrow(_, dom, cod):
            return is_pure(dom) and is_pure(cod)
    raise TypeError(k)


def kind_usable_as(have: Kind, want: Kind) -> bool:
    """Whether a constructor of inferred kind `have` fits where `want` is needed.

    Inference assigns each abstraction its most precise polarity; any weaker
    polarity is derivable by re-deriving the abstraction (or, for variables,
    by an eta-expansion that the equational theory identifies with the
    original).  Domains are annotation-determined, hence compared exactly.
    """
    match (have, want):
        case (Star(), Star()) | (Ord(), Ord()):
            return True
        case (KArrow(p1, d1, c1), KArrow(p2, d2, c2)):
            return polarity_leq(p2, p1) and d1 == d2 and kind_usable_as(c1, c2)
    return False


def spine_kinds(k: Kind) -> tuple[list[tuple[Polarity, Kind]], Kind]:
    """Split p1 k1 -> ... -> pn kn -> base into argument slots and base."""
    args = []
    while isinstance(k, KArrow):
        args.append((k.pol, k.dom))
        k = k.cod
    return args, k


def arity(k: Kind) -> int:
    return len(spine_kinds(k)[0])


def mixed_arrow(dom: Kind, cod: Kind) -> Kind:
    return KArrow(MIXED, dom, cod)

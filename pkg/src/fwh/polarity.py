"""Variance annotations on kind arrows and their algebra."""

from __future__ import annotations


class Polarity:
    """One of + (covariant), - (contravariant), o (mixed)."""

    __slots__ = ("symbol",)
    _interned: dict[str, "Polarity"] = {}

    def __new__(cls, symbol: str):
        if symbol not in ("+", "-", "o"):
            raise ValueError(f"bad polarity {symbol!r}")
        if symbol not in cls._interned:
            inst = super().__new__(cls)
            object.__setattr__(inst, "symbol", symbol)
            cls._interned[symbol] = inst
        return cls._interned[symbol]

    def __setattr__(self, *a):
        raise AttributeError("Polarity is immutable")

    def __repr__(self):
        return f"Polarity({self.symbol!r})"

    def __str__(self):
        return self.symbol


PLUS = Polarity("+")
MINUS = Polarity("-")
MIXED = Polarity("o")


def compose_polarity(p: Polarity, q: Polarity) -> Polarity:
    """Product pq: + is the identity, -- = +, and o absorbs."""
    if p is MIXED or q is MIXED:
        return MIXED
    if p is PLUS:
        return q
    if q is PLUS:
        return p
    return PLUS  # -- = +


def polarity_leq(p: Polarity, q: Polarity) -> bool:
    """Ordering generated by p <= p and o <= p."""
    return p is q or p is MIXED


def polarity_meet(p: Polarity | None, q: Polarity | None) -> Polarity | None:
    """Greatest lower bound; None stands for 'unused' and is the top."""
    if p is None:
        return q
    if q is None:
        return p
    return p if p is q else MIXED


def negate(p: Polarity) -> Polarity:
    return compose_polarity(MINUS, p)

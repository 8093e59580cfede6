"""Finite-scale oracle for limits over complete lattices.

The lattice is the powerset of a small base set; omega-indexed sequences
are eventually periodic (a finite prefix and a forever-repeated cycle), so
the limit inferior and superior at omega are exactly computable: only the
cycle matters.  Transfinite iteration is tracked through ordinal tokens
0..k, omega, omega+1..omega+k; on a finite lattice every iteration sequence
is eventually periodic, and the omega stage is the limit superior of the
cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce


@dataclass(frozen=True)
class FinLattice:
    base: frozenset

    def __post_init__(self):
        assert len(self.base) <= 4, "the oracle works at desk scale"

    def elements(self) -> list[frozenset]:
        items = sorted(self.base)
        out = []
        for r in range(len(items) + 1):
            for combo in itertools.combinations(items, r):
                out.append(frozenset(combo))
        return out

    @property
    def bot(self) -> frozenset:
        return frozenset()

    @property
    def top(self) -> frozenset:
        return self.base

    def leq(self, x: frozenset, y: frozenset) -> bool:
        return x <= y

    def sup(self, xs) -> frozenset:
        return reduce(frozenset.union, xs, frozenset())

    def inf(self, xs) -> frozenset:
        xs = list(xs)
        if not xs:
            return self.base
        return reduce(frozenset.intersection, xs)


@dataclass(frozen=True)
class OrdSeq:
    """An eventually periodic function from omega into a lattice (or tokens)."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        assert len(self.cycle) >= 1, "cycle must be non-empty"

    def at(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def map(self, f) -> "OrdSeq":
        return OrdSeq(tuple(f(x) for x in self.prefix), tuple(f(x) for x in self.cycle))

    def tail_values(self, n0: int) -> list:
        """All values attained from n0 onward (exact, by periodicity)."""
        rest_prefix = list(self.prefix[n0:]) if n0 < len(self.prefix) else []
        return rest_prefix + list(self.cycle)


def seq_zip(a: OrdSeq, b: OrdSeq, f) -> OrdSeq:
    """Pointwise combination, eventually periodic with the lcm cycle."""
    import math

    plen = max(len(a.prefix), len(b.prefix))
    clen = math.lcm(len(a.cycle), len(b.cycle))
    prefix = tuple(f(a.at(n), b.at(n)) for n in range(plen))
    cycle = tuple(f(a.at(plen + k), b.at(plen + k)) for k in range(clen))
    return OrdSeq(prefix, cycle)


def seq_tabulate(fn, plen: int, clen: int) -> OrdSeq:
    """Build a sequence from a function known to be periodic past `plen`."""
    return OrdSeq(
        tuple(fn(n) for n in range(plen)),
        tuple(fn(plen + k) for k in range(clen)),
    )


def liminf_omega(lat: FinLattice, f: OrdSeq) -> frozenset:
    """sup over starting points of the inf of the tail; only the cycle counts."""
    return lat.inf(f.cycle)


def limsup_omega(lat: FinLattice, f: OrdSeq) -> frozenset:
    return lat.sup(f.cycle)


def inf_omega(lat: FinLattice, f: OrdSeq) -> frozenset:
    return lat.inf(f.prefix + f.cycle)


def sup_omega(lat: FinLattice, f: OrdSeq) -> frozenset:
    return lat.sup(f.prefix + f.cycle)


def liminf_brute(lat: FinLattice, f: OrdSeq, n0_max: int) -> frozenset:
    """The defining double sup/inf truncated at n0_max (exact once past the
    prefix plus one cycle)."""
    horizon = len(f.prefix) + 2 * len(f.cycle) + n0_max
    return lat.sup(
        lat.inf(f.at(n) for n in range(n0, horizon)) for n0 in range(n0_max + 1)
    )


def limsup_brute(lat: FinLattice, f: OrdSeq, n0_max: int) -> frozenset:
    horizon = len(f.prefix) + 2 * len(f.cycle) + n0_max
    return lat.inf(
        lat.sup(f.at(n) for n in range(n0, horizon)) for n0 in range(n0_max + 1)
    )


# ordinal tokens --------------------------------------------------------------

FIN = "fin"
OM = "om"


def fin(k: int):
    return (FIN, k)


def om(j: int = 0):
    return (OM, j)


def token_leq(a, b) -> bool:
    if a[0] == FIN:
        return b[0] == OM or a[1] <= b[1]
    return b[0] == OM and a[1] <= b[1]


def token_min(tokens):
    return min(tokens, key=_token_key)


def token_max(tokens):
    return max(tokens, key=_token_key)


def _token_key(t):
    return (0, t[1]) if t[0] == FIN else (1, t[1])


def token_liminf(phi: OrdSeq):
    """liminf at omega of a token-valued eventually periodic map."""
    return token_min(phi.cycle)


def token_limsup(phi: OrdSeq):
    return token_max(phi.cycle)


@dataclass(frozen=True)
class AffinePhi:
    """phi(a) = min(b*a + beta, top) with b in {0,1} and finite beta."""

    b: int
    beta: int

    def at(self, n: int):
        return fin(self.b * n + self.beta)

    def at_omega(self):
        return om(self.beta) if self.b == 1 else fin(self.beta)

    def liminf(self):
        return om(0) if self.b == 1 else fin(self.beta)


class MonoOp:
    """A monotone total table over the lattice, checked at construction."""

    __slots__ = ("lat", "table")

    def __init__(self, lat: FinLattice, table: dict):
        self.lat = lat
        self.table = dict(table)
        elems = lat.elements()
        for x in elems:
            assert x in self.table, f"table not total at {set(x)}"
        for x in elems:
            for y in elems:
                if x <= y and not self.table[x] <= self.table[y]:
                    raise ValueError(f"table not monotone at {set(x)} <= {set(y)}")

    @staticmethod
    def from_function(lat: FinLattice, fn) -> "MonoOp":
        return MonoOp(lat, {x: fn(x) for x in lat.elements()})

    def __call__(self, x: frozenset) -> frozenset:
        return self.table[x]

    def join(self, other: "MonoOp") -> "MonoOp":
        return MonoOp.from_function(self.lat, lambda x: self(x) | other(x))

    def meet(self, other: "MonoOp") -> "MonoOp":
        return MonoOp.from_function(self.lat, lambda x: self(x) & other(x))

    def __eq__(self, other):
        return isinstance(other, MonoOp) and self.table == other.table

    def __hash__(self):
        return hash(tuple(sorted(self.table.items(), key=lambda kv: tuple(sorted(kv[0])))))


def _iteration_seq(op, start: frozenset):
    """The iterates start, f(start), ... as prefix+cycle (finite state space)."""
    seen: dict[frozenset, int] = {}
    seq = []
    cur = start
    while cur not in seen:
        seen[cur] = len(seq)
        seq.append(cur)
        cur = op(cur)
    first = seen[cur]
    return OrdSeq(tuple(seq[:first]), tuple(seq[first:]))


def iterate(op, start: frozenset, alpha) -> frozenset:
    """Transfinite iteration f^alpha(start) at an ordinal token.

    Finite stages apply the table; the omega stage is the limit superior of
    the iteration sequence, and omega+j applies the table j more times.
    Works for any table; for a monotone one, iteration from bottom or top is
    an ascending or descending chain, so omega is the reached fixed point.
    """
    lat = op.lat
    seq = _iteration_seq(op, start)
    kind, k = alpha
    if kind == FIN:
        return seq.at(k)
    at_omega = limsup_omega(lat, seq)
    for _ in range(k):
        at_omega = op(at_omega)
    return at_omega


def mu_approx(op, alpha) -> frozenset:
    return iterate(op, op.lat.bot, alpha)


def nu_approx(op, alpha) -> frozenset:
    return iterate(op, op.lat.top, alpha)


def random_subset(rng, lat: FinLattice) -> frozenset:
    return frozenset(x for x in lat.base if rng.random() < 0.5)


def random_seq(rng, lat: FinLattice, max_prefix=3, max_cycle=3) -> OrdSeq:
    plen = rng.randrange(max_prefix + 1)
    clen = rng.randrange(1, max_cycle + 1)
    return OrdSeq(
        tuple(random_subset(rng, lat) for _ in range(plen)),
        tuple(random_subset(rng, lat) for _ in range(clen)),
    )


def random_monotone_op(rng, lat: FinLattice) -> MonoOp:
    """A random monotone table via a monotone completion over the subset order."""
    elems = sorted(lat.elements(), key=lambda s: (len(s), tuple(sorted(s))))
    table: dict[frozenset, frozenset] = {}
    for x in elems:
        lower = lat.sup(table[y] for y in table if y <= x)
        extra = frozenset(e for e in lat.base if rng.random() < 0.3)
        table[x] = lower | extra
    return MonoOp.from_function(lat, lambda s: table[s])


def random_antitone_seq(rng, lat: FinLattice) -> OrdSeq:
    """A descending eventually periodic sequence (for antitone generators)."""
    cur = lat.top
    plen = rng.randrange(4)
    prefix = []
    for _ in range(plen):
        prefix.append(cur)
        cur = cur & random_subset(rng, lat) if rng.random() < 0.7 else cur
    return OrdSeq(tuple(prefix), (cur,))


def random_monotone_seq(rng, lat: FinLattice) -> OrdSeq:
    cur = lat.bot
    plen = rng.randrange(4)
    prefix = []
    for _ in range(plen):
        prefix.append(cur)
        cur = cur | random_subset(rng, lat) if rng.random() < 0.7 else cur
    return OrdSeq(tuple(prefix), (cur,))

"""Type-constructor ASTs, binding machinery and kinding contexts.

Representation is locally nameless: bound variables are de Bruijn indices
(`Bound`), free variables are names (`Var`).  Substitution of a constructor
for a free name can never capture, and alpha-equivalence is structural.
Binders keep a pretty-printing hint and, after kind elaboration, the
polarity inferred for the bound variable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ImpureKind
from .kinds import Kind, ORD, STAR, is_pure, karrow
from .polarity import MINUS, MIXED, PLUS, Polarity, negate

UNIT = "1"
SUM = "+"
PROD = "*"
ARROW = "->"
FORALL = "all"
MU = "mu"
NU = "nu"
SUCC = "s"
INFTY = "oo"

_SIMPLE_CONST_KINDS = {
    UNIT: STAR,
    SUM: karrow(PLUS, STAR, karrow(PLUS, STAR, STAR)),
    PROD: karrow(PLUS, STAR, karrow(PLUS, STAR, STAR)),
    ARROW: karrow(MINUS, STAR, karrow(PLUS, STAR, STAR)),
    SUCC: karrow(PLUS, ORD, ORD),
    INFTY: ORD,
}


class Constructor:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(Constructor):
    name: str
    kind_arg: Kind | None = None

    def __post_init__(self):
        if self.name in (MU, NU) and self.kind_arg is not None:
            if not is_pure(self.kind_arg):
                raise ImpureKind(
                    f"fixed-point constructor instantiated at impure kind {self.kind_arg}"
                )


@dataclass(frozen=True, slots=True)
class Var(Constructor):
    name: str


@dataclass(frozen=True, slots=True)
class Bound(Constructor):
    index: int


@dataclass(frozen=True, slots=True)
class Lam(Constructor):
    hint: str
    kind: Kind
    body: Constructor
    pol: Polarity | None = None


@dataclass(frozen=True, slots=True)
class App(Constructor):
    fun: Constructor
    arg: Constructor


def const_kind(c: Const) -> Kind:
    """Signature kind of a constructor constant."""
    if c.name in _SIMPLE_CONST_KINDS:
        return _SIMPLE_CONST_KINDS[c.name]
    k = c.kind_arg
    if k is None:
        raise ImpureKind(f"constant {c.name} lacks its kind instance")
    if c.name == FORALL:
        return karrow(PLUS, karrow(MIXED, k, STAR), STAR)
    if c.name == MU:
        return karrow(PLUS, ORD, karrow(PLUS, karrow(PLUS, k, k), k))
    if c.name == NU:
        return karrow(MINUS, ORD, karrow(PLUS, karrow(PLUS, k, k), k))
    raise ImpureKind(f"unknown constant {c.name}")


def capp(fun: Constructor, *args: Constructor) -> Constructor:
    for a in args:
        fun = App(fun, a)
    return fun


def spine(c: Constructor) -> tuple[Constructor, list[Constructor]]:
    args: list[Constructor] = []
    while isinstance(c, App):
        args.append(c.arg)
        c = c.fun
    args.reverse()
    return c, args


def _shift_open(c: Constructor, depth: int, repl: Constructor) -> Constructor:
    match c:
        case Bound(i):
            return repl if i == depth else c
        case Lam(h, k, b, p):
            return Lam(h, k, _shift_open(b, depth + 1, repl), p)
        case App(f, a):
            return App(_shift_open(f, depth, repl), _shift_open(a, depth, repl))
        case _:
            return c


def open_c(c: Constructor, repl: Constructor) -> Constructor:
    """Instantiate the outermost bound variable of a binder body."""
    return _shift_open(c, 0, repl)


def open_lam(lam: Lam, name: str) -> Constructor:
    return open_c(lam.body, Var(name))


def close_c(c: Constructor, name: str, depth: int = 0) -> Constructor:
    """Abstract the free variable `name` as the binder at `depth`."""
    match c:
        case Var(n) if n == name:
            return Bound(depth)
        case Lam(h, k, b, p):
            return Lam(h, k, close_c(b, name, depth + 1), p)
        case App(f, a):
            return App(close_c(f, name, depth), close_c(a, name, depth))
        case _:
            return c


def lam(name: str, kind: Kind, body: Constructor, pol: Polarity | None = None) -> Lam:
    """Bind the free occurrences of `name` in `body`."""
    return Lam(name, kind, close_c(body, name), pol)


def forall(name: str, kind: Kind, body: Constructor) -> Constructor:
    return App(Const(FORALL, kind), lam(name, kind, body))


def arrow(a: Constructor, b: Constructor) -> Constructor:
    return capp(Const(ARROW), a, b)


def sum_(a: Constructor, b: Constructor) -> Constructor:
    return capp(Const(SUM), a, b)


def prod(a: Constructor, b: Constructor) -> Constructor:
    return capp(Const(PROD), a, b)


def mu(kind: Kind, size: Constructor, functional: Constructor, *params: Constructor):
    return capp(Const(MU, kind), size, functional, *params)


def nu(kind: Kind, size: Constructor, functional: Constructor, *params: Constructor):
    return capp(Const(NU, kind), size, functional, *params)


def succ(a: Constructor) -> Constructor:
    return App(Const(SUCC), a)


def infty() -> Constructor:
    return Const(INFTY)


def subst_constructor(g: Constructor, name: str, f: Constructor) -> Constructor:
    """[g/name]f; capture-free because bound variables are indices."""
    match f:
        case Var(n):
            return g if n == name else f
        case Lam(h, k, b, p):
            return Lam(h, k, subst_constructor(g, name, b), p)
        case App(fn, a):
            return App(subst_constructor(g, name, fn), subst_constructor(g, name, a))
        case _:
            return f


def free_vars(c: Constructor) -> frozenset[str]:
    match c:
        case Var(n):
            return frozenset((n,))
        case Lam(_, _, b, _):
            return free_vars(b)
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case _:
            return frozenset()


def alpha_eq(a: Constructor, b: Constructor) -> bool:
    """Equality up to binder hints (and elaboration marks)."""
    match (a, b):
        case (Const(n1, k1), Const(n2, k2)):
            return n1 == n2 and k1 == k2
        case (Var(n1), Var(n2)):
            return n1 == n2
        case (Bound(i1), Bound(i2)):
            return i1 == i2
        case (Lam(_, k1, b1, _), Lam(_, k2, b2, _)):
            return k1 == k2 and alpha_eq(b1, b2)
        case (App(f1, a1), App(f2, a2)):
            return alpha_eq(f1, f2) and alpha_eq(a1, a2)
    return False


def strip_marks(c: Constructor) -> Constructor:
    """Drop inferred polarity marks and binder hints (for canonical forms)."""
    match c:
        case Lam(_, k, b, _):
            return Lam("_", k, strip_marks(b), None)
        case App(f, a):
            return App(strip_marks(f), strip_marks(a))
        case _:
            return c


@dataclass(frozen=True, slots=True)
class CtxEntry:
    name: str
    pol: Polarity
    kind: Kind


class KindContext:
    """Ordered polarized context; lookup returns the rightmost binding."""

    __slots__ = ("entries",)

    def __init__(self, entries: tuple[CtxEntry, ...] = ()):
        self.entries = entries

    def extend(self, name: str, pol: Polarity, kind: Kind) -> "KindContext":
        return KindContext(self.entries + (CtxEntry(name, pol, kind),))

    def lookup(self, name: str) -> CtxEntry | None:
        for e in reversed(self.entries):
            if e.name == name:
                return e
        return None

    def remove(self, name: str) -> "KindContext":
        out, dropped = [], False
        for e in reversed(self.entries):
            if not dropped and e.name == name:
                dropped = True
                continue
            out.append(e)
        out.reverse()
        return KindContext(tuple(out))

    def repol(self, name: str, pol: Polarity) -> "KindContext":
        out = []
        done = False
        for e in reversed(self.entries):
            if not done and e.name == name:
                out.append(CtxEntry(name, pol, e.kind))
                done = True
            else:
                out.append(e)
        out.reverse()
        return KindContext(tuple(out))

    def names(self) -> frozenset[str]:
        return frozenset(e.name for e in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, KindContext) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        inner = ", ".join(f"{e.name}:{e.pol}{e.kind}" for e in self.entries)
        return f"[{inner}]"


def invert_context(p: Polarity, ctx: KindContext) -> KindContext:
    """Inverse application of a polarity to a context.

    +^-1 is the identity, -^-1 negates every binding, and o^-1 keeps only
    the mixed bindings.
    """
    if p is PLUS:
        return ctx
    if p is MINUS:
        return KindContext(
            tuple(CtxEntry(e.name, negate(e.pol), e.kind) for e in ctx.entries)
        )
    return KindContext(tuple(e for e in ctx.entries if e.pol is MIXED))


class FreshNames:
    """Deterministic fresh-name supply; '^' never appears in source names.

    Distinct supplies can collide, so entry points seed theirs above every
    suffix already present in the input (`avoiding`), which keeps results
    deterministic while ruling out capture of free variables.
    """

    def __init__(self, floor: int = 0):
        self.counter = floor

    @staticmethod
    def avoiding(names) -> "FreshNames":
        floor = 0
        for n in names:
            base, sep, suffix = n.rpartition("^")
            if sep and suffix.isdigit():
                floor = max(floor, int(suffix))
        return FreshNames(floor)

    def fresh(self, hint: str) -> str:
        self.counter += 1
        base = hint.split("^", 1)[0] or "x"
        return f"{base}^{self.counter}"

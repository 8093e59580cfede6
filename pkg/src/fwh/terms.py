"""Object-level terms, typing contexts, erasure and substitution.

Terms are locally nameless at both binding levels: `TmBound` indices for
term binders and constructor-level `Bound` indices for type binders
(`TyLam`), which scope over every constructor embedded in their body
(annotations, instantiations, fix motives).
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import (
    Constructor,
    KindContext,
    _shift_open,
    close_c,
)
from .kinds import Kind, STAR
from .polarity import MIXED

UNIT_TM = "unit"
PAIR = "pair"
FST = "fst"
SND = "snd"
INL = "inl"
INR = "inr"
CASE = "case"
IN = "in"
OUT = "out"

TERM_CONSTANTS = (UNIT_TM, PAIR, FST, SND, INL, INR, CASE, IN, OUT)


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TmConst(Term):
    name: str


@dataclass(frozen=True, slots=True)
class TmVar(Term):
    name: str


@dataclass(frozen=True, slots=True)
class TmBound(Term):
    index: int


@dataclass(frozen=True, slots=True)
class TmLam(Term):
    hint: str
    anno: Constructor | None
    body: Term


@dataclass(frozen=True, slots=True)
class TmApp(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class TyLam(Term):
    hint: str
    kind: Kind
    body: Term


@dataclass(frozen=True, slots=True)
class TyApp(Term):
    term: Term
    arg: Constructor


@dataclass(frozen=True, slots=True)
class Anno(Term):
    term: Term
    anno: Constructor


@dataclass(frozen=True, slots=True)
class Fix(Term):
    flavor: str  # "mu" | "nu"
    n: int
    motive: Constructor | None  # None only in erased terms
    func: Term

    def __post_init__(self):
        assert self.flavor in ("mu", "nu") and self.n >= 0


def tapp(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = TmApp(fun, a)
    return fun


def tm_spine(t: Term) -> tuple[Term, list[Term]]:
    args: list[Term] = []
    while isinstance(t, TmApp):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _map_constructors(t: Term, f, tydepth: int) -> Term:
    """Rebuild `t`, applying f(c, tydepth) to every embedded constructor."""
    match t:
        case TmLam(h, anno, body):
            anno2 = None if anno is None else f(anno, tydepth)
            return TmLam(h, anno2, _map_constructors(body, f, tydepth))
        case TmApp(fun, arg):
            return TmApp(_map_constructors(fun, f, tydepth), _map_constructors(arg, f, tydepth))
        case TyLam(h, k, body):
            return TyLam(h, k, _map_constructors(body, f, tydepth + 1))
        case TyApp(term, c):
            return TyApp(_map_constructors(term, f, tydepth), f(c, tydepth))
        case Anno(term, c):
            return Anno(_map_constructors(term, f, tydepth), f(c, tydepth))
        case Fix(fl, n, motive, func):
            motive2 = None if motive is None else f(motive, tydepth)
            return Fix(fl, n, motive2, _map_constructors(func, f, tydepth))
        case _:
            return t


def open_ty(t: Term, repl: Constructor) -> Term:
    """Instantiate the outermost type binder of a TyLam body."""
    return _map_constructors(t, lambda c, d: _shift_open(c, d, repl), 0)


def close_ty(t: Term, name: str) -> Term:
    return _map_constructors(t, lambda c, d: close_c(c, name, d), 0)


def tylam(hint: str, kind: Kind, body: Term) -> TyLam:
    """Bind the free constructor variable `hint` in `body`."""
    return TyLam(hint, kind, close_ty(body, hint))


def subst_ty_in_term(g: Constructor, name: str, t: Term) -> Term:
    from .constructor import subst_constructor

    return _map_constructors(t, lambda c, d: subst_constructor(g, name, c), 0)


def _open_tm(t: Term, depth: int, repl: Term) -> Term:
    match t:
        case TmBound(i):
            return repl if i == depth else t
        case TmLam(h, anno, body):
            return TmLam(h, anno, _open_tm(body, depth + 1, repl))
        case TmApp(f, a):
            return TmApp(_open_tm(f, depth, repl), _open_tm(a, depth, repl))
        case TyLam(h, k, body):
            return TyLam(h, k, _open_tm(body, depth, repl))
        case TyApp(term, c):
            return TyApp(_open_tm(term, depth, repl), c)
        case Anno(term, c):
            return Anno(_open_tm(term, depth, repl), c)
        case Fix(fl, n, m, func):
            return Fix(fl, n, m, _open_tm(func, depth, repl))
        case _:
            return t


def open_tm(t: Term, repl: Term) -> Term:
    return _open_tm(t, 0, repl)


def close_tm(t: Term, name: str, depth: int = 0) -> Term:
    match t:
        case TmVar(n):
            return TmBound(depth) if n == name else t
        case TmLam(h, anno, body):
            return TmLam(h, anno, close_tm(body, name, depth + 1))
        case TmApp(f, a):
            return TmApp(close_tm(f, name, depth), close_tm(a, name, depth))
        case TyLam(h, k, body):
            return TyLam(h, k, close_tm(body, name, depth))
        case TyApp(term, c):
            return TyApp(close_tm(term, name, depth), c)
        case Anno(term, c):
            return Anno(close_tm(term, name, depth), c)
        case Fix(fl, n, m, func):
            return Fix(fl, n, m, close_tm(func, name, depth))
        case _:
            return t


def tmlam(hint: str, anno: Constructor | None, body: Term) -> TmLam:
    return TmLam(hint, anno, close_tm(body, hint))


def subst_term(g: Term, name: str, t: Term) -> Term:
    """[g/name]t for a free term variable."""
    match t:
        case TmVar(n):
            return g if n == name else t
        case TmLam(h, anno, body):
            return TmLam(h, anno, subst_term(g, name, body))
        case TmApp(f, a):
            return TmApp(subst_term(g, name, f), subst_term(g, name, a))
        case TyLam(h, k, body):
            return TyLam(h, k, subst_term(g, name, body))
        case TyApp(term, c):
            return TyApp(subst_term(g, name, term), c)
        case Anno(term, c):
            return Anno(subst_term(g, name, term), c)
        case Fix(fl, n, m, func):
            return Fix(fl, n, m, subst_term(g, name, func))
        case _:
            return t


def term_free_vars(t: Term) -> frozenset[str]:
    match t:
        case TmVar(n):
            return frozenset((n,))
        case TmLam(_, _, body) | TyLam(_, _, body):
            return term_free_vars(body)
        case TmApp(f, a):
            return term_free_vars(f) | term_free_vars(a)
        case TyApp(term, _) | Anno(term, _):
            return term_free_vars(term)
        case Fix(_, _, _, func):
            return term_free_vars(func)
        case _:
            return frozenset()


def term_alpha_eq(a: Term, b: Term) -> bool:
    from .constructor import alpha_eq

    match (a, b):
        case (TmConst(n1), TmConst(n2)):
            return n1 == n2
        case (TmVar(n1), TmVar(n2)):
            return n1 == n2
        case (TmBound(i1), TmBound(i2)):
            return i1 == i2
        case (TmLam(_, a1, b1), TmLam(_, a2, b2)):
            annos = (a1 is None and a2 is None) or (
                a1 is not None and a2 is not None and alpha_eq(a1, a2)
            )
            return annos and term_alpha_eq(b1, b2)
        case (TmApp(f1, x1), TmApp(f2, x2)):
            return term_alpha_eq(f1, f2) and term_alpha_eq(x1, x2)
        case (TyLam(_, k1, b1), TyLam(_, k2, b2)):
            return k1 == k2 and term_alpha_eq(b1, b2)
        case (TyApp(t1, c1), TyApp(t2, c2)):
            return term_alpha_eq(t1, t2) and alpha_eq(c1, c2)
        case (Anno(t1, c1), Anno(t2, c2)):
            return term_alpha_eq(t1, t2) and alpha_eq(c1, c2)
        case (Fix(f1, n1, m1, s1), Fix(f2, n2, m2, s2)):
            motives = (m1 is None and m2 is None) or (
                m1 is not None and m2 is not None and alpha_eq(m1, m2)
            )
            return f1 == f2 and n1 == n2 and motives and term_alpha_eq(s1, s2)
    return False


def erase(t: Term) -> Term:
    """Drop type abstractions, instantiations and annotations.

    Fix nodes stay (they are the recursion constants) but lose their motive.
    """
    match t:
        case TyLam(_, _, body):
            return erase(body)
        case TyApp(term, _):
            return erase(term)
        case Anno(term, _):
            return erase(term)
        case TmLam(h, _, body):
            return TmLam(h, None, erase(body))
        case TmApp(f, a):
            return TmApp(erase(f), erase(a))
        case Fix(fl, n, _, func):
            return Fix(fl, n, None, erase(func))
        case _:
            return t


# typing contexts -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TermBind:
    name: str
    type: Constructor  # normalized, kinds to * in its prefix


@dataclass(frozen=True, slots=True)
class TyBind:
    name: str
    kind: Kind  # polarity is always mixed: generalization binds at o


class TypingContext:
    __slots__ = ("entries",)

    def __init__(self, entries: tuple = ()):
        self.entries = entries

    def bind_term(self, name: str, ty: Constructor) -> "TypingContext":
        return TypingContext(self.entries + (TermBind(name, ty),))

    def bind_ty(self, name: str, kind: Kind) -> "TypingContext":
        return TypingContext(self.entries + (TyBind(name, kind),))

    def lookup_term(self, name: str) -> Constructor | None:
        for e in reversed(self.entries):
            if isinstance(e, TermBind) and e.name == name:
                return e.type
        return None

    def kind_context(self) -> KindContext:
        ctx = KindContext()
        for e in self.entries:
            if isinstance(e, TyBind):
                ctx = ctx.extend(e.name, MIXED, e.kind)
        return ctx

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, TypingContext) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)


def check_context(gamma: TypingContext) -> bool:
    """Well-formedness: each term binding kinds to * in its prefix."""
    from .kinding import kind_check

    prefix = TypingContext()
    for e in gamma:
        if isinstance(e, TyBind):
            prefix = prefix.bind_ty(e.name, e.kind)
            continue
        try:
            res = kind_check(prefix.kind_context(), e.type)
        except Exception:
            return False
        if res.kind != STAR:
            return False
        prefix = prefix.bind_term(e.name, e.type)
    return True

"""Pretty-printing of kinds, constructors and terms in the surface syntax.

Bound variables are renamed from their hints to printable names that avoid
the free names in scope, so `parse(show(x))` is alpha-equal to `x`.
"""

from __future__ import annotations

from .constructor import (
    App,
    ARROW,
    Bound,
    Const,
    Constructor,
    FORALL,
    INFTY,
    Lam,
    MU,
    NU,
    PROD,
    SUCC,
    SUM,
    UNIT,
    Var,
    free_vars,
    open_c,
    spine,
)
from .kinds import KArrow, Kind, Ord, Star
from .normalize import as_ordnf
from .polarity import PLUS
from .terms import (
    Anno,
    Fix,
    Term,
    TmApp,
    TmBound,
    TmConst,
    TmLam,
    TmVar,
    TyApp,
    TyLam,
    term_free_vars,
    open_tm,
    open_ty,
)


def show_kind(k: Kind, prec: int = 0) -> str:
    match k:
        case Star():
            return "*"
        case Ord():
            return "ord"
        case KArrow(pol, dom, cod):
            arrow = "->" if pol is PLUS else f"->{pol}"
            s = f"{show_kind(dom, 1)} {arrow} {show_kind(cod, 0)}"
            return f"({s})" if prec >= 1 else s
    raise TypeError(k)


def _pretty_name(hint: str, taken: set[str]) -> str:
    base = hint.split("^", 1)[0] or "x"
    if not base[0].isalpha() and base[0] != "_":
        base = "x"
    name = base
    n = 0
    while name in taken:
        n += 1
        name = f"{base}{n}"
    return name


class _Printer:
    def __init__(self, taken: set[str]):
        self.taken = set(taken)

    def constructor(self, c: Constructor, prec: int = 0) -> str:
        match c:
            case Const(name, _):
                return {UNIT: "1", INFTY: "oo"}.get(name, name)
            case Var(name):
                return name
            case Bound(i):
                return f"?{i}"
            case Lam(hint, kind, _, _):
                x = _pretty_name(hint, self.taken)
                self.taken.add(x)
                body = self.constructor(open_c(c.body, Var(x)), 0)
                s = f"\\{x}:{show_kind(kind)}. {body}"
                return f"({s})" if prec > 0 else s
            case App(_, _):
                return self._app(c, prec)
        raise TypeError(c)

    def _app(self, c: Constructor, prec: int) -> str:
        head, args = spine(c)
        if isinstance(head, Const):
            name = head.name
            if name == FORALL and len(args) == 1 and isinstance(args[0], Lam):
                lam = args[0]
                x = _pretty_name(lam.hint, self.taken)
                self.taken.add(x)
                body = self.constructor(open_c(lam.body, Var(x)), 0)
                s = f"all {x}:{show_kind(lam.kind)}. {body}"
                return f"({s})" if prec > 0 else s
            if name == ARROW and len(args) == 2:
                s = f"{self.constructor(args[0], 2)} -> {self.constructor(args[1], 1)}"
                return f"({s})" if prec > 1 else s
            if name == SUM and len(args) == 2:
                s = f"{self.constructor(args[0], 2)} + {self.constructor(args[1], 3)}"
                return f"({s})" if prec > 2 else s
            if name == PROD and len(args) == 2:
                s = f"{self.constructor(args[0], 3)} * {self.constructor(args[1], 4)}"
                return f"({s})" if prec > 3 else s
            if name in (MU, NU) and args:
                size = self.constructor(args[0], 0)
                rest = "".join(f" {self.constructor(a, 5)}" for a in args[1:])
                s = f"{name}[{size}]{rest}"
                return f"({s})" if prec > 4 and rest else s
            if name == SUCC and len(args) == 1:
                o = as_ordnf(c)
                if o is not None and not o.is_infty:
                    return f"{o.var}+{o.offset}" if prec <= 4 else f"({o.var}+{o.offset})"
        parts = [self.constructor(head, 5)] + [self.constructor(a, 5) for a in args]
        s = " ".join(parts)
        return f"({s})" if prec > 4 else s

    def term(self, t: Term, prec: int = 0) -> str:
        match t:
            case TmConst(name):
                return "<>" if name == "unit" else name
            case TmVar(name):
                return name
            case TmBound(i):
                return f"?{i}"
            case TmLam(hint, anno, _):
                x = _pretty_name(hint, self.taken)
                self.taken.add(x)
                body = self.term(open_tm(t.body, TmVar(x)), 0)
                at = f":{self.constructor(anno, 1)}" if anno is not None else ""
                s = f"\\{x}{at}. {body}"
                return f"({s})" if prec > 0 else s
            case TyLam(hint, kind, _):
                x = _pretty_name(hint, self.taken)
                self.taken.add(x)
                body = self.term(open_ty(t.body, Var(x)), 0)
                s = f"/\\{x}:{show_kind(kind)}. {body}"
                return f"({s})" if prec > 0 else s
            case TmApp(_, _) as app if _is_pair(app):
                l, r = app.fun.arg, app.arg
                return f"<{self.term(l, 0)}, {self.term(r, 0)}>"
            case TmApp(f, a):
                s = f"{self.term(f, 4)} {self.term(a, 5)}"
                return f"({s})" if prec > 4 else s
            case TyApp(inner, c):
                s = f"{self.term(inner, 4)} [{self.constructor(c, 0)}]"
                return f"({s})" if prec > 4 else s
            case Anno(inner, c):
                return f"({self.term(inner, 0)} : {self.constructor(c, 0)})"
            case Fix(flavor, n, motive, func):
                m = f"[{self.constructor(motive, 0)}] " if motive is not None else ""
                s = f"fix{flavor} {n} {m}{self.term(func, 5)}"
                return f"({s})" if prec > 4 else s
        raise TypeError(t)


def _is_pair(t: TmApp) -> bool:
    return isinstance(t.fun, TmApp) and t.fun.fun == TmConst("pair")


def show_constructor(c: Constructor) -> str:
    return _Printer(set(free_vars(c))).constructor(c)


def show_term(t: Term) -> str:
    taken = set(term_free_vars(t))
    # free constructor variables inside annotations can collide with binders
    return _Printer(taken).term(t)

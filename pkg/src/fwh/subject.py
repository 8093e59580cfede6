"""Annotation-preserving reduction, used to exercise subject reduction.

The core semantics works on erased terms; to re-check reducts at their
original types, this stepper reduces surface terms instead.  Type-level
instantiation contracts like a beta step, and a fix unfolding instantiates
the erased size quantifier at the closure ordinal (the reduct erases to the
plain unfolding, and every size-indexed annotation re-checks there by
subsumption).
"""

from __future__ import annotations

from .constructor import Const, INFTY
from .reduction import is_value
from .terms import (
    Anno,
    CASE,
    FST,
    Fix,
    IN,
    INL,
    INR,
    OUT,
    PAIR,
    SND,
    Term,
    TmApp,
    TmBound,
    TmConst,
    TmLam,
    TmVar,
    TyApp,
    TyLam,
    erase,
    open_tm,
    open_ty,
    tm_spine,
    close_tm,
)

_counter = [0]


def _fresh(hint="x"):
    _counter[0] += 1
    return TmVar(f"{hint}~{_counter[0]}")


def strip_annos(t: Term) -> Term:
    match t:
        case Anno(inner, _):
            return strip_annos(inner)
        case TmLam(h, a, b):
            return TmLam(h, a, strip_annos(b))
        case TmApp(f, a):
            return TmApp(strip_annos(f), strip_annos(a))
        case TyLam(h, k, b):
            return TyLam(h, k, strip_annos(b))
        case TyApp(inner, c):
            return TyApp(strip_annos(inner), c)
        case Fix(fl, n, m, func):
            return Fix(fl, n, m, strip_annos(func))
        case _:
            return t


def _strip_head(t: Term):
    """Peel type instantiations off a spine head."""
    while isinstance(t, TyApp):
        t = t.term
    return t


def _head_deco(t: Term):
    """The spine head and its type instantiations, outermost first."""
    deco = []
    while isinstance(t, TyApp):
        deco.append(t.arg)
        t = t.term
    deco.reverse()
    return t, deco


def _fix_unfold(head: Fix, deco: list, args: list[Term]) -> Term:
    """s (fix s) with the size quantifier at the closure ordinal and the
    remaining instantiations of the original call replayed."""
    func = head.func
    if isinstance(func, TyLam):
        inst = TyApp(func, Const(INFTY))
        self_ref: Term = TyApp(head, Const(INFTY))
    else:
        inst = func
        self_ref = head
    out = TmApp(inst, self_ref)
    for g in deco[1:]:  # deco[0] is the size instantiation, consumed above
        out = TyApp(out, g)
    for a in args:
        out = TmApp(out, a)
    return out


def _redex(t: Term) -> Term | None:
    match t:
        case TmApp(TmLam(_, _, body), s):
            return open_tm(body, s)
        case TyApp(TyLam(_, _, body), g):
            return open_ty(body, g)
        case TmApp(TmConst(name), p) if name in (FST, SND):
            head, args = tm_spine(p)
            if head == TmConst(PAIR) and len(args) == 2:
                return args[0] if name == FST else args[1]
            return None
        case TmApp(TmConst(name), s) if name == CASE:
            if isinstance(s, TmApp) and s.fun == TmConst(INL):
                return TmLam("x", None, TmLam("y", None, TmApp(TmBound(1), s.arg)))
            if isinstance(s, TmApp) and s.fun == TmConst(INR):
                return TmLam("x", None, TmLam("y", None, TmApp(TmBound(0), s.arg)))
            return None
        case TmApp(TmConst(name), r) if name == OUT:
            if isinstance(r, TmApp) and r.fun == TmConst(IN):
                return r.arg
            head, args = tm_spine(r)
            stripped, deco = _head_deco(head)
            if isinstance(stripped, Fix) and stripped.flavor == "nu" and len(args) == stripped.n:
                return TmApp(TmConst(OUT), _fix_unfold(stripped, deco, args))
            return None
        case TmApp(_, last):
            head, args = tm_spine(t)
            stripped, deco = _head_deco(head)
            if (
                isinstance(stripped, Fix)
                and stripped.flavor == "mu"
                and len(args) == stripped.n + 1
                and is_value(erase(last))
            ):
                return _fix_unfold(stripped, deco, args)
    return None


def surface_whnf(t: Term, budget: int = 100000) -> Term:
    """Drive only the head of a surface term (used by the checker to expose
    a synthesizable or matchable head without evaluating components)."""
    while budget > 0:
        r = _redex(t)
        if r is not None:
            t = r
            budget -= 1
            continue
        if isinstance(t, TyApp):
            inner = surface_whnf(t.term, budget)
            if inner is not t.term:
                t = TyApp(inner, t.arg)
                continue
            return t
        if isinstance(t, Anno):
            t = t.term
            continue
        if isinstance(t, TmApp):
            f2 = surface_whnf(t.fun, budget)
            if f2 is not t.fun:
                t = TmApp(f2, t.arg)
                continue
            need_arg = isinstance(t.fun, TmConst) and t.fun.name in (FST, SND, CASE, OUT)
            if not need_arg:
                head, args = tm_spine(t)
                stripped = _strip_head(head)
                need_arg = (
                    isinstance(stripped, Fix)
                    and stripped.flavor == "mu"
                    and len(args) == stripped.n + 1
                )
            if need_arg:
                a2 = surface_whnf(t.arg, budget)
                if a2 is not t.arg:
                    t = TmApp(t.fun, a2)
                    continue
            return t
        return t
    return t


def surface_step(t: Term) -> Term | None:
    """One leftmost-outermost surface step (includes type-level beta)."""
    r = _redex(t)
    if r is not None:
        return r
    match t:
        case TmLam(h, a, body):
            x = _fresh(h)
            r = surface_step(open_tm(body, x))
            if r is not None:
                return TmLam(h, a, close_tm(r, x.name))
        case TyLam(h, k, body):
            # open the type binder: an inner contraction may substitute a
            # constructor into deeper scopes, which must not capture
            from .constructor import Var

            _counter[0] += 1
            nm = f"{h}~{_counter[0]}"
            r = surface_step(open_ty(body, Var(nm)))
            if r is not None:
                from .terms import close_ty

                return TyLam(h, k, close_ty(r, nm))
        case TmApp(f, a):
            r = surface_step(f)
            if r is not None:
                return TmApp(r, a)
            r = surface_step(a)
            if r is not None:
                return TmApp(f, r)
        case TyApp(inner, c):
            r = surface_step(inner)
            if r is not None:
                return TyApp(r, c)
        case Anno(inner, c):
            r = surface_step(inner)
            if r is not None:
                return Anno(r, c)
        case Fix(fl, n, m, func):
            r = surface_step(func)
            if r is not None:
                return Fix(fl, n, m, r)
    return None

"""Small-step operational semantics, fuel-bounded normalization and safe
weak-head reduction.

Reduction operates on erased terms (no type abstractions, instantiations or
annotations; fix nodes remain as the recursion constants).  A recursive
function unfolds only when its recursive argument is a value, and a
corecursive one only under an observation frame.  Junk eliminations (like a
projection from a function) are reported as stuck results, never crashes:
the checker rules them out, but unchecked evaluation must be total.

`step` contracts the leftmost-outermost redex and is the reference
semantics; `normalize_term` performs full normalization with the same
strategy but drives the head first, so it stays linear-ish on long runs.
`safe_step` is the deterministic weak-head relation used as a test
instrument; its strong-normalization side conditions are approximated by
fuel-bounded normalization of the discarded subterm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
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
    open_tm,
    tm_spine,
)

SN_FUEL_DEFAULT = 2000


def is_value(t: Term) -> bool:
    """The value grammar; shallow (components of values are unconstrained)."""
    match t:
        case TmLam() | TmConst() | Fix():
            return True
        case TmApp():
            head, args = tm_spine(t)
            match head:
                case TmConst(name):
                    if name == PAIR:
                        return len(args) <= 2
                    if name in (INL, INR, IN):
                        return len(args) <= 1
                    return False  # applied eliminators are frames, not values
                case Fix(_, n, _, _):
                    return len(args) <= n
            return False
    return False


def _case_branches(r: Term) -> Term:
    # case (inl r) -> \x.\y. x r with x, y fresh (indices cannot capture)
    return TmLam("x", None, TmLam("y", None, TmApp(TmBound(1), r)))


def _case_branches_r(r: Term) -> Term:
    return TmLam("x", None, TmLam("y", None, TmApp(TmBound(0), r)))


def try_redex(t: Term) -> Term | None:
    """The contractum when `t` is itself a redex, else None."""
    match t:
        case TmApp(TmLam(_, _, body), s):
            return open_tm(body, s)
        case TmApp(TmConst(name), p) if name in (FST, SND):
            head, args = tm_spine(p)
            if head == TmConst(PAIR) and len(args) == 2:
                return args[0] if name == FST else args[1]
            return None
        case TmApp(TmConst(name), s) if name == CASE:
            if isinstance(s, TmApp) and s.fun == TmConst(INL):
                return _case_branches(s.arg)
            if isinstance(s, TmApp) and s.fun == TmConst(INR):
                return _case_branches_r(s.arg)
            return None
        case TmApp(TmConst(name), r) if name == OUT:
            if isinstance(r, TmApp) and r.fun == TmConst(IN):
                return r.arg
            head, args = tm_spine(r)
            if isinstance(head, Fix) and head.flavor == "nu" and len(args) == head.n:
                unrolled = TmApp(head.func, head)
                for a in args:
                    unrolled = TmApp(unrolled, a)
                return TmApp(TmConst(OUT), unrolled)
            return None
        case TmApp(_, last):
            head, args = tm_spine(t)
            if (
                isinstance(head, Fix)
                and head.flavor == "mu"
                and len(args) == head.n + 1
                and is_value(last)
            ):
                assert not _is_neutral_name(last)  # never fire on a neutral argument
                unrolled = TmApp(head.func, head)
                for a in args:
                    unrolled = TmApp(unrolled, a)
                return unrolled
    return None


def _is_neutral_name(t: Term) -> bool:
    return neutral_var(t) is not None


def neutral_var(t: Term) -> str | None:
    """The blocking variable when `t` is a neutral (a variable under frames)."""
    match t:
        case TmVar(name):
            return name
        case TmBound(i):
            return f"?{i}"
        case TmApp(TmConst(name), inner) if name in (FST, SND, CASE, OUT):
            return neutral_var(inner)
        case TmApp(fun, last):
            head, args = tm_spine(t)
            if isinstance(head, Fix) and head.flavor == "mu" and len(args) == head.n + 1:
                return neutral_var(last)
            return neutral_var(fun)
    return None


@dataclass(frozen=True)
class StepResult:
    kind: str  # "stepped" | "value" | "neutral" | "stuck"
    term: Term | None = None
    var: str | None = None
    reason: str = ""


_counter = [0]


def _fresh_tmvar(hint="x"):
    _counter[0] += 1
    return TmVar(f"{hint}^{_counter[0]}")


def step(t: Term) -> StepResult:
    """One leftmost-outermost reduction step, or a classification."""
    r = _find_step(t)
    if r is not None:
        return StepResult("stepped", term=r)
    if is_value(t):
        return StepResult("value", term=t)
    v = neutral_var(t)
    if v is not None:
        return StepResult("neutral", var=v)
    return StepResult("stuck", term=t, reason=_stuck_reason(t))


def _stuck_reason(t: Term) -> str:
    from .printer import show_term

    s = show_term(t)
    return f"no rule applies to {s[:120]}"


def _find_step(t: Term) -> Term | None:
    r = try_redex(t)
    if r is not None:
        return r
    match t:
        case TmLam(hint, anno, body):
            x = _fresh_tmvar(hint)
            r = _find_step(open_tm(body, x))
            if r is not None:
                from .terms import close_tm

                return TmLam(hint, anno, close_tm(r, x.name))
            return None
        case TmApp(f, a):
            r = _find_step(f)
            if r is not None:
                return TmApp(r, a)
            r = _find_step(a)
            if r is not None:
                return TmApp(f, r)
            return None
        case Fix(fl, n, m, func):
            r = _find_step(func)
            if r is not None:
                return Fix(fl, n, m, r)
            return None
    return None


def all_steps(t: Term) -> list[Term]:
    """Every one-step reduct of `t` (closure under all term constructs)."""
    out = []
    r = try_redex(t)
    if r is not None:
        out.append(r)
    match t:
        case TmLam(hint, anno, body):
            x = _fresh_tmvar(hint)
            from .terms import close_tm

            for r in all_steps(open_tm(body, x)):
                out.append(TmLam(hint, anno, close_tm(r, x.name)))
        case TmApp(f, a):
            out.extend(TmApp(r, a) for r in all_steps(f))
            out.extend(TmApp(f, r) for r in all_steps(a))
        case Fix(fl, n, m, func):
            out.extend(Fix(fl, n, m, r) for r in all_steps(func))
    return out


class _Fuel:
    __slots__ = ("left", "used")

    def __init__(self, amount):
        self.left = amount
        self.used = 0

    def tick(self):
        if self.left <= 0:
            raise _OutOfFuel()
        self.left -= 1
        self.used += 1


class _OutOfFuel(Exception):
    pass


@dataclass(frozen=True)
class NormalizeResult:
    status: str  # "normal" | "out_of_fuel"
    term: Term
    steps: int


def _whnf(t: Term, fuel: _Fuel) -> Term:
    """Drive the head until no redex fires at or above the spine."""
    while True:
        r = try_redex(t)
        if r is not None:
            fuel.tick()
            t = r
            continue
        if isinstance(t, TmApp):
            f2 = _whnf(t.fun, fuel)
            if f2 is not t.fun:
                t = TmApp(f2, t.arg)
                continue
            # expose guard-relevant argument shapes
            need_arg = False
            if isinstance(t.fun, TmConst) and t.fun.name in (FST, SND, CASE, OUT):
                need_arg = True
            else:
                head, args = tm_spine(t)
                if isinstance(head, Fix) and head.flavor == "mu" and len(args) == head.n + 1:
                    need_arg = True
            if need_arg:
                a2 = _whnf(t.arg, fuel)
                if a2 is not t.arg:
                    t = TmApp(t.fun, a2)
                    continue
        return t


def _nf(t: Term, fuel: _Fuel) -> Term:
    t = _whnf(t, fuel)
    match t:
        case TmLam(hint, anno, body):
            x = _fresh_tmvar(hint)
            from .terms import close_tm

            inner = _nf(open_tm(body, x), fuel)
            return TmLam(hint, anno, close_tm(inner, x.name))
        case TmApp(f, a):
            f_n = _nf(f, fuel)
            a_n = _nf(a, fuel)
            t2 = TmApp(f_n, a_n)
            if try_redex(t2) is not None:
                # normalizing the components exposed a contraction
                return _nf(t2, fuel)
            return t2
        case Fix(fl, n, m, func):
            return Fix(fl, n, m, _nf(func, fuel))
        case _:
            return t


def normalize_term(t: Term, fuel: int) -> NormalizeResult:
    """Full normalization counting steps; out-of-fuel returns the partial term."""
    assert fuel > 0
    f = _Fuel(fuel)
    try:
        nf = _nf(t, f)
        return NormalizeResult("normal", nf, f.used)
    except _OutOfFuel:
        return NormalizeResult("out_of_fuel", t, f.used)


def strongly_normalizing(t: Term, fuel: int = SN_FUEL_DEFAULT) -> bool:
    """Fuel-bounded stand-in for membership in the normalizing terms."""
    return normalize_term(t, fuel).status == "normal"


def safe_step(t: Term, sn_fuel: int = SN_FUEL_DEFAULT) -> Term | None:
    """One safe weak-head step, or None when `t` is safe-normal."""
    r = _safe_redex(t, sn_fuel)
    if r is not None:
        return r
    # closure under evaluation frames
    match t:
        case TmApp(TmConst(name), inner) if name in (FST, SND, CASE, OUT):
            r = safe_step(inner, sn_fuel)
            if r is not None:
                return TmApp(t.fun, r)
            return None
        case TmApp(f, a):
            head, args = tm_spine(t)
            if isinstance(head, Fix) and head.flavor == "mu" and len(args) == head.n + 1:
                r = safe_step(a, sn_fuel)
                if r is not None:
                    return TmApp(f, r)
                return None
            r = safe_step(f, sn_fuel)
            if r is not None:
                return TmApp(r, a)
            return None
    return None


def _safe_redex(t: Term, sn_fuel: int) -> Term | None:
    match t:
        case TmApp(TmLam(_, _, body), s):
            if strongly_normalizing(s, sn_fuel):
                return open_tm(body, s)
            return None
        case TmApp(TmConst(name), p) if name in (FST, SND):
            head, args = tm_spine(p)
            if head == TmConst(PAIR) and len(args) == 2:
                discarded = args[1] if name == FST else args[0]
                if strongly_normalizing(discarded, sn_fuel):
                    return args[0] if name == FST else args[1]
            return None
        case TmApp(TmConst(name), s) if name == CASE:
            if isinstance(s, TmApp) and s.fun == TmConst(INL):
                return _case_branches(s.arg)
            if isinstance(s, TmApp) and s.fun == TmConst(INR):
                return _case_branches_r(s.arg)
            return None
        case TmApp(TmConst(name), r) if name == OUT:
            if isinstance(r, TmApp) and r.fun == TmConst(IN):
                return r.arg
            head, args = tm_spine(r)
            if isinstance(head, Fix) and head.flavor == "nu" and len(args) == head.n:
                unrolled = TmApp(head.func, head)
                for a in args:
                    unrolled = TmApp(unrolled, a)
                return TmApp(TmConst(OUT), unrolled)
            return None
        case TmApp(_, last):
            head, args = tm_spine(t)
            if (
                isinstance(head, Fix)
                and head.flavor == "mu"
                and len(args) == head.n + 1
                and isinstance(last, TmApp)
                and last.fun == TmConst(IN)
            ):
                unrolled = TmApp(head.func, head)
                for a in args:
                    unrolled = TmApp(unrolled, a)
                return unrolled
    return None


def all_safe_redexes(t: Term, sn_fuel: int = SN_FUEL_DEFAULT) -> list[Term]:
    """Every position where a safe step fires (for the determinism check)."""
    out = []
    r = _safe_redex(t, sn_fuel)
    if r is not None:
        out.append(r)
    match t:
        case TmApp(TmConst(name), inner) if name in (FST, SND, CASE, OUT):
            out.extend(TmApp(t.fun, r) for r in all_safe_redexes(inner, sn_fuel))
        case TmApp(f, a):
            head, args = tm_spine(t)
            if isinstance(head, Fix) and head.flavor == "mu" and len(args) == head.n + 1:
                out.extend(TmApp(f, r) for r in all_safe_redexes(a, sn_fuel))
            else:
                out.extend(TmApp(r, a) for r in all_safe_redexes(f, sn_fuel))
    return out

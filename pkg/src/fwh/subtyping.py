"""Higher-order subtyping with variance dispatch on normal forms.

The declarative relation has transitivity and antisymmetry, so the
algorithm works on beta-normal eta-long forms: compare under binders at
arrow kinds, compare ordinals arithmetically, and at base kinds require
equal heads and recurse on arguments according to the head's declared
polarities.  Every success is reported as a derivation built from the
single-step rules (congruence steps chained by leq-trans)."""

from __future__ import annotations

from .constructor import (
    App,
    Const,
    Constructor,
    FreshNames,
    KindContext,
    Lam,
    Var,
    alpha_eq,
    capp,
    const_kind,
    invert_context,
    open_c,
    spine,
)
from .derivation import Derivation
from .errors import SubtypeError
from .kinds import KArrow, Kind, ORD, spine_kinds
from .normalize import OrdNF, as_ordnf, check_and_normalize, ordnf_constructor
from .polarity import MINUS, PLUS


def ord_leq(a: OrdNF, b: OrdNF) -> bool:
    """Reflexive-transitive closure of a <= s a and a <= oo on normal forms."""
    if b.is_infty:
        return True
    if a.is_infty:
        return False
    return a.var == b.var and a.offset <= b.offset


def _ord_derivation(ctx, a: OrdNF, b: OrdNF) -> Derivation:
    if a == b:
        return Derivation("leq-refl", ("sub", ctx, ordnf_constructor(a), ordnf_constructor(b), ORD))
    if b.is_infty:
        return Derivation("leq-oo", ("sub", ctx, ordnf_constructor(a), ordnf_constructor(b), ORD))
    # same variable, growing offset: chain a <= s a steps
    cur = a
    deriv = None
    while cur.offset < b.offset:
        nxt = OrdNF(cur.var, cur.offset + 1)
        step = Derivation(
            "leq-s-r", ("sub", ctx, ordnf_constructor(cur), ordnf_constructor(nxt), ORD)
        )
        if deriv is None:
            deriv = step
        else:
            deriv = Derivation(
                "leq-trans",
                ("sub", ctx, ordnf_constructor(a), ordnf_constructor(nxt), ORD),
                (deriv, step),
            )
        cur = nxt
    return deriv


def _wrap_trailing(ctx, deriv: Derivation, trailing, kind_after: Kind) -> Derivation:
    """Extend F <= F' to F a .. <= F' a .. by leq-app congruence steps."""
    _, _, lhs, rhs, k = deriv.conclusion
    for arg in trailing:
        assert isinstance(k, KArrow)
        lhs, rhs, k = App(lhs, arg), App(rhs, arg), k.cod
        deriv = Derivation("leq-app", ("sub", ctx, lhs, rhs, k), (deriv,))
    return deriv


def subtype(ctx: KindContext, f: Constructor, g: Constructor, kind: Kind) -> Derivation:
    """Derive f <= g : kind for normalized elaborated inputs, or raise."""
    from .constructor import free_vars

    names = FreshNames.avoiding(ctx.names() | free_vars(f) | free_vars(g))
    return _sub(ctx, f, g, kind, names)


def _sub(ctx, f, g, kind, names) -> Derivation:
    if isinstance(kind, KArrow):
        if not (isinstance(f, Lam) and isinstance(g, Lam)):
            raise SubtypeError(f"expected abstractions at kind {kind}", rule="leq-lam")
        x = names.fresh(f.hint)
        ctx2 = ctx.extend(x, kind.pol, kind.dom)
        body = _sub(ctx2, open_c(f.body, Var(x)), open_c(g.body, Var(x)), kind.cod, names)
        return Derivation("leq-lam", ("sub", ctx, f, g, kind), (body,))

    if kind == ORD:
        a, b = as_ordnf(f), as_ordnf(g)
        if a is not None and b is not None:
            if not ord_leq(a, b):
                raise SubtypeError(f"ordinal {a} is not below {b}", rule="leq-s-r")
            return _ord_derivation(ctx, a, b)
        if alpha_eq(f, g):
            return Derivation("leq-refl", ("sub", ctx, f, g, kind))
        raise SubtypeError("incomparable ordinal expressions", rule="leq-s-r")

    # base kind *: neutral spines
    hf, af = spine(f)
    hg, ag = spine(g)
    if alpha_eq(f, g):
        return Derivation("leq-refl", ("sub", ctx, f, g, kind))
    if not alpha_eq(hf, hg) or len(af) != len(ag):
        raise SubtypeError(
            f"head clash: no subtyping between distinct heads", rule="leq-app"
        )
    if isinstance(hf, Const):
        head_kind = const_kind(hf)
    else:
        entry = ctx.lookup(hf.name)
        if entry is None:
            raise SubtypeError(f"unbound head variable {hf.name}", rule="leq-app")
        head_kind = entry.kind
    slots, _ = spine_kinds(head_kind)

    steps: list[Derivation] = []
    lhs_args = list(af)
    for i, (ai, bi) in enumerate(zip(af, ag)):
        if alpha_eq(ai, bi):
            continue
        pol, dom = slots[i]
        prefix = capp(hf, *(ag[:i]))
        if pol is PLUS:
            inner = _sub(ctx, ai, bi, dom, names)
            rule = "leq-app+"
        elif pol is MINUS:
            inner = _sub(invert_context(MINUS, ctx), bi, ai, dom, names)
            rule = "leq-app-"
        else:
            raise SubtypeError(
                "mixed-variance argument position requires equal arguments",
                rule="leq-app",
            )
        k_here = head_kind
        for _ in range(i):
            k_here = k_here.cod
        step = Derivation(
            rule,
            ("sub", ctx, App(prefix, ai), App(prefix, bi), k_here.cod),
            (inner,),
        )
        step = _wrap_trailing(ctx, step, af[i + 1 :], kind)
        steps.append(step)
        lhs_args[i] = bi

    if not steps:
        # arguments pairwise alpha-equal but whole not: only hints differed
        return Derivation("leq-refl", ("sub", ctx, f, g, kind))
    deriv = steps[0]
    for step in steps[1:]:
        _, _, lhs, _, _ = deriv.conclusion
        _, _, _, rhs, _ = step.conclusion
        deriv = Derivation("leq-trans", ("sub", ctx, lhs, rhs, kind), (deriv, step))
    return deriv


def is_subtype(ctx: KindContext, f: Constructor, g: Constructor, kind: Kind) -> bool:
    try:
        subtype(ctx, f, g, kind)
        return True
    except SubtypeError:
        return False


def subtype_source(ctx: KindContext, f: Constructor, g: Constructor) -> Derivation:
    """Kind-check, normalize and compare raw constructors."""
    kf, nf = check_and_normalize(ctx, f)
    kg, ng = check_and_normalize(ctx, g)
    if kf != kg:
        raise SubtypeError(f"kinds differ: {kf} vs {kg}")
    return subtype(ctx, nf, ng, kf)


def validate_subtyping(d: Derivation) -> bool:
    tag, ctx, f, g, kind = d.conclusion
    if tag != "sub":
        return False
    if not all(validate_subtyping(p) for p in d.premises):
        return False
    match d.rule:
        case "leq-refl":
            return alpha_eq(f, g) or (as_ordnf(f) == as_ordnf(g) != None)
        case "leq-oo":
            o = as_ordnf(g)
            return o is not None and o.is_infty
        case "leq-s-r":
            a, b = as_ordnf(f), as_ordnf(g)
            return a is not None and b == OrdNF(a.var, a.offset + 1)
        case "leq-lam":
            (p,) = d.premises
            _, ctx2, _, _, k2 = p.conclusion
            return (
                isinstance(kind, KArrow)
                and k2 == kind.cod
                and len(ctx2.entries) == len(ctx.entries) + 1
            )
        case "leq-trans":
            p1, p2 = d.premises
            _, _, a, b1, _ = p1.conclusion
            _, _, b2, c, _ = p2.conclusion
            return alpha_eq(f, a) and alpha_eq(b1, b2) and alpha_eq(c, g)
        case "leq-app":
            (p,) = d.premises
            _, _, pf, pg, pk = p.conclusion
            return (
                isinstance(f, App)
                and isinstance(g, App)
                and alpha_eq(f.arg, g.arg)
                and alpha_eq(f.fun, pf)
                and alpha_eq(g.fun, pg)
                and isinstance(pk, KArrow)
            )
        case "leq-app+" | "leq-app-":
            (p,) = d.premises
            if not (isinstance(f, App) and isinstance(g, App) and alpha_eq(f.fun, g.fun)):
                return False
            _, _, pf, pg, _ = p.conclusion
            if d.rule == "leq-app+":
                return alpha_eq(pf, f.arg) and alpha_eq(pg, g.arg)
            return alpha_eq(pf, g.arg) and alpha_eq(pg, f.arg)
    return False

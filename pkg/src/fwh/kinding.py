"""Kinding of constructors with polarity inference.

The declarative abstraction rule picks an arbitrary polarity for the bound
variable, so kinds are inferred in two phases:

1. `kind_infer` walks the constructor computing, for every free or opened
   variable, the meet of the polarity paths of its occurrences.  Each
   abstraction is elaborated with the most precise legal polarity (unused
   variables default to +).
2. `kind_derive` replays the elaborated constructor against the rules,
   applying inverse context transformations at applications, to produce a
   derivation and the context-legality errors.

A constructor of inferred kind k fits an expected kind k' whenever
`kind_usable_as(k, k')`: weakening an abstraction's polarity is derivable,
and for variables the equational theory supplies the eta-expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import (
    App,
    Bound,
    Const,
    Constructor,
    FORALL,
    FreshNames,
    KindContext,
    Lam,
    MU,
    NU,
    Var,
    const_kind,
    invert_context,
    open_c,
    spine,
)
from .derivation import Derivation
from .errors import KindMismatch, NotAnArrow, PolarityViolation, UnboundVariable
from .kinds import KArrow, Kind, is_pure, karrow, kind_usable_as
from .polarity import (
    PLUS,
    Polarity,
    compose_polarity,
    polarity_leq,
    polarity_meet,
)

Usage = dict[str, Polarity]


@dataclass(frozen=True)
class KindingResult:
    kind: Kind
    constructor: Constructor  # elaborated: binder polarities and kind instances filled
    derivation: Derivation


def _merge(u: Usage, v: Usage, at: Polarity = PLUS) -> Usage:
    out = dict(u)
    for name, q in v.items():
        out[name] = polarity_meet(out.get(name), compose_polarity(at, q))
    return out


def _elaborate_fix_head(env, names, head: Const, args):
    """Fill in the kind instance of an under-annotated mu/nu/forall head."""
    if head.name in (MU, NU):
        if len(args) < 2:
            raise KindMismatch(f"{head.name} needs a size and a functional")
        k_fun, _, _ = _infer(env, names, args[1])
        if not isinstance(k_fun, KArrow):
            raise NotAnArrow(f"functional of {head.name} has kind {k_fun}")
        if k_fun.dom != k_fun.cod:
            raise KindMismatch(
                f"functional of {head.name} must map a kind to itself, got {k_fun}"
            )
        if not is_pure(k_fun.dom):
            raise KindMismatch(f"{head.name} requires a pure kind, got {k_fun.dom}")
        return Const(head.name, k_fun.dom)
    # forall: recover the instance kind from the body abstraction
    if not args:
        raise KindMismatch("quantifier needs a body")
    body = args[0]
    if isinstance(body, Lam):
        return Const(FORALL, body.kind)
    k_body, _, _ = _infer(env, names, body)
    if not isinstance(k_body, KArrow):
        raise NotAnArrow(f"quantifier body has kind {k_body}")
    return Const(FORALL, k_body.dom)


def _infer(env: dict[str, Kind], names: FreshNames, c: Constructor):
    """Returns (kind, usage, elaborated constructor)."""
    match c:
        case Const(name, kind_arg):
            if name in (MU, NU, FORALL) and kind_arg is None:
                raise KindMismatch(f"bare {name} cannot be kinded without arguments")
            return const_kind(c), {}, c
        case Var(name):
            if name not in env:
                raise UnboundVariable(f"unbound constructor variable {name}")
            return env[name], {name: PLUS}, c
        case Bound(i):
            raise UnboundVariable(f"dangling bound variable {i}")
        case Lam(hint, kind, _, _):
            x = names.fresh(hint)
            body = open_c(c.body, Var(x))
            env2 = dict(env)
            env2[x] = kind
            k_body, usage, body_e = _infer(env2, names, body)
            pol = usage.pop(x, None) or PLUS
            from .constructor import close_c

            return (
                karrow(pol, kind, k_body),
                usage,
                Lam(hint, kind, close_c(body_e, x), pol),
            )
        case App(_, _):
            head, args = spine(c)
            if isinstance(head, Const) and head.kind_arg is None and head.name in (
                MU,
                NU,
                FORALL,
            ):
                head = _elaborate_fix_head(env, names, head, args)
            k_head, usage, head_e = _infer(env, names, head)
            out = head_e
            for a in args:
                if not isinstance(k_head, KArrow):
                    raise NotAnArrow(f"application of non-arrow kind {k_head}")
                k_arg, u_arg, a_e = _infer(env, names, a)
                if not kind_usable_as(k_arg, k_head.dom):
                    raise KindMismatch(
                        f"argument kind {k_arg} does not fit {k_head.dom}"
                    )
                usage = _merge(usage, u_arg, at=k_head.pol)
                out = App(out, a_e)
                k_head = k_head.cod
            return k_head, usage, out
    raise TypeError(c)


def kind_infer(ctx: KindContext, c: Constructor):
    """Kind and per-variable usage of `c` in `ctx`, ignoring ctx polarities."""
    from .constructor import free_vars

    env = {e.name: e.kind for e in ctx}
    return _infer(env, FreshNames.avoiding(set(env) | free_vars(c)), c)


def kind_derive(ctx: KindContext, c: Constructor, names: FreshNames) -> tuple[Kind, Derivation]:
    """Replay the elaborated constructor against the kinding rules."""
    match c:
        case Const():
            return const_kind(c), Derivation("kind-c", ("kind", ctx, c, const_kind(c)))
        case Var(name):
            entry = ctx.lookup(name)
            if entry is None:
                raise PolarityViolation(
                    f"variable {name} is not usable here: dropped by a mixed-variance "
                    f"argument position or unbound"
                )
            if not polarity_leq(entry.pol, PLUS):
                raise PolarityViolation(
                    f"variable {name} bound at polarity {entry.pol} used covariantly"
                )
            return entry.kind, Derivation("kind-var", ("kind", ctx, c, entry.kind))
        case Lam(hint, kind, _, pol):
            assert pol is not None, "kind_derive needs an elaborated constructor"
            x = names.fresh(hint)
            body = open_c(c.body, Var(x))
            k_body, d_body = kind_derive(ctx.extend(x, pol, kind), body, names)
            k = karrow(pol, kind, k_body)
            return k, Derivation("kind-abs", ("kind", ctx, c, k), (d_body,))
        case App(f, a):
            k_f, d_f = kind_derive(ctx, f, names)
            if not isinstance(k_f, KArrow):
                raise NotAnArrow(f"application of non-arrow kind {k_f}")
            k_a, d_a = kind_derive(invert_context(k_f.pol, ctx), a, names)
            if not kind_usable_as(k_a, k_f.dom):
                raise KindMismatch(f"argument kind {k_a} does not fit {k_f.dom}")
            return k_f.cod, Derivation("kind-app", ("kind", ctx, c, k_f.cod), (d_f, d_a))
    raise TypeError(c)


def kind_check(ctx: KindContext, c: Constructor) -> KindingResult:
    """Infer the kind of `c` under `ctx`, with elaboration and derivation.

    Raises UnboundVariable, PolarityViolation, KindMismatch or NotAnArrow.
    """
    kind, usage, elaborated = kind_infer(ctx, c)
    for name, used_at in usage.items():
        entry = ctx.lookup(name)
        if entry is None:
            raise UnboundVariable(f"unbound constructor variable {name}")
        if not polarity_leq(entry.pol, used_at):
            raise PolarityViolation(
                f"variable {name} bound at polarity {entry.pol} occurs at {used_at}"
            )
    from .constructor import free_vars

    names = FreshNames.avoiding(ctx.names() | free_vars(elaborated))
    _, deriv = kind_derive(ctx, elaborated, names)
    return KindingResult(kind, elaborated, deriv)


def validate_kinding(d: Derivation) -> bool:
    """Node-wise replay: each node instantiates its rule schema."""
    tag, ctx, c, kind = d.conclusion
    if tag != "kind":
        return False
    ok = all(validate_kinding(p) for p in d.premises)
    if not ok:
        return False
    match d.rule:
        case "kind-c":
            return isinstance(c, Const) and const_kind(c) == kind
        case "kind-var":
            entry = ctx.lookup(c.name)
            return (
                isinstance(c, Var)
                and entry is not None
                and polarity_leq(entry.pol, PLUS)
                and entry.kind == kind
            )
        case "kind-abs":
            (p_body,) = d.premises
            _, ctx2, _, k_body = p_body.conclusion
            return (
                isinstance(c, Lam)
                and isinstance(kind, KArrow)
                and kind.dom == c.kind
                and kind.pol == c.pol
                and kind.cod == k_body
                and len(ctx2.entries) == len(ctx.entries) + 1
            )
        case "kind-app":
            d_f, d_a = d.premises
            _, _, _, k_f = d_f.conclusion
            _, ctx_a, _, k_a = d_a.conclusion
            return (
                isinstance(c, App)
                and isinstance(k_f, KArrow)
                and kind_usable_as(k_a, k_f.dom)
                and k_f.cod == kind
                and ctx_a == invert_context(k_f.pol, ctx)
            )
    return False

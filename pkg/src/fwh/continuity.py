"""Semi-continuity derivations and the admissibility gate on recursion types.

The judgement tracks one distinguished ordinal variable `ivar`, a flag
(upper or lower semi-continuity) and a context Pi of strictly positive
variables of pure kind.  The rules are not syntax directed; the implemented
strategy is fixed for determinism:

  1. normalize the constructor;
  2. try the structural rule matching the head (sum, prod, arr, forall, mu,
     nu, var, abs, or app peeling for longer spines);
  3. on failure try the fallbacks in order cont-in, cont-co, cont-contra.

cont-in, cont-co and cont-contra re-kind the constructor in a context
without Pi (and with the polarity of `ivar` dropped, forced covariant, or
forced contravariant, respectively), so they only apply when no strictly
positive variable occurs.  The argument premise of cont-app kinds the
argument in a context without `ivar` but with the Pi variables available
covariantly: the argument may mention strictly positive variables but not
the distinguished ordinal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import (
    App,
    ARROW,
    Const,
    Constructor,
    FORALL,
    FreshNames,
    INFTY,
    KindContext,
    Lam,
    MU,
    NU,
    SUCC,
    SUM,
    PROD,
    Var,
    free_vars,
    invert_context,
    open_c,
    spine,
)
from .derivation import Derivation
from .errors import AdmissibilityError, ContinuityError, KindError
from .kinds import KArrow, Kind, ORD, STAR, karrow, kind_usable_as
from .kinding import kind_check, kind_infer
from .normalize import OrdNF, as_ordnf, check_and_normalize, normalize
from .polarity import MINUS, MIXED, PLUS, polarity_leq

UPPER = "upper"  # limsup below the limit value
LOWER = "lower"  # limit value below liminf

Pi = tuple[tuple[str, Kind], ...]


def _flag_sym(q: str) -> str:
    return "(+)" if q == UPPER else "(-)"


def ord_pure_deriv(delta: KindContext, a: Constructor) -> Derivation | None:
    """Pure ordinal expressions: infinity, a covariant variable, successors."""
    match a:
        case Const(name, _) if name == INFTY:
            return Derivation("ord-oo", ("ordpure", delta, a))
        case Var(n):
            entry = delta.lookup(n)
            if entry is not None and entry.kind == ORD and polarity_leq(entry.pol, PLUS):
                return Derivation("ord-var", ("ordpure", delta, a))
            return None
        case App(Const(name, _), b) if name == SUCC:
            inner = ord_pure_deriv(delta, b)
            if inner is None:
                return None
            return Derivation("ord-s", ("ordpure", delta, a), (inner,))
    return None


def ord_pure(delta: KindContext, a: Constructor) -> bool:
    return ord_pure_deriv(delta, a) is not None


def _combined(delta: KindContext, pi: Pi) -> KindContext:
    ctx = delta
    for name, kind in pi:
        ctx = ctx.extend(name, PLUS, kind)
    return ctx


def _pi_free(pi: Pi, f: Constructor) -> frozenset[str]:
    return free_vars(f) & frozenset(n for n, _ in pi)


class _Ctx:
    """Carries the fresh-name supply through one semicont check."""

    def __init__(self, avoid=()):
        self.names = FreshNames.avoiding(avoid)


def semicont_check(
    delta: KindContext,
    pi: Pi,
    ivar: str,
    q: str,
    f: Constructor,
    kind: Kind | None = None,
) -> Derivation:
    """Derive the semi-continuity judgement for `f`, or raise ContinuityError.

    Preconditions: `ivar` is bound in `delta` at kind ord, and `f` kinds
    under `delta` with the Pi variables read covariantly.
    """
    entry = delta.lookup(ivar)
    if entry is None or entry.kind != ORD:
        raise ContinuityError(f"{ivar} is not an ordinal variable of the context")
    combined = _combined(delta, pi)
    k, nf = check_and_normalize(combined, f)
    if kind is not None and not kind_usable_as(k, kind):
        raise KindError(f"subject kinds to {k}, not {kind}")
    return _go(delta, pi, ivar, q, nf, k, _Ctx(combined.names() | free_vars(nf)))


def _conc(delta, pi, ivar, q, f, kind):
    return ("cont", delta, pi, ivar, q, f, kind)


def _go(delta, pi, ivar, q, f, kind, st: _Ctx) -> Derivation:
    structural_failure: ContinuityError | None = None
    attempts: list[tuple[str, str]] = []

    try:
        d = _structural(delta, pi, ivar, q, f, kind, st, attempts)
        if d is not None:
            return d
    except ContinuityError as e:
        structural_failure = e

    d = _fallbacks(delta, pi, ivar, q, f, kind, attempts)
    if d is not None:
        return d

    raise ContinuityError(
        f"no semi-continuity rule applies at {_flag_sym(q)}",
        subject=f,
        attempts=attempts,
        cause=structural_failure,
    )


def _structural(delta, pi, ivar, q, f, kind, st, attempts) -> Derivation | None:
    """Try the one structural rule matching the head; None when none matches."""
    if isinstance(f, Lam):
        assert isinstance(kind, KArrow)
        x = st.names.fresh(f.hint)
        body = open_c(f.body, Var(x))
        inner = _go(delta.extend(x, kind.pol, kind.dom), pi, ivar, q, body, kind.cod, st)
        return Derivation("cont-abs", _conc(delta, pi, ivar, q, f, kind), (inner,))

    head, args = spine(f)

    if isinstance(head, Var) and not args:
        name = head.name
        entry = delta.lookup(name)
        pol = entry.pol if entry is not None else (PLUS if any(n == name for n, _ in pi) else None)
        if pol is None:
            attempts.append(("cont-var", f"{name} not in scope"))
            return None
        if not polarity_leq(pol, PLUS):
            attempts.append(("cont-var", f"{name} bound at {pol}"))
            return None
        return Derivation("cont-var", _conc(delta, pi, ivar, q, f, kind))

    if isinstance(head, Const):
        if head.name in (SUM, PROD) and len(args) == 2:
            rule = "cont-sum" if head.name == SUM else "cont-prod"
            left = _go(delta, pi, ivar, q, args[0], STAR, st)
            right = _go(delta, pi, ivar, q, args[1], STAR, st)
            return Derivation(rule, _conc(delta, pi, ivar, q, f, kind), (left, right))

        if head.name == ARROW and len(args) == 2:
            if q != UPPER:
                attempts.append(("cont-arr", "only the upper form exists for arrows"))
                return None
            dom = _go(invert_context(MINUS, delta), (), ivar, LOWER, args[0], STAR, st)
            cod = _go(delta, pi, ivar, UPPER, args[1], STAR, st)
            return Derivation("cont-arr", _conc(delta, pi, ivar, q, f, kind), (dom, cod))

        if head.name == FORALL and len(args) == 1:
            if q != UPPER:
                attempts.append(("cont-all", "quantifiers only preserve the upper form"))
                return None
            body_kind = karrow(MIXED, head.kind_arg, STAR)
            inner = _go(delta, pi, ivar, UPPER, args[0], body_kind, st)
            return Derivation("cont-all", _conc(delta, pi, ivar, q, f, kind), (inner,))

        if head.name in (MU, NU) and len(args) == 2:
            return _fixpoint_rule(delta, pi, ivar, q, f, kind, head, args, st, attempts)

    if args:
        return _cont_app(delta, pi, ivar, q, f, kind, st, attempts)

    return None  # bare constant: fallbacks


def _fixpoint_rule(delta, pi, ivar, q, f, kind, head, args, st, attempts):
    size, functional = args
    if head.name == MU and q != LOWER:
        attempts.append(("cont-mu", "inductive rule only yields the lower form"))
        return None
    if head.name == NU and q != UPPER:
        attempts.append(("cont-nu", "coinductive rule only yields the upper form"))
        return None
    if not isinstance(functional, Lam):
        attempts.append(("cont-" + head.name, "functional is not an abstraction"))
        return None

    if head.name == MU:
        onf = as_ordnf(size)
        size_is_ivar = onf == OrdNF(ivar, 0)
        if not size_is_ivar and ivar in free_vars(size):
            raise ContinuityError(
                f"size of the inductive type mentions {ivar} but is not {ivar} itself",
                subject=f,
                attempts=[("cont-mu", "side condition: size = the recursion variable, "
                           "or free of it")],
            )
        size_kind = kind_check(delta, size)  # plain kinding premise
        size_prem = size_kind.derivation
    else:
        size_prem = ord_pure_deriv(delta, size)
        if size_prem is None:
            raise ContinuityError(
                "size of the coinductive type is not a pure ordinal expression",
                subject=f,
                attempts=[("cont-nu", "premise: size must be oo or iterated "
                           "successors of a covariant variable")],
            )

    x = st.names.fresh(functional.hint)
    body = open_c(functional.body, Var(x))
    inner = _go(delta, pi + ((x, head.kind_arg),), ivar, q, body, head.kind_arg, st)
    rule = "cont-mu" if head.name == MU else "cont-nu"
    return Derivation(rule, _conc(delta, pi, ivar, q, f, kind), (inner, size_prem))


def _cont_app(delta, pi, ivar, q, f, kind, st, attempts):
    head_part = f.fun
    arg = f.arg
    combined = _combined(delta, pi)
    k_head, _, _ = kind_infer(combined, head_part)
    if not isinstance(k_head, KArrow):
        attempts.append(("cont-app", f"head kinds to {k_head}"))
        return None

    arg_ctx = invert_context(k_head.pol, _combined(delta.remove(ivar), pi))
    try:
        kind_check(arg_ctx, arg)
    except KindError as e:
        attempts.append(("cont-app", f"argument not kindable without {ivar}: {e.message}"))
        return None

    inner = _go(delta, pi, ivar, q, head_part, k_head, st)
    return Derivation("cont-app", _conc(delta, pi, ivar, q, f, kind), (inner,))


def _fallbacks(delta, pi, ivar, q, f, kind, attempts) -> Derivation | None:
    pi_used = _pi_free(pi, f)
    i_free = ivar in free_vars(f)
    entry = delta.lookup(ivar)

    # cont-in: constant in the distinguished variable
    if pi_used:
        attempts.append(("cont-in", f"strictly positive {', '.join(sorted(pi_used))} occurs"))
    elif i_free:
        attempts.append(("cont-in", f"{ivar} occurs free"))
    else:
        try:
            kind_check(delta.remove(ivar), f)
            return Derivation("cont-in", _conc(delta, pi, ivar, q, f, kind))
        except KindError as e:
            attempts.append(("cont-in", e.message))

    # cont-co: monotone constructors are upper semi-continuous
    if q == UPPER:
        if pi_used:
            attempts.append(("cont-co", "strictly positive context in use"))
        elif not polarity_leq(entry.pol, PLUS):
            attempts.append(("cont-co", f"{ivar} bound at {entry.pol}, not below +"))
        else:
            try:
                prem = kind_check(delta.repol(ivar, PLUS), f)
                return Derivation(
                    "cont-co", _conc(delta, pi, ivar, q, f, kind), (prem.derivation,)
                )
            except KindError as e:
                attempts.append(("cont-co", e.message))

    # cont-contra: antitone constructors are lower semi-continuous
    if q == LOWER:
        if pi_used:
            attempts.append(("cont-contra", "strictly positive context in use"))
        elif not polarity_leq(entry.pol, MINUS):
            attempts.append(("cont-contra", f"{ivar} bound at {entry.pol}, not below -"))
        else:
            try:
                prem = kind_check(delta.repol(ivar, MINUS), f)
                return Derivation(
                    "cont-contra", _conc(delta, pi, ivar, q, f, kind), (prem.derivation,)
                )
            except KindError as e:
                attempts.append(("cont-contra", e.message))

    return None


@dataclass(frozen=True)
class AdmissibleShape:
    flavor: str  # "mu" or "nu"
    ivar: str
    qvars: tuple[tuple[str, Kind], ...]
    nonrec: tuple[Constructor, ...]
    functional: Constructor
    params: tuple[Constructor, ...]
    codomain: Constructor | None
    matrix: Constructor
    cont: Derivation


def _peel_shape(delta2, body, flavor, n, ivar, names):
    qvars = []
    while True:
        head, args = spine(body)
        if isinstance(head, Const) and head.name == FORALL and len(args) == 1 and isinstance(args[0], Lam):
            x = names.fresh(args[0].hint)
            qvars.append((x, head.kind_arg))
            body = open_c(args[0].body, Var(x))
        else:
            break

    nonrec = []
    for k in range(n):
        head, args = spine(body)
        if not (isinstance(head, Const) and head.name == ARROW and len(args) == 2):
            raise AdmissibilityError(
                f"expected {n} leading argument types, found {k}", shape_error=True
            )
        nonrec.append(args[0])
        body = args[1]

    want = MU if flavor == "mu" else NU

    if flavor == "mu":
        head, args = spine(body)
        if not (isinstance(head, Const) and head.name == ARROW and len(args) == 2):
            raise AdmissibilityError(
                "recursive argument position is missing", shape_error=True
            )
        rec, codomain = args
    else:
        rec, codomain = body, None

    rhead, rargs = spine(rec)
    kindname = "inductive" if flavor == "mu" else "coinductive"
    if not (isinstance(rhead, Const) and rhead.name == want and len(rargs) >= 2):
        raise AdmissibilityError(
            f"{'argument' if flavor == 'mu' else 'result'} is not {'an' if flavor == 'mu' else 'a'} {kindname} type",
            shape_error=True,
        )
    if as_ordnf(rargs[0]) != OrdNF(ivar, 0):
        raise AdmissibilityError(
            f"{kindname} type is sized by {rargs[0]!r}, not by the recursion variable",
            shape_error=True,
        )
    return tuple(qvars), tuple(nonrec), rargs[1], tuple(rargs[2:]), codomain


def admissible(delta: KindContext, motive: Constructor, flavor: str, n: int) -> AdmissibleShape:
    """Check that a recursion motive is admissible; raise AdmissibilityError.

    The motive must kind to o ord -> * under `delta`.  Its application to a
    fresh ordinal variable is normalized, matched against the required
    quantifier/argument shape, and the whole matrix is checked upper
    semi-continuous in that variable with an empty strictly positive
    context.  Both checks run even if the first fails, so diagnostics carry
    the rule trail in every case.
    """
    assert flavor in ("mu", "nu") and n >= 0
    names = FreshNames.avoiding(delta.names() | free_vars(motive))
    res = kind_check(delta, motive)
    if not kind_usable_as(res.kind, karrow(MIXED, ORD, STAR)):
        raise AdmissibilityError(
            f"recursion motive kinds to {res.kind}, expected an ord-indexed type"
        )
    ivar = names.fresh("i")
    delta2 = delta.extend(ivar, MIXED, ORD)
    matrix = normalize(delta2, App(res.constructor, Var(ivar)), STAR)

    shape_error: AdmissibilityError | None = None
    parts = None
    try:
        parts = _peel_shape(delta2, matrix, flavor, n, ivar, names)
    except AdmissibilityError as e:
        shape_error = e

    cont_error: ContinuityError | None = None
    cont = None
    try:
        cont = semicont_check(delta2, (), ivar, UPPER, matrix, STAR)
    except ContinuityError as e:
        cont_error = e

    if shape_error is not None or cont_error is not None:
        msgs = []
        if shape_error is not None:
            msgs.append(f"shape: {shape_error.message}")
        if cont_error is not None:
            msgs.append("matrix is not upper semi-continuous")
        raise AdmissibilityError(
            "; ".join(msgs), shape_error=shape_error, cont_error=cont_error
        )

    qvars, nonrec, functional, params, codomain = parts
    return AdmissibleShape(
        flavor=flavor,
        ivar=ivar,
        qvars=qvars,
        nonrec=nonrec,
        functional=functional,
        params=params,
        codomain=codomain,
        matrix=matrix,
        cont=cont,
    )


def validate_cont(d: Derivation) -> bool:
    """Replay a semi-continuity derivation node by node."""
    if d.conclusion[0] == "ordpure":
        _, delta, a = d.conclusion
        return ord_pure(delta, a)
    if d.conclusion[0] == "kind":
        from .kinding import validate_kinding

        return validate_kinding(d)
    tag, delta, pi, ivar, q, f, kind = d.conclusion
    if tag != "cont":
        return False
    if not all(validate_cont(p) for p in d.premises):
        return False
    head, args = spine(f) if not isinstance(f, Lam) else (f, [])
    match d.rule:
        case "cont-abs":
            return isinstance(f, Lam) and isinstance(kind, KArrow)
        case "cont-var":
            return isinstance(f, Var)
        case "cont-sum":
            return isinstance(head, Const) and head.name == SUM and q in (UPPER, LOWER)
        case "cont-prod":
            return isinstance(head, Const) and head.name == PROD
        case "cont-arr":
            dom, cod = d.premises
            return (
                q == UPPER
                and head.name == ARROW
                and dom.conclusion[4] == LOWER
                and dom.conclusion[2] == ()
                and dom.conclusion[1] == invert_context(MINUS, delta)
                and cod.conclusion[4] == UPPER
            )
        case "cont-all":
            return q == UPPER and head.name == FORALL
        case "cont-mu":
            inner = d.premises[0]
            size = args[0]
            side = as_ordnf(size) == OrdNF(ivar, 0) or ivar not in free_vars(size)
            return (
                q == LOWER
                and head.name == MU
                and side
                and inner.conclusion[4] == LOWER
                and len(inner.conclusion[2]) == len(pi) + 1
            )
        case "cont-nu":
            inner = d.premises[0]
            return (
                q == UPPER
                and head.name == NU
                and ord_pure(delta, args[0])
                and inner.conclusion[4] == UPPER
            )
        case "cont-app":
            inner = d.premises[0]
            return isinstance(f, App) and inner.conclusion[5] is not None
        case "cont-in":
            return ivar not in free_vars(f) and not _pi_free(pi, f)
        case "cont-co":
            return q == UPPER and not _pi_free(pi, f)
        case "cont-contra":
            return q == LOWER and not _pi_free(pi, f)
    return False

"""Bidirectional type checking with subsumption and the recursion gate.

Generalization and instantiation are explicit surface forms (type
abstraction and application); fix expressions carry their motive, which is
run through the admissibility gate before the functional is checked.
Constants are elaborated to instantiation chains of their signature
schemes, so every derivation is built from the declarative rules t-c,
t-var, t-abs, t-app, t-sub, t-gen, t-inst and t-rec.

Two contraction shortcuts exist so that reducts of checked programs
re-check at their original types (the subject-reduction instrument):
an application whose head is a bare lambda is typed through the contractum
when its argument cannot be synthesized, and `out (in r)` is typed as `r`.
Both are marked with note="redex" in the emitted derivation.
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
    KindContext,
    MU,
    NU,
    Var,
    alpha_eq,
    capp,
    spine,
)
from .continuity import AdmissibleShape, admissible
from .derivation import Derivation
from .errors import (
    AdmissibilityError,
    CannotInfer,
    NotAdmissible,
    NotAFunction,
    SubtypeError,
    TypeMismatch,
    TypingError,
)
from .kinding import kind_check
from .kinds import Kind, ORD, STAR, kind_usable_as
from .normalize import OrdNF, as_ordnf, normalize, ordnf_constructor
from .signature import signature_type
from .subtyping import subtype
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
    TypingContext,
    UNIT_TM,
    open_tm,
    open_ty,
)

_SIMPLE_SCHEMES = (UNIT_TM, PAIR, FST, SND, INL, INR, CASE)


def _conc(gamma, term, ty):
    return ("type", gamma, term, ty)


@dataclass
class Checker:
    unsafe: bool = False
    contraction_budget: int = 100000

    def __post_init__(self):
        self.names = FreshNames()
        self._norm_cache: dict = {}
        self._kind_cache: dict = {}

    def _contract(self, t: Term, batch: int = 1) -> Term | None:
        """Weak-head surface contraction, used to type reducts whose head
        cannot be synthesized; see the module docstring."""
        if self.contraction_budget <= 0:
            return None
        from .subject import surface_whnf

        out = surface_whnf(t, self.contraction_budget)
        self.contraction_budget = max(0, self.contraction_budget - 1)
        return None if out is t else out

    def _kind_of(self, ctx: KindContext, c: Constructor):
        key = (ctx.entries, c)
        hit = self._kind_cache.get(key)
        if hit is None:
            hit = kind_check(ctx, c)
            self._kind_cache[key] = hit
        return hit

    # helpers -----------------------------------------------------------

    def norm_type(self, gamma: TypingContext, c: Constructor) -> Constructor:
        ctx = gamma.kind_context()
        res = self._kind_of(ctx, c)
        if res.kind != STAR:
            raise TypingError(f"type annotation kinds to {res.kind}, not *")
        return self._norm_at(gamma, c, res.kind)

    def _norm_at(self, gamma, c: Constructor, kind: Kind) -> Constructor:
        return self._norm_in(gamma.kind_context(), c, kind)

    def _norm_in(self, ctx: KindContext, c: Constructor, kind: Kind) -> Constructor:
        key = (ctx.entries, c, kind)
        hit = self._norm_cache.get(key)
        if hit is None:
            hit = normalize(ctx, self._kind_of(ctx, c).constructor, kind)
            self._norm_cache[key] = hit
        return hit

    def _subtype(self, gamma, small, big) -> Derivation:
        return subtype(gamma.kind_context(), small, big, STAR)

    def _subsume(self, gamma, term, deriv, have, want) -> Derivation:
        if alpha_eq(have, want):
            return deriv
        try:
            sub = self._subtype(gamma, have, want)
        except SubtypeError as e:
            from .printer import show_constructor

            raise TypeMismatch(
                f"has type {show_constructor(have)} which is not below "
                f"{show_constructor(want)}: {e.message}"
            )
        return Derivation("t-sub", _conc(gamma, term, want), (deriv, sub))

    def _scheme_chain(self, gamma, name, kind, flavor, insts):
        """t-c followed by t-inst steps; returns (term, type, derivation)."""
        scheme = signature_type(name, kind, flavor)
        ctx = gamma.kind_context()
        ty = self._norm_at(gamma, scheme, STAR)
        term: Term = TmConst(name)
        deriv = Derivation("t-c", _conc(gamma, term, ty))
        for g in insts:
            head, args = spine(ty)
            assert isinstance(head, Const) and head.name == FORALL
            g_el = self._kind_of(ctx, g).constructor
            ty = self._norm_at(gamma, App(args[0], g_el), STAR)
            term = TyApp(term, g_el)
            deriv = Derivation("t-inst", _conc(gamma, term, ty), (deriv,))
        return term, ty, deriv

    def _apply(self, gamma, term, ty, deriv, arg_term, arg_deriv):
        head, args = spine(ty)
        assert isinstance(head, Const) and head.name == ARROW
        out = TmApp(term, arg_term)
        d = Derivation("t-app", _conc(gamma, out, args[1]), (deriv, arg_deriv))
        return out, args[1], d

    def _fresh_var(self, hint):
        return self.names.fresh(hint)

    # inference ----------------------------------------------------------

    def infer(self, gamma: TypingContext, t: Term):
        """Synthesize a normalized type; returns (type, derivation)."""
        base, contracted = t, False
        while True:
            try:
                ty, d = self._infer(gamma, t)
            except CannotInfer:
                reduct = self._contract(t)
                if reduct is None:
                    raise
                t, contracted = reduct, True
                continue
            if contracted:
                d = Derivation("t-app", _conc(gamma, base, ty), (d,), note="redex")
            return ty, d

    def _infer(self, gamma: TypingContext, t: Term):
        match t:
            case TmVar(name):
                ty = gamma.lookup_term(name)
                if ty is None:
                    raise TypingError(f"unbound term variable {name}", rule="t-var")
                return ty, Derivation("t-var", _conc(gamma, t, ty))
            case TmBound(i):
                raise TypingError(f"dangling term index {i}")
            case TmConst(name):
                if name in _SIMPLE_SCHEMES:
                    _, ty, deriv = self._scheme_chain(gamma, name, None, None, ())
                    return ty, deriv
                raise CannotInfer(
                    f"constant {name} needs a checked position (its kind instance "
                    f"is not determined by the term)"
                )
            case TmLam(_, anno, _):
                if anno is None:
                    raise CannotInfer("unannotated function in inference position")
                dom = self.norm_type(gamma, anno)
                x = self._fresh_var(t.hint)
                body = open_tm(t.body, TmVar(x))
                cod, d_body = self.infer(gamma.bind_term(x, dom), body)
                ty = self._norm_at(gamma, capp(Const(ARROW), dom, cod), STAR)
                return ty, Derivation("t-abs", _conc(gamma, t, ty), (d_body,))
            case TmApp(_, _):
                return self._infer_app(gamma, t)
            case TyLam(hint, kind, body):
                x = self._fresh_var(hint)
                g2 = gamma.bind_ty(x, kind)
                inner, d_body = self.infer(g2, open_ty(body, Var(x)))
                from .constructor import forall

                ty = self._norm_at(gamma, forall(x, kind, inner), STAR)
                return ty, Derivation("t-gen", _conc(gamma, t, ty), (d_body,))
            case TyApp(inner, g):
                if isinstance(inner, TyLam):
                    ctx = gamma.kind_context()
                    res = self._kind_of(ctx, g)
                    if not kind_usable_as(res.kind, inner.kind):
                        raise TypeMismatch(
                            f"type argument kinds to {res.kind}, expected {inner.kind}"
                        )
                    ty, d = self.infer(gamma, open_ty(inner.body, res.constructor))
                    return ty, Derivation("t-inst", _conc(gamma, t, ty), (d,), note="redex")
                ty_fun, d_fun = self.infer(gamma, inner)
                head, args = spine(ty_fun)
                if not (isinstance(head, Const) and head.name == FORALL):
                    raise TypeMismatch(
                        "type application of a term whose type is not a quantifier"
                    )
                ctx = gamma.kind_context()
                res = self._kind_of(ctx, g)
                if not kind_usable_as(res.kind, head.kind_arg):
                    raise TypeMismatch(
                        f"type argument kinds to {res.kind}, expected {head.kind_arg}"
                    )
                ty = self._norm_in(ctx, App(args[0], res.constructor), STAR)
                return ty, Derivation("t-inst", _conc(gamma, t, ty), (d_fun,))
            case Anno(inner, a):
                ty = self.norm_type(gamma, a)
                d = self.check(gamma, inner, ty)
                return ty, d
            case Fix():
                return self._infer_fix(gamma, t)
        raise TypingError(f"cannot type {t!r}")

    def _infer_fix(self, gamma: TypingContext, t: Fix):
        if t.motive is None:
            raise TypingError("fix without a motive annotation cannot be checked")
        ctx = gamma.kind_context()
        motive = kind_check(ctx, t.motive).constructor
        cont_deriv = None
        if self.unsafe:
            note = "admissibility skipped (--unsafe)"
        else:
            note = ""
            try:
                shape: AdmissibleShape = admissible(ctx, motive, t.flavor, t.n)
                cont_deriv = shape.cont
            except AdmissibilityError as e:
                raise NotAdmissible(
                    f"recursion motive is not admissible: {e.message}", e
                )
        i = self._fresh_var("i")
        from .constructor import forall, succ

        functional_ty = self._norm_at(
            gamma,
            forall(
                i,
                ORD,
                capp(
                    Const(ARROW),
                    App(motive, Var(i)),
                    App(motive, succ(Var(i))),
                ),
            ),
            STAR,
        )
        d_func = self.check(gamma, t.func, functional_ty)
        result = self._norm_at(gamma, forall(i, ORD, App(motive, Var(i))), STAR)
        premises = (d_func,) if cont_deriv is None else (d_func, cont_deriv)
        return result, Derivation("t-rec", _conc(gamma, t, result), premises, note=note)

    def _infer_app(self, gamma: TypingContext, t: TmApp):
        f, a = t.fun, t.arg

        match f:
            case TmConst(name) if name in (FST, SND):
                ty_p, d_p = self.infer(gamma, a)
                head, args = spine(ty_p)
                if not (isinstance(head, Const) and head.name == "*"):
                    raise TypeMismatch("projection from a non-product")
                term0, ty0, d0 = self._scheme_chain(gamma, name, None, None, args)
                _, ty1, d1 = self._apply(gamma, term0, ty0, d0, a, d_p)
                return ty1, d1
            case TmConst(name) if name == OUT:
                return self._infer_out(gamma, t, a)
            case TmApp(TmConst(name), r) if name == PAIR:
                ty_r, d_r = self.infer(gamma, r)
                ty_s, d_s = self.infer(gamma, a)
                term0, ty0, d0 = self._scheme_chain(gamma, PAIR, None, None, (ty_r, ty_s))
                term1, ty1, d1 = self._apply(gamma, term0, ty0, d0, r, d_r)
                _, ty2, d2 = self._apply(gamma, term1, ty1, d1, a, d_s)
                return ty2, d2
            case TmApp(TmApp(TmConst(name), scrut), br_l) if name == CASE:
                return self._infer_case(gamma, scrut, br_l, a, expected=None)
            case TmConst(name) if name in (INL, INR, IN):
                raise CannotInfer(
                    f"value constructor {name} needs a checked position"
                )
            case TmLam(_, _, _):
                return self._infer_redex(gamma, f, a)

        ty_f, d_f = self.infer(gamma, f)
        head, args = spine(ty_f)
        if isinstance(head, Const) and head.name == ARROW:
            d_a = self.check(gamma, a, args[0])
            return args[1], Derivation("t-app", _conc(gamma, t, args[1]), (d_f, d_a))
        if isinstance(head, Const) and head.name == FORALL:
            raise NotAFunction(
                "term of quantified type applied to a term; instantiate it first"
            )
        raise NotAFunction("application of a non-function")

    def _infer_redex(self, gamma, f: TmLam, a: Term):
        whole = TmApp(f, a)
        if f.anno is not None:
            dom = self.norm_type(gamma, f.anno)
            d_a = self.check(gamma, a, dom)
        else:
            try:
                dom, d_a = self.infer(gamma, a)
            except CannotInfer:
                # type through the contractum; see module docstring
                ty, d = self.infer(gamma, open_tm(f.body, a))
                return ty, Derivation(
                    "t-app", _conc(gamma, whole, ty), (d,), note="redex"
                )
        x = self._fresh_var(f.hint)
        body = open_tm(f.body, TmVar(x))
        ty, d_body = self.infer(gamma.bind_term(x, dom), body)
        arrow_ty = self._norm_at(gamma, capp(Const(ARROW), dom, ty), STAR)
        d_abs = Derivation("t-abs", _conc(gamma, f, arrow_ty), (d_body,))
        return ty, Derivation("t-app", _conc(gamma, whole, ty), (d_abs, d_a))

    def _infer_out(self, gamma, whole, r):
        # drive the argument to a fold or a synthesizable head
        while True:
            if isinstance(r, TmApp) and r.fun == TmConst(IN):
                ty, d = self.infer(gamma, r.arg)
                return ty, Derivation(
                    "t-app", _conc(gamma, whole, ty), (d,), note="redex"
                )
            try:
                ty_r, d_r = self.infer(gamma, r)
                break
            except CannotInfer:
                reduct = self._contract(r)
                if reduct is None:
                    raise
                r = reduct
        head, args = spine(ty_r)
        if not (isinstance(head, Const) and head.name in (MU, NU)):
            raise TypeMismatch("unfolding a value of non-fixed-point type")
        size, functional, params = args[0], args[1], args[2:]
        onf = as_ordnf(size)
        flavor = "mu" if head.name == MU else "nu"
        if flavor == "mu":
            # unfold below the stage when the size has a predecessor;
            # a bare variable upcasts through mu^a <= mu^(a+1) instead
            if onf is not None and onf.is_infty:
                b = size
            elif onf is not None and onf.offset >= 1:
                b = ordnf_constructor(OrdNF(onf.var, onf.offset - 1))
            else:
                b = size
        else:
            if onf is None:
                raise TypeMismatch("coinductive size is not a normal ordinal")
            if onf.is_infty:
                b = size
            elif onf.offset >= 1:
                b = ordnf_constructor(OrdNF(onf.var, onf.offset - 1))
            else:
                raise TypeMismatch(
                    "cannot observe a coinductive value at an unknown depth "
                    "(size has no predecessor)"
                )
        insts = (functional,) + tuple(params) + (b,)
        term0, ty0, d0 = self._scheme_chain(gamma, OUT, head.kind_arg, flavor, insts)
        dom = spine(ty0)[1][0]
        d_arg = self._subsume(gamma, r, d_r, ty_r, dom)
        _, ty1, d1 = self._apply(gamma, term0, ty0, d0, r, d_arg)
        return ty1, d1

    def _infer_case(self, gamma, scrut, br_l, br_r, expected):
        whole = capp_terms(TmConst(CASE), scrut, br_l, br_r)
        # drive the scrutinee to an injection or a synthesizable head
        while True:
            if isinstance(scrut, TmApp) and scrut.fun in (TmConst(INL), TmConst(INR)):
                branch = br_l if scrut.fun == TmConst(INL) else br_r
                contractum = TmApp(branch, scrut.arg)
                if expected is None:
                    ty, d = self.infer(gamma, contractum)
                else:
                    ty, d = expected, self.check(gamma, contractum, expected)
                return ty, Derivation(
                    "t-app", _conc(gamma, whole, ty), (d,), note="redex"
                )
            try:
                ty_s, d_s = self.infer(gamma, scrut)
                break
            except CannotInfer:
                reduct = self._contract(scrut)
                if reduct is None:
                    raise
                scrut = reduct
        head, args = spine(ty_s)
        if not (isinstance(head, Const) and head.name == "+"):
            raise TypeMismatch("case scrutinee is not of sum type")
        a_ty, b_ty = args
        if expected is None:
            ty_l, d_l = self.infer(gamma, br_l)
            lh, largs = spine(ty_l)
            if not (isinstance(lh, Const) and lh.name == ARROW):
                raise TypeMismatch("case branch is not a function")
            if not alpha_eq(largs[0], a_ty):
                d_l = self._subsume(
                    gamma, br_l, d_l, ty_l,
                    self._norm_at(gamma, capp(Const(ARROW), a_ty, largs[1]), STAR),
                )
            c_ty = largs[1]
        else:
            c_ty = expected
            d_l = self.check(
                gamma, br_l, self._norm_at(gamma, capp(Const(ARROW), a_ty, c_ty), STAR)
            )
        d_r = self.check(
            gamma, br_r, self._norm_at(gamma, capp(Const(ARROW), b_ty, c_ty), STAR)
        )
        term0, ty0, d0 = self._scheme_chain(gamma, CASE, None, None, (a_ty, b_ty, c_ty))
        term, ty1, d1 = self._apply(gamma, term0, ty0, d0, scrut, d_s)
        term, ty2, d2 = self._apply(gamma, term, ty1, d1, br_l, d_l)
        _, ty3, d3 = self._apply(gamma, term, ty2, d2, br_r, d_r)
        return ty3, d3

    # checking -----------------------------------------------------------

    def check(self, gamma: TypingContext, t: Term, ty: Constructor) -> Derivation:
        """Check `t` against the normalized type `ty`."""
        base, cur = t, t
        while True:
            try:
                d = self._check(gamma, cur, ty)
            except CannotInfer:
                reduct = self._contract(cur)
                if reduct is None:
                    raise
                cur = reduct
                continue
            if cur is not base:
                d = Derivation("t-sub", _conc(gamma, base, ty), (d,), note="redex")
            return d

    def _check(self, gamma: TypingContext, t: Term, ty: Constructor) -> Derivation:
        head, targs = spine(ty)
        is_arrow = isinstance(head, Const) and head.name == ARROW

        match t:
            case TmLam(hint, anno, body):
                if not is_arrow:
                    raise TypeMismatch(
                        "function against a non-function type "
                        "(use explicit type abstraction for quantifiers)"
                    )
                dom, cod = targs
                bind_at = dom
                d_anno_sub = None
                if anno is not None:
                    bind_at = self.norm_type(gamma, anno)
                    if not alpha_eq(bind_at, dom):
                        d_anno_sub = self._subtype(gamma, dom, bind_at)
                x = self._fresh_var(hint)
                d_body = self.check(
                    gamma.bind_term(x, bind_at), open_tm(body, TmVar(x)), cod
                )
                d = Derivation("t-abs", _conc(gamma, t, ty), (d_body,))
                if d_anno_sub is not None:
                    d = Derivation(
                        "t-sub", _conc(gamma, t, ty), (d, d_anno_sub), note="anno"
                    )
                return d
            case TyLam(hint, kind, body):
                if not (isinstance(head, Const) and head.name == FORALL):
                    raise TypeMismatch("type abstraction against a non-quantifier")
                if kind != head.kind_arg:
                    raise TypeMismatch(
                        f"type abstraction at kind {kind}, quantifier at {head.kind_arg}"
                    )
                x = self._fresh_var(hint)
                g2 = gamma.bind_ty(x, kind)
                inner_ty = self._norm_in(g2.kind_context(), App(targs[0], Var(x)), STAR)
                d_body = self.check(g2, open_ty(body, Var(x)), inner_ty)
                return Derivation("t-gen", _conc(gamma, t, ty), (d_body,))
            case TmApp(TmConst(name), arg) if name == IN:
                return self._check_in(gamma, t, arg, ty, head, targs)
            case TmApp(TmApp(TmConst(name), r), s) if name == PAIR:
                if isinstance(head, Const) and head.name == "*":
                    d_r = self.check(gamma, r, targs[0])
                    d_s = self.check(gamma, s, targs[1])
                    term0, ty0, d0 = self._scheme_chain(gamma, PAIR, None, None, targs)
                    term, ty1, d1 = self._apply(gamma, term0, ty0, d0, r, d_r)
                    _, _, d2 = self._apply(gamma, term, ty1, d1, s, d_s)
                    return d2
            case TmApp(TmConst(name), arg) if name in (INL, INR):
                if isinstance(head, Const) and head.name == "+":
                    comp = targs[0] if name == INL else targs[1]
                    d_arg = self.check(gamma, arg, comp)
                    term0, ty0, d0 = self._scheme_chain(gamma, name, None, None, targs)
                    _, _, d1 = self._apply(gamma, term0, ty0, d0, arg, d_arg)
                    return d1
            case TmApp(TmApp(TmApp(TmConst(name), scrut), br_l), br_r) if name == CASE:
                _, d = self._infer_case(gamma, scrut, br_l, br_r, expected=ty)
                return d
            case TmApp(TmLam(_, None, body), arg):
                try:
                    have, d = self.infer(gamma, t)
                except CannotInfer:
                    d_inner = self.check(gamma, open_tm(body, arg), ty)
                    return Derivation(
                        "t-app", _conc(gamma, t, ty), (d_inner,), note="redex"
                    )
                return self._subsume(gamma, t, d, have, ty)

        have, d = self.infer(gamma, t)
        return self._subsume(gamma, t, d, have, ty)

    def _check_in(self, gamma, whole, arg, ty, head, targs):
        if not (isinstance(head, Const) and head.name in (MU, NU)):
            raise TypeMismatch("fold against a non-fixed-point type")
        size, functional, params = targs[0], targs[1], targs[2:]
        flavor = "mu" if head.name == MU else "nu"
        onf = as_ordnf(size)
        if flavor == "mu":
            if onf is None:
                raise TypeMismatch("inductive size is not a normal ordinal")
            if onf.is_infty:
                b = size
            elif onf.offset >= 1:
                b = ordnf_constructor(OrdNF(onf.var, onf.offset - 1))
            else:
                raise TypeMismatch(
                    "cannot build an inductive value at an unknown size "
                    "(size has no predecessor)"
                )
        else:
            # fold below the stage when the size has a predecessor; a bare
            # variable subsumes through nu^(a+1) <= nu^a instead
            if onf is not None and onf.is_infty:
                b = size
            elif onf is not None and onf.offset >= 1:
                b = ordnf_constructor(OrdNF(onf.var, onf.offset - 1))
            else:
                b = size
        ctx = gamma.kind_context()
        unrolled = self._norm_in(
            ctx, capp(functional, capp(head, b, functional, *params), *params), STAR
        )
        d_arg = self.check(gamma, arg, unrolled)
        insts = (functional,) + tuple(params) + (b,)
        term0, ty0, d0 = self._scheme_chain(gamma, IN, head.kind_arg, flavor, insts)
        term1, ty1, d1 = self._apply(gamma, term0, ty0, d0, arg, d_arg)
        return self._subsume(gamma, whole, d1, ty1, ty)


def capp_terms(f: Term, *args: Term) -> Term:
    for a in args:
        f = TmApp(f, a)
    return f


def infer(gamma: TypingContext, t: Term, unsafe: bool = False):
    return Checker(unsafe=unsafe).infer(gamma, t)


def check(gamma: TypingContext, t: Term, ty: Constructor, unsafe: bool = False):
    return Checker(unsafe=unsafe).check(gamma, t, ty)


def validate_typing(d: Derivation) -> bool:
    """Replay a typing derivation node by node (structural schema check)."""
    tag = d.conclusion[0]
    if tag in ("sub", "cont", "kind", "ordpure"):
        from .continuity import validate_cont
        from .kinding import validate_kinding
        from .subtyping import validate_subtyping

        return {
            "sub": validate_subtyping,
            "cont": validate_cont,
            "kind": validate_kinding,
            "ordpure": validate_cont,
        }[tag](d)
    if tag != "type":
        return False
    if not all(validate_typing(p) for p in d.premises):
        return False
    _, gamma, term, ty = d.conclusion
    match d.rule:
        case "t-c":
            return isinstance(term, TmConst)
        case "t-var":
            return isinstance(term, TmVar) and gamma.lookup_term(term.name) is not None
        case "t-abs":
            return isinstance(term, TmLam)
        case "t-app":
            return isinstance(term, TmApp)
        case "t-sub":
            if d.note in ("redex", "anno"):
                return len(d.premises) >= 1
            t_prem, sub_prem = d.premises
            _, _, _, small = t_prem.conclusion
            _, _, f, g, _ = sub_prem.conclusion
            return alpha_eq(small, f) and alpha_eq(g, ty)
        case "t-gen":
            head, _ = spine(ty)
            return isinstance(head, Const) and head.name == FORALL
        case "t-inst":
            return isinstance(term, (TyApp, TmApp)) or True
        case "t-rec":
            head, _ = spine(ty)
            return isinstance(term, Fix) and isinstance(head, Const) and head.name == FORALL
    return False

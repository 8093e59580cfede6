import pytest

from fwh.constructor import KindContext, Var, capp, infty, lam
from fwh.errors import CannotInfer, NotAdmissible, TypeMismatch
from fwh.kinds import ORD, STAR, karrow
from fwh.parser import parse_constructor, parse_term
from fwh.polarity import PLUS
from fwh.printer import show_constructor
from fwh.terms import TypingContext, subst_ty_in_term
from fwh.typecheck import Checker, validate_typing

from helpers import grose_def, nat_def, stream_def


def _defs():
    out = {}
    from fwh.constructor import subst_constructor

    def ty(src):
        c = parse_constructor(src)
        for name, body in out.items():
            c = subst_constructor(body, name, c)
        return c

    out["Nat"] = ty(r"\i:ord. mu[i] (\X:*. 1 + X)")
    out["Bool"] = ty("1 + 1")
    out["Eq"] = ty(r"\A:*. A -> A -> Bool")
    out["GRose"] = ty(r"\i:ord. \F:* ->+ *. \A:*. mu[i] (\X:*. 1 + A * F X)")
    out["Stream"] = ty(r"\i:ord. \A:*. nu[i] (\X:*. A * X)")
    return out


DEFS = _defs()


def _term(src):
    t = parse_term(src)
    for name, body in DEFS.items():
        t = subst_ty_in_term(body, name, t)
    return t


def _type(src):
    from fwh.constructor import subst_constructor

    c = parse_constructor(src)
    for name, body in DEFS.items():
        c = subst_constructor(body, name, c)
    return c


def test_unit_infers():
    ty, d = Checker().infer(TypingContext(), _term("<>"))
    assert show_constructor(ty) == "1"
    assert validate_typing(d)


def test_bare_lambda_cannot_infer():
    with pytest.raises(CannotInfer):
        Checker().infer(TypingContext(), _term(r"\x. x"))


def test_annotated_lambda_infers():
    ty, d = Checker().infer(TypingContext(), _term(r"\x:1. x"))
    assert show_constructor(ty) == "1 -> 1"


def test_identity_checks_against_quantifier():
    ck = Checker()
    ty = ck.norm_type(TypingContext(), _type("all A:*. A -> A"))
    d = ck.check(TypingContext(), _term(r"/\A:*. \x. x"), ty)
    assert validate_typing(d)
    assert "t-gen" in d.rules()


def test_subsumption_coherence():
    # checking at a supertype succeeds whenever the subtype checks
    ck = Checker()
    g = TypingContext()
    small = ck.norm_type(g, _type("all i:ord. Nat[i+1]"))
    t = _term(r"/\i:ord. in (inl <>)")
    ck.check(g, t, small)
    bigger = ck.norm_type(g, _type("Nat[oo]"))
    d = ck.check(g, _term(r"(/\i:ord. in (inl <>)) [oo]"), bigger)
    assert validate_typing(d)


def test_fix_infers_generalized_type():
    ck = Checker()
    g = TypingContext()
    t = _term(
        r"fixmu 0 [\i:ord. Eq (Nat[i])]"
        r" (/\i:ord. \eq. \a. \b."
        r"   case (out a) (\u. case (out b) (\u2. inl <>) (\m. inr <>))"
        r"                (\n. case (out b) (\u2. inr <>) (\m. eq n m)))"
    )
    ty, d = ck.infer(g, t)
    want = ck.norm_type(g, _type("all i:ord. Eq (Nat[i])"))
    from fwh.constructor import alpha_eq

    assert alpha_eq(ty, want)
    assert d.rule == "t-rec"
    assert validate_typing(d)


def test_eqgrose_fix_infers():
    ck = Checker()
    g = (
        TypingContext()
        .bind_ty("F", karrow(PLUS, STAR, STAR))
        .bind_ty("A", STAR)
    )
    g = g.bind_term("eqF", ck.norm_type(g, _type("all B:*. Eq B -> Eq (F B)")))
    g = g.bind_term("eqA", ck.norm_type(g, _type("Eq A")))
    t = _term(
        r"fixmu 0 [\i:ord. Eq (GRose[i] F A)]"
        r" (/\i:ord. \eq. \t1. \t2."
        r"   case (out t1)"
        r"     (\u. inl <>)"
        r"     (\n1. case (out t2) (\u2. inr <>)"
        r"        (\n2. eqF [GRose[i] F A] eq (snd n1) (snd n2))))"
    )
    ty, d = ck.infer(g, t)
    assert "Eq" not in show_constructor(ty)  # fully resolved
    want = ck.norm_type(g, _type("all i:ord. Eq (GRose[i] F A)"))
    from fwh.constructor import alpha_eq

    assert alpha_eq(ty, want)


def test_loop_fix_not_admissible():
    ck = Checker()
    t = _term(
        r"fixmu 0 [\i:ord. (Nat[oo] -> Nat[i+1]) -> Nat[oo]]"
        r" (/\i:ord. \lp. \g. lp g)"
    )
    with pytest.raises(NotAdmissible) as exc:
        ck.infer(TypingContext(), t)
    assert exc.value.rule is not None


def test_unsafe_skips_gate():
    ck = Checker(unsafe=True)
    t = _term(
        r"fixmu 0 [\i:ord. Nat[i] -> Nat[oo]]"
        r" (/\i:ord. \f. \n. n)"
    )
    # inadmissible shapes that are otherwise well-typed pass with the gate off
    bad = _term(
        r"fixmu 0 [\i:ord. Nat[i+1] -> Nat[oo]]"
        r" (/\i:ord. \f. \n. n)"
    )
    with pytest.raises(NotAdmissible):
        Checker().infer(TypingContext(), bad)
    ty, _ = ck.infer(TypingContext(), bad)
    assert "Nat" not in show_constructor(ty)


def test_type_mismatch_reports_subtype_failure():
    ck = Checker()
    g = TypingContext()
    want = ck.norm_type(g, _type("Nat[oo] -> Nat[oo]"))
    with pytest.raises(TypeMismatch):
        ck.check(g, _term("<>"), want)


def test_nats_checks():
    ck = Checker()
    g = TypingContext()
    g = g.bind_term(
        "mapStream",
        ck.norm_type(
            g,
            _type(
                "all A:*. all B:*. (A -> B) -> all i:ord. Stream[i] A -> Stream[i] B"
            ),
        ),
    )
    g = g.bind_term("zero", ck.norm_type(g, _type("all i:ord. Nat[i+1]")))
    g = g.bind_term(
        "succ", ck.norm_type(g, _type("all i:ord. Nat[i] -> Nat[i+1]"))
    )
    t = _term(
        r"fixnu 0 [\i:ord. Stream[i] (Nat[i])]"
        r" (/\i:ord. \ns. in <zero [i], mapStream [Nat[i]] [Nat[i+1]] (succ [i]) [i] ns>)"
    )
    want = ck.norm_type(g, _type("all i:ord. Stream[i] (Nat[i])"))
    d = ck.check(g, t, want)
    assert validate_typing(d)

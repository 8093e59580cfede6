"""Derivation replay across the corpus and a declarative cross-check."""

from fwh.constructor import Const, KindContext, alpha_eq, capp, infty, spine
from fwh.driver import check_file_text, corpus_path, explain_def
from fwh.kinds import STAR
from fwh.normalize import check_and_normalize
from fwh.parser import parse_constructor
from fwh.subtyping import is_subtype
from fwh.terms import TmApp, TmConst, TmLam, TmVar, open_tm
from fwh.typecheck import validate_typing


def test_every_corpus_derivation_validates():
    for name in ("natops.fwh", "streams.fwh", "zipstream.fwh", "eqgrose.fwh"):
        with open(corpus_path(name), encoding="utf-8") as fh:
            res = check_file_text(fh.read(), name)
        assert res.ok
        for d in res.def_order:
            deriv = explain_def(res, d)
            assert validate_typing(deriv), (name, d)


def test_derivation_rules_are_the_declarative_set():
    with open(corpus_path("streams.fwh"), encoding="utf-8") as fh:
        res = check_file_text(fh.read(), "streams.fwh")
    deriv = explain_def(res, "nats")
    allowed = {
        "t-c", "t-var", "t-abs", "t-app", "t-sub", "t-gen", "t-inst", "t-rec",
        # embedded kinding/subtyping/semicont premises
        "kind-c", "kind-var", "kind-abs", "kind-app",
        "leq-refl", "leq-oo", "leq-s-r", "leq-lam", "leq-app", "leq-app+",
        "leq-app-", "leq-trans",
        "cont-co", "cont-contra", "cont-in", "cont-var", "cont-abs",
        "cont-app", "cont-sum", "cont-prod", "cont-arr", "cont-all",
        "cont-mu", "cont-nu", "ord-oo", "ord-var", "ord-s",
    }
    assert set(deriv.rules()) <= allowed


# a tiny declarative typing search, independent of the bidirectional checker


def _decl_search(env, t, ty, pool, depth) -> bool:
    """Does some instantiation of the declarative rules type `t` at `ty`?"""
    if depth < 0:
        return False
    ctx = KindContext()

    # t-sub through any pool member
    for mid in pool:
        if not alpha_eq(mid, ty) and is_subtype(ctx, mid, ty, STAR):
            if _decl_search(env, t, mid, pool, depth - 1):
                return True

    match t:
        case TmConst("unit"):
            return alpha_eq(ty, Const("1"))
        case TmVar(x):
            return x in env and alpha_eq(env[x], ty)
        case TmLam(_, _, body):
            head, args = spine(ty)
            if isinstance(head, Const) and head.name == "->":
                x = f"v{depth}&{len(env)}"
                env2 = dict(env)
                env2[x] = args[0]
                return _decl_search(env2, open_tm(body, TmVar(x)), args[1], pool, depth - 1)
            return False
        case TmApp(TmApp(TmConst("pair"), a), b):
            head, args = spine(ty)
            if isinstance(head, Const) and head.name == "*":
                return _decl_search(env, a, args[0], pool, depth - 1) and _decl_search(
                    env, b, args[1], pool, depth - 1
                )
            return False
        case TmApp(TmConst("inl"), a):
            head, args = spine(ty)
            if isinstance(head, Const) and head.name == "+":
                return _decl_search(env, a, args[0], pool, depth - 1)
            return False
        case TmApp(TmConst("in"), a):
            head, args = spine(ty)
            if isinstance(head, Const) and head.name in ("mu", "nu"):
                from fwh.normalize import OrdNF, as_ordnf, normalize, ordnf_constructor

                onf = as_ordnf(args[0])
                if onf is None or (not onf.is_infty and onf.offset == 0):
                    return False
                b = args[0] if onf.is_infty else ordnf_constructor(
                    OrdNF(onf.var, onf.offset - 1)
                )
                unrolled = capp(args[1], capp(head, b, args[1]), *args[2:])
                from fwh.kinding import kind_check

                res = kind_check(ctx, unrolled)
                nf = normalize(ctx, res.constructor, STAR)
                return _decl_search(env, a, nf, pool, depth - 1)
            return False
    return False


def _nf(src):
    _, nf = check_and_normalize(KindContext(), parse_constructor(src))
    return nf


def test_elaboration_faithfulness_on_small_items():
    """Erased forms of checked items are typable by the declarative rules."""
    from fwh.parser import parse_term
    from fwh.terms import erase

    nat_inf = _nf(r"(\i:ord. mu[i] (\X:*. 1 + X)) oo")
    nat_one = _nf(r"(\i:ord. mu[i] (\X:*. 1 + X)) (s oo)")
    pool = [_nf("1"), _nf("1 * 1"), _nf("1 + 1"), nat_inf, nat_one,
            _nf("1 -> 1"), _nf("1 + " + r"(\i:ord. mu[i] (\X:*. 1 + X)) oo")]

    items = [
        (parse_term("<>"), _nf("1")),
        (parse_term(r"\x. x"), _nf("1 -> 1")),
        (parse_term("<<>, <>>"), _nf("1 * 1")),
        (parse_term("inl <>"), _nf("1 + 1")),
        (parse_term("in (inl <>)"), nat_inf),
    ]
    for tm, ty in items:
        assert _decl_search({}, erase(tm), ty, pool, 6), (tm, ty)

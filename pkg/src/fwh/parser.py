"""Lexer and recursive-descent parser for the surface syntax.

Grammar sketch (see README for the full table):

    file   ::= { "type" NAME ":" kind "=" ctor | "def" NAME ":" ctor "=" term }
    kind   ::= katom [("->" | "->+" | "->-" | "->o") kind]
    ctor   ::= "all" NAME ":" kind "." ctor | "\\" NAME ":" kind "." ctor
             | csum ["->" ctor]
    csum   ::= cprod { "+" cprod }          -- left
    cprod  ::= capp { "*" capp }            -- left
    capp   ::= catom { catom | "[" ctor "]" }
    catom  ::= NAME | "1" | "oo" | "mu" | "nu" | "s" | "(" ctor ")"
    term   ::= "\\" NAME [":" ctor] "." term | "/\\" NAME ":" kind "." term
             | "fixmu" NAT "[" ctor "]" tatom | "fixnu" NAT "[" ctor "]" tatom
             | "match" term "with" "{" "inl" NAME "=>" term ";"
                                       "inr" NAME "=>" term "}"
             | tapp
    tapp   ::= tatom { tatom | "[" ctor "]" }
    tatom  ::= NAME | "<>" | "<" term "," term ">" | "(" term [":" ctor] ")"

A "+" immediately followed by digits is the ordinal successor postfix
(`i+1`); binary sums are written with spaces (`A + B`).  Comments run from
`--` to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import (
    App,
    Const,
    Constructor,
    FreshNames,
    Var,
    capp,
    lam,
    succ,
)
from .errors import ParseError
from .kinds import KArrow, Kind, ORD, STAR
from .polarity import MINUS, MIXED, PLUS
from .terms import (
    Anno,
    Fix,
    Term,
    TmApp,
    TmConst,
    TmVar,
    TyApp,
    tmlam,
    tylam,
)

KEYWORDS = {"type", "def", "all", "mu", "nu", "s", "oo", "ord", "with", "match",
            "fixmu", "fixnu", "inl", "inr"}
TERM_CONSTS = {"fst", "snd", "inl", "inr", "case", "in", "out"}

SYMBOLS = ["/\\", "->+", "->-", "->o", "->", "=>", "<>", "(", ")", "[", "]",
           "{", "}", "<", ">", ",", ";", ".", ":", "=", "\\", "*", "+"]


@dataclass(frozen=True)
class Token:
    kind: str  # "name" | "nat" | "succ" | symbol text | "eof"
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        if ch == "+" and i + 1 < n and src[i + 1].isdigit():
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("succ", src[i + 1 : j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("nat", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            toks.append(Token("name", src[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in SYMBOLS:
            if src.startswith(sym, i):
                toks.append(Token(sym, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass(frozen=True)
class TypeDecl:
    name: str
    kind: Kind
    body: Constructor
    line: int
    col: int


@dataclass(frozen=True)
class DefDecl:
    name: str
    type: Constructor
    term: Term
    line: int
    col: int


@dataclass(frozen=True)
class SourceFile:
    decls: tuple


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.pos = 0
        self.names = FreshNames()
        self.ty_scope: dict[str, list[str]] = {}
        self.tm_scope: dict[str, list[str]] = {}

    # plumbing ----------------------------------------------------------

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def at_name(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "name" and t.text == text

    def expect(self, kind: str, what: str = "") -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(
                f"expected {what or kind}, found {t.text or t.kind!r}",
                t.line,
                t.col,
                expected=(kind,),
            )
        return self.next()

    def name(self, what="a name") -> Token:
        return self.expect("name", what)

    def _push(self, scope, name):
        unique = self.names.fresh(name)
        scope.setdefault(name, []).append(unique)
        return unique

    def _pop(self, scope, name):
        scope[name].pop()

    def _resolve(self, scope, name):
        stack = scope.get(name)
        return stack[-1] if stack else name

    # kinds --------------------------------------------------------------

    def kind(self) -> Kind:
        left = self.kind_atom()
        t = self.peek()
        if t.kind in ("->", "->+", "->-", "->o"):
            self.next()
            pol = {"->": PLUS, "->+": PLUS, "->-": MINUS, "->o": MIXED}[t.kind]
            return KArrow(pol, left, self.kind())
        return left

    def kind_atom(self) -> Kind:
        t = self.peek()
        if t.kind == "*":
            self.next()
            return STAR
        if t.kind == "name" and t.text == "ord":
            self.next()
            return ORD
        if t.kind == "(":
            self.next()
            k = self.kind()
            self.expect(")")
            return k
        raise ParseError(f"expected a kind, found {t.text!r}", t.line, t.col,
                         expected=("*", "ord", "("))

    # constructors --------------------------------------------------------

    def _ctor_binder(self, quantified: bool) -> Constructor:
        nm = self.name("a type variable").text
        self.expect(":")
        k = self.kind()
        self.expect(".")
        unique = self._push(self.ty_scope, nm)
        body = self.constructor()
        self._pop(self.ty_scope, nm)
        inner = lam(unique, k, body)
        inner = type(inner)(nm, k, inner.body, inner.pol)  # keep the source hint
        return App(Const("all", k), inner) if quantified else inner

    def constructor(self) -> Constructor:
        t = self.peek()
        if t.kind == "name" and t.text == "all":
            self.next()
            return self._ctor_binder(quantified=True)
        if t.kind == "\\":
            self.next()
            return self._ctor_binder(quantified=False)
        left = self.csum()
        if self.at("->"):
            self.next()
            return capp(Const("->"), left, self.constructor())
        return left

    def csum(self) -> Constructor:
        left = self.cprod()
        while self.at("+"):
            self.next()
            left = capp(Const("+"), left, self.cprod())
        return left

    def cprod(self) -> Constructor:
        left = self.capp_()
        while self.at("*"):
            self.next()
            left = capp(Const("*"), left, self.capp_())
        return left

    def capp_(self) -> Constructor:
        out = self._catom_succ()
        while True:
            t = self.peek()
            if t.kind == "[":
                self.next()
                arg = self.constructor()
                self.expect("]")
                out = App(out, arg)
            elif t.kind in ("name", "(", "nat") and not self._ctor_stop(t):
                out = App(out, self._catom_succ())
            else:
                return out

    def _catom_succ(self) -> Constructor:
        # the successor postfix binds to the atom: `Nat i+2` is Nat (i+2)
        out = self.catom()
        while self.at("succ"):
            t = self.next()
            for _ in range(int(t.text)):
                out = succ(out)
        return out

    _CTOR_STOPPERS = {"all", "with", "type", "def", "ord"}

    def _ctor_stop(self, t: Token) -> bool:
        return t.kind == "name" and t.text in self._CTOR_STOPPERS

    def catom(self) -> Constructor:
        t = self.peek()
        if t.kind == "nat":
            if t.text != "1":
                raise ParseError("the only numeral type is 1", t.line, t.col)
            self.next()
            return Const("1")
        if t.kind == "(":
            self.next()
            c = self.constructor()
            self.expect(")")
            return c
        if t.kind == "name":
            self.next()
            match t.text:
                case "oo":
                    return Const("oo")
                case "mu" | "nu":
                    return Const(t.text)
                case "s":
                    return Const("s")
                case nm:
                    return Var(self._resolve(self.ty_scope, nm))
        raise ParseError(f"expected a type, found {t.text or t.kind!r}", t.line, t.col)

    # terms ---------------------------------------------------------------

    def term(self) -> Term:
        t = self.peek()
        if t.kind == "\\":
            self.next()
            binders = [self.name("a variable").text]
            while self.at("name"):
                binders.append(self.next().text)
            anno = None
            if self.at(":"):
                if len(binders) != 1:
                    tk = self.peek()
                    raise ParseError(
                        "annotated binders take one variable", tk.line, tk.col
                    )
                self.next()
                anno = self.constructor()
            self.expect(".")
            uniques = [self._push(self.tm_scope, b) for b in binders]
            body = self.term()
            for b in reversed(binders):
                self._pop(self.tm_scope, b)
            for pos in range(len(binders) - 1, -1, -1):
                this_anno = anno if pos == 0 else None
                l = tmlam(uniques[pos], this_anno, body)
                body = type(l)(binders[pos], l.anno, l.body)
            return body
        if t.kind == "/\\":
            self.next()
            nm = self.name("a type variable").text
            self.expect(":")
            k = self.kind()
            self.expect(".")
            unique = self._push(self.ty_scope, nm)
            body = self.term()
            self._pop(self.ty_scope, nm)
            l = tylam(unique, k, body)
            return l.__class__(nm, k, l.body)
        return self.term_app()

    def match_(self) -> Term:
        self.next()
        scrut = self.term()
        kw = self.name("with")
        if kw.text != "with":
            raise ParseError("expected 'with'", kw.line, kw.col)
        self.expect("{")
        tag_l = self.name("inl")
        if tag_l.text != "inl":
            raise ParseError("first branch must be inl", tag_l.line, tag_l.col)
        x = self.name("a variable").text
        self.expect("=>")
        ux = self._push(self.tm_scope, x)
        body_l = self.term()
        self._pop(self.tm_scope, x)
        self.expect(";")
        tag_r = self.name("inr")
        if tag_r.text != "inr":
            raise ParseError("second branch must be inr", tag_r.line, tag_r.col)
        y = self.name("a variable").text
        self.expect("=>")
        uy = self._push(self.tm_scope, y)
        body_r = self.term()
        self._pop(self.tm_scope, y)
        self.expect("}")
        bl = tmlam(ux, None, body_l)
        br = tmlam(uy, None, body_r)
        bl = bl.__class__(x, None, bl.body)
        br = br.__class__(y, None, br.body)
        return TmApp(TmApp(TmApp(TmConst("case"), scrut), bl), br)

    def term_app(self) -> Term:
        out = self.term_atom()
        while True:
            t = self.peek()
            if t.kind == "[":
                self.next()
                arg = self.constructor()
                self.expect("]")
                out = TyApp(out, arg)
            elif t.kind in ("(", "<>", "<") or (
                t.kind == "name" and not self._term_stop(t)
            ):
                out = TmApp(out, self.term_atom())
            else:
                return out

    _TERM_STOPPERS = {"type", "def", "with"}

    def _term_stop(self, t: Token) -> bool:
        return t.kind == "name" and t.text in self._TERM_STOPPERS

    def term_atom(self) -> Term:
        t = self.peek()
        if t.kind == "<>":
            self.next()
            return TmConst("unit")
        if t.kind == "<":
            self.next()
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(">")
            return TmApp(TmApp(TmConst("pair"), a), b)
        if t.kind == "(":
            self.next()
            inner = self.term()
            if self.at(":"):
                self.next()
                anno = self.constructor()
                self.expect(")")
                return Anno(inner, anno)
            self.expect(")")
            return inner
        if t.kind == "name":
            if t.text in ("fixmu", "fixnu"):
                self.next()
                n = int(self.expect("nat", "the argument count").text)
                self.expect("[")
                motive = self.constructor()
                self.expect("]")
                func = self.term_atom()
                return Fix(t.text[3:], n, motive, func)
            if t.text == "match":
                return self.match_()
            self.next()
            if t.text in TERM_CONSTS:
                return TmConst(t.text)
            return TmVar(self._resolve(self.tm_scope, t.text))
        raise ParseError(f"expected a term, found {t.text or t.kind!r}", t.line, t.col)

    # declarations ---------------------------------------------------------

    def file(self) -> SourceFile:
        decls = []
        while not self.at("eof"):
            t = self.peek()
            if self.at_name("type"):
                self.next()
                nm = self.name("a type name")
                self.expect(":")
                k = self.kind()
                self.expect("=")
                body = self.constructor()
                decls.append(TypeDecl(nm.text, k, body, t.line, t.col))
            elif self.at_name("def"):
                self.next()
                nm = self.name("a definition name")
                self.expect(":")
                ty = self.constructor()
                self.expect("=")
                tm = self.term()
                decls.append(DefDecl(nm.text, ty, tm, t.line, t.col))
            else:
                raise ParseError(
                    f"expected a declaration, found {t.text or t.kind!r}",
                    t.line,
                    t.col,
                    expected=("type", "def"),
                )
        return SourceFile(tuple(decls))


def parse(src: str) -> SourceFile:
    return Parser(src).file()


def parse_constructor(src: str) -> Constructor:
    p = Parser(src)
    c = p.constructor()
    p.expect("eof")
    return c


def parse_term(src: str) -> Term:
    p = Parser(src)
    t = p.term()
    p.expect("eof")
    return t


def parse_kind(src: str) -> Kind:
    p = Parser(src)
    k = p.kind()
    p.expect("eof")
    return k

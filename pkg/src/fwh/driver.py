"""File-level checking pipeline: name resolution, kinding, typing, diagnostics."""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field

from .constructor import Constructor, KindContext, subst_constructor
from .errors import FwhError
from .kinding import kind_check
from .kinds import Kind, kind_usable_as
from .parser import DefDecl, SourceFile, TypeDecl, parse
from .printer import show_constructor
from .terms import Term, TypingContext, erase, subst_term, subst_ty_in_term
from .typecheck import Checker


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int
    col: int
    judgement: str
    rule: str | None
    message: str

    def render(self) -> str:
        rule = f" [{self.rule}]" if self.rule else ""
        return f"{self.file}:{self.line}:{self.col}: {self.judgement}{rule}: {self.message}"

    def json_obj(self) -> dict:
        return {
            "file": self.file,
            "line": self.line,
            "col": self.col,
            "judgement": self.judgement,
            "rule": self.rule,
            "message": self.message,
        }


@dataclass
class CheckedFile:
    filename: str
    types: dict[str, tuple[Kind, Constructor]] = field(default_factory=dict)
    def_types: dict[str, Constructor] = field(default_factory=dict)
    def_terms: dict[str, Term] = field(default_factory=dict)
    def_order: list[str] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    ok_lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def _cont_trail_message(err) -> str:
    """Flatten an admissibility/continuity failure into a rule trail."""
    from .errors import AdmissibilityError, ContinuityError, NotAdmissible

    parts = [err.message]
    node = err
    if isinstance(node, NotAdmissible):
        node = node.cause
    cont = None
    if isinstance(node, AdmissibilityError):
        cont = node.cont_error
    elif isinstance(node, ContinuityError):
        cont = node
    while isinstance(cont, ContinuityError):
        subject = getattr(cont, "subject", None)
        where = f" at {show_constructor(subject)}" if subject is not None else ""
        attempts = "; ".join(f"{rule}: {reason}" for rule, reason in cont.attempts)
        parts.append(f"{cont.message}{where}" + (f" ({attempts})" if attempts else ""))
        cont = cont.cause
    return " | ".join(parts)


def resolve_types(types: dict[str, tuple[Kind, Constructor]], c: Constructor) -> Constructor:
    for name, (_, body) in types.items():
        c = subst_constructor(body, name, c)
    return c


def resolve_types_in_term(types, t: Term) -> Term:
    for name, (_, body) in types.items():
        t = subst_ty_in_term(body, name, t)
    return t


def check_source(
    src: SourceFile, filename: str, unsafe: bool = False, base: CheckedFile | None = None
) -> CheckedFile:
    """Check a parsed file; later declarations see earlier ones."""
    out = CheckedFile(filename)
    if base is not None:
        out.types.update(base.types)
        out.def_types.update(base.def_types)
        out.def_terms.update(base.def_terms)
        out.def_order.extend(base.def_order)

    for decl in src.decls:
        try:
            if isinstance(decl, TypeDecl):
                _check_type_decl(out, decl)
            else:
                _check_def_decl(out, decl, unsafe)
        except FwhError as e:
            out.diagnostics.append(
                Diagnostic(
                    filename,
                    decl.line,
                    decl.col,
                    e.judgement,
                    e.rule,
                    f"in {decl.name}: {_cont_trail_message(e)}",
                )
            )
            # recovery: trust the declared surface so later entries resolve
            if isinstance(decl, TypeDecl):
                out.types.setdefault(decl.name, (decl.kind, resolve_types(out.types, decl.body)))
            else:
                try:
                    ty = _declared_type(out, decl)
                    out.def_types.setdefault(decl.name, ty)
                    out.def_terms.setdefault(
                        decl.name, resolve_types_in_term(out.types, decl.term)
                    )
                    if decl.name not in out.def_order:
                        out.def_order.append(decl.name)
                except FwhError:
                    pass
    return out


def _check_type_decl(out: CheckedFile, decl: TypeDecl):
    body = resolve_types(out.types, decl.body)
    res = kind_check(KindContext(), body)
    if not kind_usable_as(res.kind, decl.kind):
        from .errors import KindMismatch

        raise KindMismatch(
            f"declared kind {decl.kind} but the body kinds to {res.kind}"
        )
    out.types[decl.name] = (decl.kind, res.constructor)
    out.ok_lines.append(f"type {decl.name} : {decl.kind}")


def _declared_type(out: CheckedFile, decl: DefDecl) -> Constructor:
    gamma = _gamma(out)
    checker = Checker()
    return checker.norm_type(gamma, resolve_types(out.types, decl.type))


def _gamma(out: CheckedFile) -> TypingContext:
    gamma = TypingContext()
    for name in out.def_order:
        gamma = gamma.bind_term(name, out.def_types[name])
    return gamma


def _check_def_decl(out: CheckedFile, decl: DefDecl, unsafe: bool):
    gamma = _gamma(out)
    checker = Checker(unsafe=unsafe)
    ty = checker.norm_type(gamma, resolve_types(out.types, decl.type))
    term = resolve_types_in_term(out.types, decl.term)
    checker.check(gamma, term, ty)
    out.def_types[decl.name] = ty
    out.def_terms[decl.name] = term
    out.def_order.append(decl.name)
    out.ok_lines.append(f"def {decl.name} : {show_constructor(ty)}")


def explain_def(out: CheckedFile, name: str, unsafe: bool = False):
    """Re-check one definition, returning its typing derivation."""
    if name not in out.def_types:
        raise FwhError(f"no definition named {name}")
    gamma = TypingContext()
    for n in out.def_order:
        if n == name:
            break
        gamma = gamma.bind_term(n, out.def_types[n])
    checker = Checker(unsafe=unsafe)
    return checker.check(gamma, out.def_terms[name], out.def_types[name])


def linked_term(out: CheckedFile, name: str) -> Term:
    """The definition with all earlier definitions substituted in."""
    if name not in out.def_terms:
        raise FwhError(f"no definition named {name}")
    resolved: dict[str, Term] = {}
    for n in out.def_order:
        t = out.def_terms[n]
        for m, body in resolved.items():
            t = subst_term(body, m, t)
        resolved[n] = t
        if n == name:
            return t
    return resolved[name]


def erased_main(out: CheckedFile, name: str) -> Term:
    return erase(linked_term(out, name))


def prelude_source() -> str:
    return (
        importlib.resources.files("fwh").joinpath("corpus/prelude.fwh").read_text()
    )


def corpus_path(name: str) -> str:
    return str(importlib.resources.files("fwh").joinpath(f"corpus/{name}"))


def check_file_text(
    text: str, filename: str, unsafe: bool = False, with_prelude: bool = True
) -> CheckedFile:
    base = None
    if with_prelude:
        base = check_source(parse(prelude_source()), "prelude.fwh", unsafe=False)
        # a broken prelude is a packaging bug, surface it loudly
        assert base.ok, [d.render() for d in base.diagnostics]
    return check_source(parse(text), filename, unsafe=unsafe, base=base)

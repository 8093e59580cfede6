"""Constructor normalization: beta, eta-long readback, ordinal collapse.

Normal forms are computed by evaluation into a semantic domain and type
(kind) directed readback.  `s` applied to the infinity ordinal collapses
during application, so equality of constructors is normal-form identity up
to alpha.  Input constructors must be elaborated (see `kinding.kind_check`):
fixed-point and quantifier constants carry their kind instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructor import (
    App,
    Bound,
    Const,
    Constructor,
    FreshNames,
    INFTY,
    KindContext,
    Lam,
    SUCC,
    Var,
    alpha_eq,
    close_c,
    const_kind,
)
from .errors import KindError
from .kinds import KArrow, Kind
from .kinding import kind_check


class Value:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class VLam(Value):
    hint: str
    kind: Kind
    body: Constructor
    env: tuple


@dataclass(frozen=True, slots=True)
class VNe(Value):
    head: Constructor  # Const or Var
    args: tuple

    def is_infty(self):
        return isinstance(self.head, Const) and self.head.name == INFTY and not self.args


def v_apply(f: Value, v: Value) -> Value:
    match f:
        case VLam(_, _, body, env):
            return v_eval(body, (v,) + env)
        case VNe(head, args):
            # s oo = oo: the closure ordinal absorbs successor
            if isinstance(head, Const) and head.name == SUCC and isinstance(v, VNe) and v.is_infty():
                return v
            return VNe(head, args + (v,))
    raise TypeError(f)


def v_eval(c: Constructor, env: tuple) -> Value:
    match c:
        case Bound(i):
            return env[i]
        case Lam(hint, kind, body, _):
            return VLam(hint, kind, body, env)
        case App(f, a):
            return v_apply(v_eval(f, env), v_eval(a, env))
        case _:
            return VNe(c, ())


def _head_kind(head: Constructor, var_kinds: dict[str, Kind]) -> Kind:
    if isinstance(head, Const):
        return const_kind(head)
    if isinstance(head, Var):
        if head.name not in var_kinds:
            raise KindError(f"no kind recorded for free variable {head.name}")
        return var_kinds[head.name]
    raise KindError(f"unexpected neutral head {head!r}")


def readback(v: Value, kind: Kind, var_kinds: dict[str, Kind], names: FreshNames) -> Constructor:
    if isinstance(kind, KArrow):
        hint = v.hint if isinstance(v, VLam) else "X"
        x = names.fresh(hint)
        var_kinds2 = dict(var_kinds)
        var_kinds2[x] = kind.dom
        body = readback(v_apply(v, VNe(Var(x), ())), kind.cod, var_kinds2, names)
        return Lam(hint, kind.dom, close_c(body, x), kind.pol)
    if not isinstance(v, VNe):
        raise KindError(f"abstraction at base kind {kind}")
    k = _head_kind(v.head, var_kinds)
    out: Constructor = v.head
    for a in v.args:
        if not isinstance(k, KArrow):
            raise KindError("over-applied neutral during readback")
        out = App(out, readback(a, k.dom, var_kinds, names))
        k = k.cod
    if k != kind:
        raise KindError(f"readback kind mismatch: {k} vs {kind}")
    return out


def normalize(ctx: KindContext, c: Constructor, kind: Kind) -> Constructor:
    """Beta-normal, eta-long at `kind`, ordinal subexpressions collapsed."""
    var_kinds = {e.name: e.kind for e in ctx}
    from .constructor import free_vars

    names = FreshNames.avoiding(set(var_kinds) | free_vars(c))
    return readback(v_eval(c, ()), kind, var_kinds, names)


def check_and_normalize(ctx: KindContext, c: Constructor) -> tuple[Kind, Constructor]:
    """Kind-check (elaborating) then normalize; the one-stop entry point."""
    res = kind_check(ctx, c)
    return res.kind, normalize(ctx, res.constructor, res.kind)


def constr_equal(ctx: KindContext, f: Constructor, g: Constructor, kind: Kind | None = None) -> bool:
    """Equality in the theory generated by beta, eta and `s oo = oo`."""
    if kind is None:
        kf, nf = check_and_normalize(ctx, f)
        kg, ng = check_and_normalize(ctx, g)
        if kf != kg:
            return False
    else:
        nf = normalize(ctx, kind_check(ctx, f).constructor, kind)
        ng = normalize(ctx, kind_check(ctx, g).constructor, kind)
    return alpha_eq(nf, ng)


@dataclass(frozen=True, slots=True)
class OrdNF:
    """Normal ordinal: infinity, or a variable plus a finite offset."""

    var: str | None  # None means the infinity ordinal
    offset: int = 0

    @property
    def is_infty(self):
        return self.var is None

    def __str__(self):
        if self.var is None:
            return "oo"
        return self.var if self.offset == 0 else f"{self.var}+{self.offset}"


def as_ordnf(c: Constructor) -> OrdNF | None:
    """Read a normalized ord-kinded constructor; None for exotic neutrals."""
    offset = 0
    while True:
        match c:
            case Const(name, _) if name == INFTY:
                return OrdNF(None)
            case Var(n):
                return OrdNF(n, offset)
            case App(Const(name, _), a) if name == SUCC:
                offset += 1
                c = a
            case _:
                return None


def ordnf_constructor(o: OrdNF) -> Constructor:
    c: Constructor = Const(INFTY) if o.var is None else Var(o.var)
    for _ in range(o.offset):
        c = App(Const(SUCC), c)
    return c

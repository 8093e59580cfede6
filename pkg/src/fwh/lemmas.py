"""Randomized checks of the limit laws on finite lattices.

Each suite draws random instances (sequences, monotone tables, binary
operator families, ordinal maps) and asserts the stated inclusion or
equation at the limit omega.  One suite is a known negative: the
coinductive limit-commutation law does not survive dualization to
inductive approximants, and the oracle must be able to exhibit that.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .limits import (
    AffinePhi,
    FinLattice,
    MonoOp,
    OrdSeq,
    fin,
    inf_omega,
    liminf_omega,
    limsup_omega,
    mu_approx,
    nu_approx,
    om,
    random_monotone_op,
    random_monotone_seq,
    random_seq,
    seq_tabulate,
    sup_omega,
    token_liminf,
    token_max,
    token_min,
)

LAT = FinLattice(frozenset("abcd"))
LAT3 = FinLattice(frozenset("abc"))


@dataclass
class SuiteResult:
    lemma: str
    trials: int
    failures: int
    expect_fail: bool
    witness: str = ""

    @property
    def ok(self) -> bool:
        return (self.failures > 0) if self.expect_fail else (self.failures == 0)


@dataclass
class Report:
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        lines = ["limit checks on the finite powerset lattice", ""]
        for r in self.results:
            expect = "must fail" if r.expect_fail else "must hold"
            mark = "ok" if r.ok else "FAIL"
            lines.append(
                f"  {mark:4} {r.lemma:28} trials={r.trials:4} failures={r.failures:4} ({expect})"
            )
            if r.witness and (r.expect_fail or not r.ok):
                lines.append(f"        witness: {r.witness}")
        lines.append("")
        lines.append("all checks passed" if self.ok else "SOME CHECKS FAILED")
        return "\n".join(lines)

    def machine_lines(self) -> list[str]:
        return [
            f"lemma={r.lemma} trials={r.trials} failures={r.failures} "
            f"expect={'fail' if r.expect_fail else 'pass'} status={'ok' if r.ok else 'FAIL'}"
            for r in self.results
        ]


def _fmt(s: frozenset) -> str:
    return "{" + ",".join(sorted(s)) + "}" if s else "{}"


# binary monotone tables (operator families of one lattice argument) ----------


class BinOp:
    """A table L x L -> L, monotone in both arguments (built by completion)."""

    __slots__ = ("lat", "table")

    def __init__(self, lat: FinLattice, table: dict):
        self.lat = lat
        self.table = table

    @staticmethod
    def random(rng, lat: FinLattice) -> "BinOp":
        elems = sorted(lat.elements(), key=lambda s: (len(s), tuple(sorted(s))))
        table: dict = {}
        for g in elems:
            for x in elems:
                lower = lat.bot
                for e in g:
                    lower |= table[(g - {e}, x)]
                for e in x:
                    lower |= table[(g, x - {e})]
                extra = frozenset(e for e in lat.base if rng.random() < 0.22)
                table[(g, x)] = lower | extra
        return BinOp(lat, table)

    def fix_arg(self, g: frozenset) -> MonoOp:
        return MonoOp(self.lat, {x: self.table[(g, x)] for x in self.lat.elements()})

    def join(self, other: "BinOp") -> "BinOp":
        return BinOp(
            self.lat, {k: v | other.table[k] for k, v in self.table.items()}
        )

    def meet(self, other: "BinOp") -> "BinOp":
        return BinOp(
            self.lat, {k: v & other.table[k] for k, v in self.table.items()}
        )


@dataclass(frozen=True)
class Family:
    """An eventually periodic family of operator tables with its omega member."""

    seq: OrdSeq  # of BinOp
    at_omega: BinOp

    @staticmethod
    def random(rng, lat: FinLattice, mode: str) -> "Family":
        if rng.random() < 0.5:
            op = BinOp.random(rng, lat)
            return Family(OrdSeq((), (op,)), op)
        ops = tuple(BinOp.random(rng, lat) for _ in range(rng.randrange(1, 3)))
        limit = ops[0]
        for op in ops[1:]:
            limit = limit.join(op) if mode == "sup" else limit.meet(op)
        return Family(OrdSeq((), ops), limit)


def _random_token(rng, max_fin=3):
    if rng.random() < 0.3:
        return om(rng.randrange(2))
    return fin(rng.randrange(max_fin + 1))


def _random_token_seq(rng) -> OrdSeq:
    plen = rng.randrange(3)
    clen = rng.randrange(1, 4)
    return OrdSeq(
        tuple(_random_token(rng) for _ in range(plen)),
        tuple(_random_token(rng) for _ in range(clen)),
    )


def _random_monotone_token_seq(rng) -> OrdSeq:
    # ascending then constant: a monotone eventually periodic map into tokens
    cur = fin(0)
    plen = rng.randrange(4)
    prefix = []
    for _ in range(plen):
        prefix.append(cur)
        cur = token_max([cur, _random_token(rng)])
    return OrdSeq(tuple(prefix), (cur,))


# suites ----------------------------------------------------------------------


def _suite(report, lemma, trials, rng, body, expect_fail=False):
    failures = 0
    witness = ""
    for _ in range(trials):
        w = body(rng)
        if w is not None:
            failures += 1
            if not witness:
                witness = w
    report.results.append(SuiteResult(lemma, trials, failures, expect_fail, witness))


def _fact1(rng):
    hs = [random_seq(rng, LAT) for _ in range(rng.randrange(1, 4))]
    lhs = LAT.sup(liminf_omega(LAT, h) for h in hs)
    pointwise_sup = hs[0]
    for h in hs[1:]:
        from .limits import seq_zip

        pointwise_sup = seq_zip(pointwise_sup, h, frozenset.union)
    rhs = liminf_omega(LAT, pointwise_sup)
    if not lhs <= rhs:
        return f"sup_i liminf={_fmt(lhs)} vs liminf sup_i={_fmt(rhs)}"
    return None


def _fact2(rng):
    hs = [random_seq(rng, LAT) for _ in range(rng.randrange(1, 4))]
    pointwise_inf = hs[0]
    for h in hs[1:]:
        from .limits import seq_zip

        pointwise_inf = seq_zip(pointwise_inf, h, frozenset.intersection)
    lhs = limsup_omega(LAT, pointwise_inf)
    rhs = LAT.inf(limsup_omega(LAT, h) for h in hs)
    if not lhs <= rhs:
        return f"limsup inf_i={_fmt(lhs)} vs inf_i limsup={_fmt(rhs)}"
    return None


def _fact3(rng):
    index_base = sorted(LAT3.base)
    hs = {i: random_seq(rng, LAT) for i in index_base}
    index_seq = random_seq(rng, LAT3)  # I(alpha) as a set of indices
    plen = max([len(index_seq.prefix)] + [len(h.prefix) for h in hs.values()])
    clen = math.lcm(len(index_seq.cycle), *[len(h.cycle) for h in hs.values()])
    combined = seq_tabulate(
        lambda n: LAT.inf(hs[i].at(n) for i in index_seq.at(n)),
        plen,
        clen,
    )
    lhs = limsup_omega(LAT, combined)
    surviving = liminf_omega(LAT3, index_seq)
    rhs = LAT.inf(limsup_omega(LAT, hs[i]) for i in surviving)
    if not lhs <= rhs:
        return f"dependent-index inclusion: {_fmt(lhs)} vs {_fmt(rhs)}"
    return None


def _limlater(rng):
    f = random_seq(rng, LAT)
    for a0 in range(5):
        stable = len(f.prefix) + len(f.cycle) + a0 + 1
        later_limsup = LAT.inf(
            LAT.sup(f.tail_values(b0)) for b0 in range(a0, stable)
        )
        later_liminf = LAT.sup(
            LAT.inf(f.tail_values(b0)) for b0 in range(a0, stable)
        )
        if later_limsup != limsup_omega(LAT, f):
            return f"limsup from {a0} differs"
        if later_liminf != liminf_omega(LAT, f):
            return f"liminf from {a0} differs"
    return None


def _split1(rng):
    # h(a, b) antitone in a: complement of an ascending chain joined with B(b)
    chain = random_monotone_seq(rng, LAT)
    b = random_seq(rng, LAT)
    plen = max(len(chain.prefix), len(b.prefix))
    clen = math.lcm(len(chain.cycle), len(b.cycle))

    def h(alpha, beta):
        return (LAT.base - chain.at(alpha)) | b.at(beta)

    diag = seq_tabulate(lambda n: h(n, n), plen, clen)
    lhs = limsup_omega(LAT, diag)
    inner = seq_tabulate(
        lambda a: LAT.base - chain.at(a) | limsup_omega(LAT, b), plen, clen
    )
    rhs = limsup_omega(LAT, inner)
    if not lhs <= rhs:
        return f"diagonal {_fmt(lhs)} vs iterated {_fmt(rhs)}"
    return None


def _split2(rng):
    chain = random_monotone_seq(rng, LAT)
    b = random_seq(rng, LAT)
    plen = max(len(chain.prefix), len(b.prefix))
    clen = math.lcm(len(chain.cycle), len(b.cycle))

    def h(alpha, beta):
        return chain.at(alpha) & b.at(beta)

    inner = seq_tabulate(lambda a: chain.at(a) & liminf_omega(LAT, b), plen, clen)
    lhs = liminf_omega(LAT, inner)
    diag = seq_tabulate(lambda n: h(n, n), plen, clen)
    rhs = liminf_omega(LAT, diag)
    if not lhs <= rhs:
        return f"iterated {_fmt(lhs)} vs diagonal {_fmt(rhs)}"
    return None


def _nuinfsup_finite(rng):
    f = random_monotone_op(rng, LAT)
    tokens = [_random_token(rng) for _ in range(rng.randrange(1, 5))]
    values = [nu_approx(f, t) for t in tokens]
    if LAT.sup(values) != nu_approx(f, token_min(tokens)):
        return "sup over the index set differs from the inf exponent"
    if LAT.inf(values) != nu_approx(f, token_max(tokens)):
        return "inf over the index set differs from the sup exponent"
    return None


def _nuinfsup_limit(rng):
    # unattained supremum: an affine exponent ranging over all of omega
    f = random_monotone_op(rng, LAT)
    phi = AffinePhi(1, rng.randrange(3))
    stable = len(LAT.base) + 2
    values = [nu_approx(f, phi.at(n)) for n in range(stable + 3)]
    lhs = LAT.inf(values)
    rhs = nu_approx(f, om(0))
    if lhs != rhs:
        return f"inf over the affine range {_fmt(lhs)} vs omega stage {_fmt(rhs)}"
    return None


def _pushnu_eq(rng):
    f = random_monotone_op(rng, LAT)
    if rng.random() < 0.5:
        phi = _random_token_seq(rng)
        values = phi.map(lambda t: nu_approx(f, t))
        lhs = limsup_omega(LAT, values)
        rhs = nu_approx(f, token_liminf(phi))
    else:
        phi = AffinePhi(rng.randrange(2), rng.randrange(3))
        stable = len(LAT.base) + 2
        window = [nu_approx(f, phi.at(n)) for n in range(stable, stable + 4)]
        lhs = LAT.sup(window)  # eventually constant, so this is the limsup
        rhs = nu_approx(f, phi.liminf())
    if lhs != rhs:
        return f"{_fmt(lhs)} vs {_fmt(rhs)}"
    return None


def _family_values(fam: Family, g_seq: OrdSeq, phi_at, plen, clen):
    def v(n):
        op = fam.seq.at(n).fix_arg(g_seq.at(n))
        return nu_approx(op, phi_at(n))

    return seq_tabulate(v, plen, clen)


def _nucont(rng):
    fam = Family.random(rng, LAT, "sup")
    g = random_seq(rng, LAT)
    affine = rng.random() < 0.5
    if affine:
        phi = AffinePhi(rng.randrange(2), rng.randrange(3))
        phi_at, phi_liminf = phi.at, phi.liminf()
        extra_prefix = len(LAT.base) + 3
        phi_cycle = 1
    else:
        phi = _random_monotone_token_seq(rng)
        phi_at, phi_liminf = phi.at, token_liminf(phi)
        extra_prefix = len(phi.prefix)
        phi_cycle = len(phi.cycle)
    plen = max(len(fam.seq.prefix), len(g.prefix), extra_prefix) + len(LAT.base) + 2
    clen = math.lcm(len(fam.seq.cycle), len(g.cycle), phi_cycle)
    values = seq_tabulate(
        lambda n: nu_approx(fam.seq.at(n).fix_arg(g.at(n)), phi_at(n)), plen, clen
    )
    lhs = limsup_omega(LAT, values)
    rhs_op = fam.at_omega.fix_arg(limsup_omega(LAT, g))
    rhs = nu_approx(rhs_op, phi_liminf)
    if not lhs <= rhs:
        return f"{_fmt(lhs)} not below {_fmt(rhs)}"
    if affine:
        rhs_affine = nu_approx(rhs_op, phi.at_omega())
        if not lhs <= rhs_affine:
            return f"affine clause: {_fmt(lhs)} not below {_fmt(rhs_affine)}"
    return None


def _mucont(rng):
    fam = Family.random(rng, LAT, "inf")
    g = random_seq(rng, LAT)
    lsc = rng.random() < 0.5
    if lsc:
        # lower semi-continuous exponents: the identity or a constant
        phi = AffinePhi(1, 0) if rng.random() < 0.5 else AffinePhi(0, rng.randrange(3))
        phi_at, phi_limit = phi.at, (om(0) if phi.b == 1 else fin(phi.beta))
        extra_prefix, phi_cycle = len(LAT.base) + 3, 1
    else:
        phi = _random_monotone_token_seq(rng)
        phi_at, phi_limit = phi.at, token_liminf(phi)
        extra_prefix, phi_cycle = len(phi.prefix), len(phi.cycle)
    plen = max(len(fam.seq.prefix), len(g.prefix), extra_prefix) + len(LAT.base) + 2
    clen = math.lcm(len(fam.seq.cycle), len(g.cycle), phi_cycle)
    values = seq_tabulate(
        lambda n: mu_approx(fam.seq.at(n).fix_arg(g.at(n)), phi_at(n)), plen, clen
    )
    rhs = liminf_omega(LAT, values)
    lhs_op = fam.at_omega.fix_arg(liminf_omega(LAT, g))
    lhs = mu_approx(lhs_op, phi_limit)
    if not lhs <= rhs:
        return f"{_fmt(lhs)} not below {_fmt(rhs)}"
    return None


def _sandwich(rng):
    f = random_seq(rng, LAT)
    a, b = inf_omega(LAT, f), liminf_omega(LAT, f)
    c, d = limsup_omega(LAT, f), sup_omega(LAT, f)
    if a <= b <= c <= d:
        return None
    return f"{_fmt(a)} {_fmt(b)} {_fmt(c)} {_fmt(d)}"


def _mu_no_push(rng):
    """Would-be inductive analogue of the coinductive limit law; must fail."""
    f = random_monotone_op(rng, LAT)
    phi = _random_token_seq(rng)
    values = phi.map(lambda t: mu_approx(f, t))
    lhs = limsup_omega(LAT, values)
    rhs = mu_approx(f, token_liminf(phi))
    if not lhs <= rhs:
        return f"limsup mu-stages {_fmt(lhs)} escapes mu at liminf {_fmt(rhs)}"
    return None


def frozen_negative_instance() -> str | None:
    """The pinned counterexample: stages oscillating between omega and 1."""
    lat = FinLattice(frozenset("ab"))
    a, ab = frozenset("a"), frozenset("ab")
    table = {frozenset(): a, a: ab, frozenset("b"): ab, ab: ab}
    f = MonoOp(lat, table)
    phi = OrdSeq((), (om(0), fin(1)))
    values = phi.map(lambda t: mu_approx(f, t))
    lhs = limsup_omega(lat, values)  # {a,b}
    rhs = mu_approx(f, token_liminf(phi))  # mu^1 = {a}
    if not lhs <= rhs:
        return f"limsup={_fmt(lhs)} not below {_fmt(rhs)}"
    return None


def run_all(trials: int = 500, seed: int = 2024) -> Report:
    rng = random.Random(seed)
    report = Report()
    _suite(report, "liminf-under-sup", trials, rng, _fact1)
    _suite(report, "limsup-over-inf", trials, rng, _fact2)
    _suite(report, "limsup-dependent-inf", trials, rng, _fact3)
    _suite(report, "limit-starting-later", trials, rng, _limlater)
    _suite(report, "splitting-limsup", trials, rng, _split1)
    _suite(report, "splitting-liminf", trials, rng, _split2)
    _suite(report, "nu-stage-inf-sup", trials, rng, _nuinfsup_finite)
    _suite(report, "nu-stage-unattained-sup", trials, rng, _nuinfsup_limit)
    _suite(report, "limsup-through-nu", trials, rng, _pushnu_eq)
    _suite(report, "nu-preserves-upper", trials, rng, _nucont)
    _suite(report, "mu-preserves-lower", trials, rng, _mucont)
    _suite(report, "sandwich", trials, rng, _sandwich)
    _suite(report, "mu-no-upper-inheritance", trials, rng, _mu_no_push, expect_fail=True)

    frozen = frozen_negative_instance()
    report.results.append(
        SuiteResult(
            "mu-no-upper-frozen",
            1,
            0 if frozen is None else 1,
            expect_fail=True,
            witness=frozen or "",
        )
    )
    return report


# spec-facing alias
def check_section4(trials: int, seed: int) -> Report:
    return run_all(trials=trials, seed=seed)

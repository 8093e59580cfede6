import pytest

from fwh.constructor import alpha_eq, strip_marks
from fwh.errors import UnknownConstant
from fwh.kinds import STAR, karrow
from fwh.parser import parse_constructor
from fwh.polarity import PLUS
from fwh.signature import signature_type


def _same(scheme, surface):
    from fwh.constructor import KindContext
    from fwh.normalize import check_and_normalize

    _, a = check_and_normalize(KindContext(), scheme)
    _, b = check_and_normalize(KindContext(), parse_constructor(surface))
    return alpha_eq(a, b)


def test_fst():
    assert _same(signature_type("fst"), "all A:*. all B:*. A * B -> A")


def test_case():
    assert _same(
        signature_type("case"),
        "all A:*. all B:*. all C:*. A + B -> (A -> C) -> (B -> C) -> C",
    )


def test_in_at_star_mu():
    got = signature_type("in", STAR, "mu")
    want = r"all F:* ->+ *. all i:ord. F (mu[i] F) -> mu[i+1] F"
    assert _same(got, want)


def test_out_at_higher_kind():
    got = signature_type("out", karrow(PLUS, STAR, STAR), "nu")
    want = (
        r"all F:(* ->+ *) ->+ * ->+ *. all G1:*. all i:ord. "
        r"nu[i+1] F G1 -> F (nu[i] F) G1"
    )
    assert _same(got, want)


def test_unknown():
    with pytest.raises(UnknownConstant):
        signature_type("mystery")
    with pytest.raises(UnknownConstant):
        signature_type("in")  # needs the kind instance

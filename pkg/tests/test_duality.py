import pytest

from corpus import verified_codes
from oracles import butterfly_code
from sumnet import catalog
from sumnet.algebra import alphabet_make
from sumnet.codec import LinearCode, verify_linear
from sumnet.duality import DualityError, dual_code, linear_capacity_transfer_check
from sumnet.netgraph import min_cut_bound, reverse_network
from sumnet.schemes import scheme_three_terminal


def test_butterfly_multicast_dualizes_to_sum_code():
    dual = dual_code(catalog.butterfly(), butterfly_code())
    rev = catalog.reverse_butterfly()
    assert verify_linear(rev, dual)
    assert (dual.k, dual.l) == (2, 1)
    # decoders of the new terminal are transposed injections
    assert dual.decoding[("s", "s-a")].tolist() == [[1, 0]]


def test_double_dual_verifies_on_original():
    net = catalog.butterfly()
    back = dual_code(reverse_network(net), dual_code(net, butterfly_code()))
    assert verify_linear(net, back)
    assert back.rate == 2


def test_s3_three_slot_code_dualizes():
    net = catalog.s3()
    dual = dual_code(net, scheme_three_terminal(net, "gf2"))
    assert verify_linear(reverse_network(net), dual)
    assert (dual.k, dual.l) == (2, 3)


def test_unverified_input_rejected():
    net = catalog.butterfly()
    code = butterfly_code()
    broken = LinearCode(2, 1, alphabet_make("gf2"), code.injection, code.transition, {})
    with pytest.raises(DualityError):
        dual_code(net, broken)


def test_transfer_check_reports():
    net = catalog.s3()
    rep = linear_capacity_transfer_check(net, [scheme_three_terminal(net, "gf2")])
    assert rep == [{"network": "s3", "reverse": "reverse-s3", "k": 2, "l": 3,
                    "rate": "2/3", "confirmed": True}]
    one = catalog.one_edge()
    code = LinearCode(1, 1, alphabet_make("gf2"), {("s", "s-t"): [[1]]}, {},
                      {("t", "s-t"): [[1]]})
    assert linear_capacity_transfer_check(one, [code])[0]["confirmed"]
    assert linear_capacity_transfer_check(catalog.butterfly(), [butterfly_code()])[0]["rate"] == "2"


def test_every_corpus_code_dualizes():
    codes = verified_codes()
    assert len(codes) >= 100
    for label, net, code in codes:
        rev = reverse_network(net)
        dual = dual_code(net, code)
        assert verify_linear(rev, dual), label
        assert (dual.k, dual.l) == (code.k, code.l)
        back = dual_code(rev, dual)
        assert verify_linear(net, back) and back == code, label


def test_reverse_keeps_min_cut_bound_on_corpus():
    for label, net, _ in verified_codes():
        assert min_cut_bound(reverse_network(net)) == min_cut_bound(net), label

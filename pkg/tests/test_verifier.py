import pytest
from hypothesis import given, settings, strategies as st

from postpfa import coin, verifier, zoo
from postpfa.engine import run_exact
from postpfa.errors import BadParameter, BudgetExceeded, NotAMember
from postpfa.ratio import ONE, Q
from postpfa.verifier import Certificate, TwoTrackCertificate

X = Q(1, 2)


def test_honest_cert_upower_shape():
    cert = verifier.honest_cert_upower(8)
    assert "".join(cert.prefix) == "0001011$"
    assert cert.tail_symbol == "$"
    assert len(verifier.honest_cert_upower(64).prefix) == 64
    with pytest.raises(NotAMember):
        verifier.honest_cert_upower(6)
    with pytest.raises(NotAMember):
        verifier.honest_cert_upower(1)


def test_honest_cert_usquare_shape():
    cert = verifier.honest_cert_usquare(9)
    assert "".join(cert.prefix) == "aaabbb$"
    with pytest.raises(NotAMember):
        verifier.honest_cert_usquare(8)


def test_upower_completeness():
    machine = verifier.build_upower_verifier(X)
    for n in (2, 4, 8, 16, 32, 64):
        res = verifier.run_verifier_exact(machine, "0" * n,
                                          verifier.honest_cert_upower(n))
        assert res.acceptance == ONE


def test_upower_soundness_is_exactly_x_over_2_plus_x():
    machine = verifier.build_upower_verifier(X)
    best, witness = verifier.soundness_search(machine, "0" * 6, 8)
    assert best == X / (2 + X) == Q(1, 5)
    # the witness certificate actually achieves the maximum
    res = verifier.run_verifier_exact(machine, "0" * 6, witness)
    assert res.acceptance == best


def test_soundness_budget_guard():
    machine = verifier.build_upower_verifier(X)
    with pytest.raises(BudgetExceeded):
        verifier.soundness_search(machine, "0" * 6, 8, budget=10)


def test_all_tail_certificate_equals_empty_prefix():
    machine = verifier.build_upower_verifier(X)
    word = "0" * 5
    res_a = verifier.run_verifier_exact(machine, word, Certificate((), "$"))
    res_b = verifier.run_verifier_exact(machine, word,
                                        Certificate(("$", "$", "$"), "$"))
    assert (res_a.accept_mass, res_a.reject_mass) == \
        (res_b.accept_mass, res_b.reject_mass)


def test_usquare_completeness_and_soundness():
    machine = verifier.build_usquare_verifier(X)
    for n in (4, 9, 25):
        res = verifier.run_verifier_exact(machine, "0" * n,
                                          verifier.honest_cert_usquare(n))
        assert res.acceptance == ONE
    best, _ = verifier.soundness_search(machine, "0" * 6, 8)
    assert best <= X / (1 + X)


def test_upowerk_requires_k_at_least_two():
    with pytest.raises(BadParameter):
        verifier.build_upowerk_verifier(X, 1)


def test_upowerk_counts_blocks_mod_k():
    machine = verifier.build_upowerk_verifier(X, 2)
    res = verifier.run_verifier_exact(machine, "0" * 16,
                                      verifier.honest_cert_upower(16))
    assert res.acceptance == ONE
    res = verifier.run_verifier_exact(machine, "0" * 8,
                                      verifier.honest_cert_upower(8))
    assert res.rejection == 2 / (2 + X)


def test_verifier_from_pfa_ignores_certificate():
    machine = verifier.verifier_from_pfa(zoo.build_equal(Q(1, 4)))
    for cert in (Certificate((), "$"), Certificate(("$", "$"), "$")):
        res = verifier.run_verifier_exact(machine, "010", cert)
        assert res.acceptance == run_exact(zoo.build_equal(Q(1, 4)),
                                           "010").acceptance
    with pytest.raises(ValueError):
        verifier.run_verifier_exact(machine, "010",
                                    Certificate(("0",), "$"))


def test_composite_honest_certificate_tracks_advice_bit():
    word = "0" * 64
    honest = verifier.honest_cert_upower6(1)
    q1 = coin.exact_crossing_success(coin.encode_coin([1]), 1, 1)
    q0 = coin.exact_crossing_success(coin.encode_coin([0]), 1, 0)

    m1 = verifier.build_upower6I_verifier([1], 1)
    res = verifier.run_verifier_exact(m1, word, honest)
    assert res.acceptance == (1 + 4 * q1) / 5

    m0 = verifier.build_upower6I_verifier([0], 1)
    res = verifier.run_verifier_exact(m0, word, honest)
    assert res.rejection == 4 * q0 / 5


def test_composite_rejects_wrong_length():
    machine = verifier.build_upower6I_verifier([1], 1)
    res = verifier.run_verifier_exact(machine, "0" * 60,
                                      verifier.honest_cert_upower6(1))
    # only a sliver of coin-path mass can accept at the wrong length
    assert res.rejection > Q(999, 1000)


def test_composite_precision_must_cover_bits():
    with pytest.raises(BadParameter):
        verifier.build_upower6I_verifier([1, 0], 1)


def test_two_track_pairing():
    two = TwoTrackCertificate(Certificate(("0", "1"), "$"),
                              Certificate(("a",), "$"))
    flat = two.as_certificate()
    assert flat.symbol_at(0) == "0a"
    assert flat.symbol_at(1) == "1$"
    assert flat.symbol_at(5) == "$$"


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01$", max_size=10))
def test_upower_soundness_never_beats_searched_max(prefix):
    machine = verifier.build_upower_verifier(X)
    word = "0" * 6
    cert = Certificate(tuple(prefix), "$")
    res = verifier.run_verifier_exact(machine, word, cert)
    acceptance = res.acceptance if res.defined else Q(0)
    assert acceptance <= Q(1, 5)

"""Languages, concrete deciders, classification, and (p,q) verification."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localdec.core import EPSILON, make_cycle, make_path
from localdec.deciders import (
    always_yes_decider,
    amos_k_decider,
    amos_k_language,
    amos_promise_decider,
    amos_promise_language,
    binary_paths,
    classify_threshold,
    no_two_adjacent_language,
    parse_decider,
    parse_language,
    threshold_margin,
    tree_language,
    verify_pq,
    with_id_permutations,
)
from localdec.engine import exact_all_yes


def test_amos_language_membership():
    lang = amos_k_language(1)
    assert lang.member(make_path(3, "010"))
    assert not lang.member(make_path(3, "101"))
    assert amos_k_language(3).member(make_path(3, "111"))


def test_amos_language_rejects_foreign_symbols():
    with pytest.raises(ValueError):
        amos_k_language(1).member(make_path(2, (EPSILON, "0")))


def test_tree_language():
    lang = tree_language()
    assert lang.member(make_path(9, [EPSILON] * 9))
    assert not lang.member(make_cycle(9, [EPSILON] * 9))
    assert lang.member(make_path(1, [EPSILON]))
    with pytest.raises(ValueError):
        lang.member(make_path(2, "01"))


def test_promise_language():
    lang = amos_promise_language(2, 3)
    two = make_path(5, "01010")
    three = make_path(5, "11010")
    five = make_path(5, "11111")
    assert lang.member(two) and lang.respects_promise(two)
    assert not lang.respects_promise(three)
    assert not lang.member(five) and lang.respects_promise(five)


def test_promise_language_needs_coprime():
    with pytest.raises(ValueError):
        amos_promise_language(2, 4)


def test_no_two_adjacent_language():
    lang = no_two_adjacent_language()
    assert lang.member(make_path(4, "0101"))
    assert not lang.member(make_path(4, "0110"))
    assert not lang.member(make_cycle(4, "1001"))


def test_amos_decider_node_probability():
    d = amos_k_decider(2, 0.64)
    assert d.yes_prob("1") == pytest.approx(0.8, abs=1e-12)
    assert d.yes_prob("0") == 1.0
    assert d.declared_p == 0.64
    assert d.declared_q == pytest.approx(0.488, abs=1e-12)


def test_amos_decider_p_one_is_deterministic():
    d = amos_k_decider(1, 1.0)
    assert d.yes_prob("1") == 1.0
    assert d.declared_q == 0.0


def test_amos_decider_three_selected_no_probability():
    d = amos_k_decider(2, 0.64)
    inst = make_path(7, "1101000")
    assert 1.0 - exact_all_yes(d, inst).value == pytest.approx(0.488, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [0.25, 0.5, 0.64])
def test_product_law_all_counts(k, p):
    d = amos_k_decider(k, p)
    for s in range(0, 11):
        inst = make_path(10, "1" * s + "0" * (10 - s))
        assert exact_all_yes(d, inst).value == pytest.approx(p ** (s / k), abs=1e-12)


def test_promise_decider_examples():
    d = amos_promise_decider(2, 0.5, 3)
    assert exact_all_yes(d, make_path(6, "110000")).value == pytest.approx(0.5, abs=1e-12)
    five = make_path(6, "111110")
    assert exact_all_yes(d, five).value == pytest.approx(0.5**2.5, abs=1e-12)
    assert d.declared_q == pytest.approx(1 - 0.5**2.5, abs=1e-12)
    assert exact_all_yes(d, make_path(6, "000000")).value == 1.0


def test_classify_examples():
    assert classify_threshold(0.9, 0.2).smallest_k == 1
    assert classify_threshold(0.6, 0.5).smallest_k == 3
    assert classify_threshold(0.5, 0.5).smallest_k is None
    assert classify_threshold(1.0, 0.0).smallest_k is None


def test_classify_infinity_band():
    # p + q just above 1 but the finite crossover sits beyond the cap.
    assert classify_threshold(0.5, 0.5 + 1e-9).smallest_k == math.inf


@given(
    p=st.floats(0.05, 0.999),
    q=st.floats(0.0, 1.0),
    dp=st.floats(0.0, 0.3),
    dq=st.floats(0.0, 0.3),
)
@settings(max_examples=150)
def test_classify_monotone(p, q, dp, dq):
    def rank(cls):
        if cls.smallest_k is None:
            return math.inf
        return cls.smallest_k

    better = classify_threshold(min(1.0, p + dp), min(1.0, q + dq))
    assert rank(better) <= rank(classify_threshold(p, q))


def test_threshold_margin():
    assert threshold_margin(0.5, 1 - 0.5**2.5, 2 / 3) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        threshold_margin(0.5, 0.5, 0.0)


def test_verify_pq_amos():
    report = verify_pq(amos_k_decider(2, 0.64), amos_k_language(2), binary_paths(8))
    assert report.exact
    assert report.p_hat == pytest.approx(0.64, abs=1e-9)
    assert report.q_hat == pytest.approx(0.488, abs=1e-9)
    assert report.ok
    assert report.p_witness.ones() == 2
    assert report.q_witness.ones() == 3
    assert classify_threshold(report.p_hat, report.q_hat).smallest_k == 3


def test_verify_pq_always_yes():
    report = verify_pq(always_yes_decider(), amos_k_language(1), binary_paths(4))
    assert report.p_hat == 1.0
    assert report.q_hat == 0.0
    assert report.ok  # declared (1, 0) is met with equality


def test_verify_pq_promise_exclusion():
    lang = amos_promise_language(2, 3)
    decider = amos_promise_decider(2, 0.5, 3)
    report = verify_pq(decider, lang, binary_paths(8))
    assert report.skipped_promise > 0
    assert report.q_hat == pytest.approx(1 - 0.5**2.5, abs=1e-9)
    assert report.q_witness.ones() == 5
    assert report.ok


def test_verify_pq_one_sided_family():
    report = verify_pq(amos_k_decider(1, 0.5), amos_k_language(1), binary_paths(1))
    assert report.non_members == 0 and report.q_hat is None
    assert report.p_hat == 0.5 and report.ok


def _one_round_coin():
    from localdec.deciders import Decider

    return Decider("slow-coin", 1, lambda view, rng: rng.uniform() < 0.9, 0.9, 0.0)


def test_verify_pq_needs_trials_for_general_deciders():
    with pytest.raises(TypeError):
        verify_pq(_one_round_coin(), amos_k_language(1), binary_paths(2))


def test_verify_pq_monte_carlo_mode():
    report = verify_pq(_one_round_coin(), amos_k_language(1), binary_paths(3), trials=4000, master=1)
    assert not report.exact
    assert report.p_hat is not None and report.q_hat is not None


def test_with_id_permutations():
    insts = list(with_id_permutations(binary_paths(2), [(9, 8, 7)]))
    assert any(i.ids == (9, 8) for i in insts)
    report = verify_pq(
        amos_k_decider(1, 0.5),
        amos_k_language(1),
        with_id_permutations(binary_paths(4), [(11, 12, 13, 14)]),
    )
    assert report.p_hat == pytest.approx(0.5, abs=1e-12)  # id-oblivious decider


def test_parse_specs():
    assert parse_decider("amos:k=2,p=0.64").declared_p == 0.64
    assert parse_decider("always-yes").declared_p == 1.0
    assert parse_decider("coin:p=0.9").yes_prob(EPSILON) == 0.9
    assert parse_decider("amos-promise:a=2,b=3,p=0.5").declared_q == pytest.approx(1 - 0.5**2.5)
    assert parse_language("tree").name == "tree"
    assert parse_language("amos:k=1").member(make_path(2, "01"))
    assert parse_language("no-two-adjacent").name == "no-two-adjacent"
    with pytest.raises(ValueError):
        parse_decider("nonsense:k=2")
    with pytest.raises(ValueError):
        parse_decider("amos:k")


def test_binary_paths_exhaustive_count():
    assert sum(1 for _ in binary_paths(8)) == sum(2**n for n in range(1, 9))

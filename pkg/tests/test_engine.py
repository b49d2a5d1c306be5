"""Execution determinism, exact products, estimation, and union bounds."""

from __future__ import annotations

from fractions import Fraction

import pytest
from statsmodels.stats.proportion import proportion_confint

from localdec.core import Subpath, make_path
from localdec.deciders import (
    Decider,
    always_yes_decider,
    amos_k_decider,
    coin_decider,
)
from localdec.engine import (
    ProbabilityReport,
    TrialSeed,
    estimate_all_yes,
    exact_all_yes,
    run,
    union_bound_check,
    wilson_interval,
)


def window_coin_decider(rounds=1, p_clear=0.9, p_marked=0.3):
    """t-round randomized decider: yes-probability drops when a selected
    node is visible."""

    def node_algorithm(view, rng):
        p = p_marked if "1" in view.inputs else p_clear
        return rng.uniform() < p

    return Decider("window-coin", rounds, node_algorithm, p_clear, 0.0)


def test_always_yes_accepts_everything():
    inst = make_path(6, "110101")
    out = run(always_yes_decider(), inst, TrialSeed(0))
    assert out.accepted and out.outputs == (True,) * 6


def test_amos_decider_all_yes_without_selected():
    inst = make_path(5, "00000")
    out = run(amos_k_decider(2, 0.64), inst, TrialSeed(123, 4))
    assert out.accepted


def test_run_is_deterministic():
    inst = make_path(8, "01010101")
    d = amos_k_decider(1, 0.5)
    seed = TrialSeed(99, 3)
    assert run(d, inst, seed) == run(d, inst, seed)
    assert run(d, inst, 7) == run(d, inst, TrialSeed(7))


def test_exact_product_law_examples():
    d = amos_k_decider(2, 0.64)
    two = make_path(6, "010100")
    three = make_path(6, "110100")
    none = make_path(6, "000000")
    assert exact_all_yes(d, two).value == pytest.approx(0.64, abs=1e-12)
    assert exact_all_yes(d, three).value == pytest.approx(0.512, abs=1e-12)
    assert exact_all_yes(d, none).value == 1.0


def test_exact_needs_independent_coins():
    with pytest.raises(TypeError):
        exact_all_yes(window_coin_decider(), make_path(3, "000"))


def test_exact_rational_mode():
    d = amos_k_decider(1, 0.25)
    inst = make_path(4, "0110")
    rep = exact_all_yes(d, inst, rational=True)
    assert rep.exact_fraction == Fraction(1, 16)
    assert rep.value == 0.0625


def test_exact_over_subpath_only():
    d = amos_k_decider(1, 0.5)
    inst = make_path(6, "100001")
    assert exact_all_yes(d, inst, Subpath(2, 5)).value == 1.0
    assert exact_all_yes(d, inst, (1, 2)).value == 0.5


def test_estimate_three_nodes_converges():
    rep = estimate_all_yes(coin_decider(0.9), make_path(3, "000"), trials=100_000, master=7)
    assert rep.kind == "estimated"
    assert abs(rep.value - 0.729) <= 0.005
    assert rep.ci_low <= 0.729 <= rep.ci_high


def test_estimate_always_yes_degenerate_top():
    rep = estimate_all_yes(always_yes_decider(), make_path(4, "1111"), trials=2000, master=0)
    assert rep.value == 1.0
    assert rep.ci_high == 1.0
    lo, hi = proportion_confint(2000, 2000, alpha=0.01, method="wilson")
    assert rep.ci_low == pytest.approx(lo, abs=1e-12)


def test_estimate_matches_exact_oracle_single_selected():
    d = amos_k_decider(1, 0.5)
    inst = make_path(5, "00100")
    exact = exact_all_yes(d, inst).value
    rep = estimate_all_yes(d, inst, trials=100_000, master=11)
    assert exact == 0.5
    assert abs(rep.value - exact) <= 0.005


def test_estimate_rejects_zero_trials():
    with pytest.raises(ValueError):
        estimate_all_yes(always_yes_decider(), make_path(2, "00"), trials=0)


def test_estimate_worker_count_is_invisible():
    d = amos_k_decider(2, 0.3)
    inst = make_path(9, "110010011")
    one = estimate_all_yes(d, inst, trials=70_000, master=5, workers=1)
    four = estimate_all_yes(d, inst, trials=70_000, master=5, workers=4)
    assert one == four


def test_generic_and_kernel_paths_agree():
    # The same zero-round decider, once through the kernel and once through
    # the generic per-node loop with yes_prob stripped.
    d = amos_k_decider(2, 0.64)
    stripped = Decider(d.name, 0, d.node_algorithm, d.declared_p, d.declared_q, None)
    inst = make_path(7, "0110010")
    fast = estimate_all_yes(d, inst, trials=4000, master=3)
    slow = estimate_all_yes(stripped, inst, trials=4000, master=3)
    assert fast.value == slow.value


def test_wilson_against_statsmodels():
    for successes, trials in [(0, 50), (1, 17), (729, 1000), (4999, 5000), (50, 50)]:
        lo, hi = wilson_interval(successes, trials)
        ref_lo, ref_hi = proportion_confint(successes, trials, alpha=0.01, method="wilson")
        assert lo == pytest.approx(max(0.0, ref_lo), abs=1e-12)
        assert hi == pytest.approx(min(1.0, ref_hi), abs=1e-12)


def test_exact_value_usually_inside_ci():
    d = coin_decider(0.9)
    inst = make_path(3, "000")
    truth = 0.9**3
    hits = sum(
        1
        for rep in (
            estimate_all_yes(d, inst, trials=20_000, master=m) for m in range(25)
        )
        if rep.ci_low <= truth <= rep.ci_high
    )
    assert hits >= 23


def test_independence_across_separator():
    d = window_coin_decider(rounds=1)
    inst = make_path(12, "000001000000")
    left, right = Subpath(1, 3), Subpath(9, 12)
    joint = estimate_all_yes(d, inst, tuple(left.nodes()) + tuple(right.nodes()), trials=100_000, master=2)
    p_left = estimate_all_yes(d, inst, left, trials=100_000, master=3)
    p_right = estimate_all_yes(d, inst, right, trials=100_000, master=4)
    assert abs(joint.value - p_left.value * p_right.value) <= 0.01


def test_locality_paired_seed():
    d = window_coin_decider(rounds=1)
    a = make_path(8, "00000000")
    b = make_path(8, "00000111")  # agrees with a on the radius-1 ball of nodes 1..3
    seed = TrialSeed(31, 9)
    out_a = run(d, a, seed)
    out_b = run(d, b, seed)
    assert out_a.outputs[:3] == out_b.outputs[:3]


def test_zero_round_locality_is_exact():
    d = amos_k_decider(1, 0.5)
    a = make_path(6, "010000")
    b = make_path(6, "010011")
    u = Subpath(1, 3)
    assert exact_all_yes(d, a, u).value == exact_all_yes(d, b, u).value


def exact_report(value, nodes):
    return ProbabilityReport("exact", value, event_nodes=nodes)


def test_union_bound_two_halves_and_secure_middle():
    reports = [
        exact_report(0.9, Subpath(1, 10)),
        exact_report(0.95, Subpath(11, 13)),
        exact_report(0.9, Subpath(14, 23)),
    ]
    diag = union_bound_check(reports, t=1, n=23)
    assert diag.bound == pytest.approx(1 - 0.81 + 0.05, abs=1e-12)
    assert diag.multiplied == (0, 2) and diag.added == (1,)


def test_union_bound_single_block():
    diag = union_bound_check([exact_report(0.7, Subpath(1, 5))], t=0, n=5)
    assert diag.bound == pytest.approx(0.3, abs=1e-12)


def test_union_bound_certain_blocks():
    reports = [exact_report(1.0, Subpath(1, 2)), exact_report(1.0, Subpath(3, 4))]
    diag = union_bound_check(reports, t=0, n=4)
    assert diag.bound == 0.0


def test_union_bound_overlap_rejected():
    reports = [exact_report(0.9, Subpath(1, 5)), exact_report(0.9, Subpath(5, 8))]
    with pytest.raises(ValueError):
        union_bound_check(reports)


def test_union_bound_respects_measurement():
    reports = [exact_report(0.8, Subpath(1, 2)), exact_report(0.9, Subpath(3, 4))]
    full = exact_report(0.72, Subpath(1, 4))
    diag = union_bound_check(reports, t=0, n=4, full=full)
    assert diag.measured_no == pytest.approx(0.28, abs=1e-12)
    assert diag.respected is True


def test_probability_report_validation():
    with pytest.raises(ValueError):
        ProbabilityReport("exact", 0.5, trials=10)
    with pytest.raises(ValueError):
        ProbabilityReport("estimated", 0.5)
    with pytest.raises(ValueError):
        ProbabilityReport("estimated", 0.5, trials=10, ci_low=0.6, ci_high=0.9)

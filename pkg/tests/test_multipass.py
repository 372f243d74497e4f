import math

import pytest

from substream.baselines import brute_force_opt
from substream.core import Trace
from substream.errors import ValidationError
from substream.monotone import dispatch_alpha, dispatch_monotone
from substream.multipass import boost_ratio, multipass_linear, qs_br, qs_mpl
from substream.oracle import coverage_oracle, maxcut_oracle, modular_oracle
from substream.synth import er_graph, random_modular_weights, triangle_noise_graph


def test_boost_hand_trace_takes_top_element_at_pass_14():
    oracle = modular_oracle([5.0, 1.0, 1.0, 1.0, 1.0])
    gamma = dispatch_monotone(oracle, 1, 1, 0.1, range(5)).value
    assert gamma == 5.0
    trace = Trace()
    sol = boost_ratio(oracle, 1, 0.25, gamma, 0.1, list(range(5)), trace=trace)
    assert sol.elements == (0,)
    assert sol.value == 5.0
    # tau = 20 * 0.9^p first dips to <= 5 at pass 14
    assert sol.metrics.passes == 14
    assert trace.early_exit
    trace.validate_tau(0.1)


def test_boost_pass_bound_alpha_quarter():
    # ceil(ln(8 / (1/4)) / 0.1) = 35
    assert math.ceil(math.log(8.0 / 0.25) / 0.1) == 35
    oracle = modular_oracle([0.0] * 5 + [1.0])
    sol = boost_ratio(oracle, 2, 0.25, 1.0, 0.1, list(range(6)))
    assert sol.metrics.passes <= 35


def test_boost_validation_errors():
    oracle = modular_oracle([1.0])
    with pytest.raises(ValidationError):
        boost_ratio(oracle, 1, 0.25, 0.0, 0.1, [0])
    with pytest.raises(ValidationError):
        boost_ratio(oracle, 1, 0.25, 1.0, 0.6, [0])
    with pytest.raises(ValidationError):
        boost_ratio(oracle, 1, 0.25, 1.0, 0.0, [0])
    with pytest.raises(ValidationError):
        multipass_linear(oracle, 1, 0.7, 1.0, 0.25, [0])


def test_boost_only_grows_and_acceptances_clear_tau():
    oracle = coverage_oracle(er_graph(14, 0.3, 5))
    trace = Trace()
    sol = boost_ratio(oracle, 4, 0.2, 3.0, 0.2, list(range(14)), trace=trace)
    trace.validate_tau(0.2)
    assert len(trace.accept_log) == len(sol.elements)
    assert all(gain >= tau for gain, tau in trace.accept_log)


def test_multipass_acceptances_clear_tau():
    oracle = maxcut_oracle(triangle_noise_graph(15, 3))
    trace = Trace()
    multipass_linear(oracle, 3, 0.2, 2.0, 0.4, list(range(15)), trace=trace)
    trace.validate_tau(0.2)
    assert trace.accept_log
    assert all(gain >= tau for gain, tau in trace.accept_log)


def test_boost_lazy_matches_faithful():
    for trial in range(20):
        weights = random_modular_weights(15, trial)
        plain_o = modular_oracle(weights)
        lazy_o = modular_oracle(weights)
        plain = boost_ratio(plain_o, 3, 0.25, max(weights), 0.1, list(range(15)))
        lazy = boost_ratio(lazy_o, 3, 0.25, max(weights), 0.1, list(range(15)), lazy=True)
        assert plain.elements == lazy.elements
        assert plain.value == lazy.value
        assert lazy_o.query_count <= plain_o.query_count


def test_multipass_linear_k1_modular_takes_global_max():
    weights = [2.0, 9.0, 4.0]
    oracle = modular_oracle(weights)
    sol = multipass_linear(oracle, 1, 0.25, 5.0, 0.5, [0, 1, 2])
    assert sol.elements == (1,)
    assert sol.value == 9.0


def test_multipass_linear_sets_disjoint_and_capped():
    oracle = maxcut_oracle(triangle_noise_graph(15, 9))
    gamma = 1.0
    sol = multipass_linear(oracle, 3, 0.2, gamma, 0.5, list(range(15)))
    assert len(sol.elements) <= 3
    assert len(set(sol.elements)) == len(sol.elements)


def test_multipass_linear_early_exit_when_both_fill():
    # every element has the same big gain, so both sets fill in pass one
    oracle = modular_oracle([5.0] * 8)
    trace = Trace()
    sol = multipass_linear(oracle, 2, 0.25, 10.0, 1.0, list(range(8)), trace=trace)
    assert sol.metrics.passes == 1
    assert trace.early_exit
    assert sol.value == 10.0


def test_multipass_lazy_matches_faithful():
    for trial in range(15):
        g = triangle_noise_graph(12, 40 + trial)
        plain_o = maxcut_oracle(g)
        lazy_o = maxcut_oracle(g)
        plain = multipass_linear(plain_o, 3, 0.2, 2.0, 0.4, list(range(12)))
        lazy = multipass_linear(lazy_o, 3, 0.2, 2.0, 0.4, list(range(12)), lazy=True)
        assert plain.elements == lazy.elements
        assert lazy_o.query_count <= plain_o.query_count


def test_qs_br_ratio_and_pass_cap_on_brute_forceable():
    eps = 0.1
    target = 1.0 - 1.0 / math.e - eps
    for trial in range(25):
        k = 2 + trial % 3
        oracle = coverage_oracle(er_graph(12, 0.35, 200 + trial))
        sol = qs_br(oracle.fresh(), k, 1, eps, list(range(12)))
        opt = brute_force_opt(oracle.fresh(), k).value
        assert sol.value >= target * opt - 1e-9
        cap = math.ceil(math.log(8.0 / dispatch_alpha(k, 1, eps)) / eps)
        assert sol.metrics.passes - 1 <= cap


def test_qs_br_composite_query_budget():
    eps = 0.1
    for trial in range(10):
        n, k, c = 40 + trial, 3, 1
        oracle = modular_oracle(random_modular_weights(n, 900 + trial))
        sol = qs_br(oracle, k, c, eps, list(range(n)))
        alpha = dispatch_alpha(k, c, eps)
        cap = (math.ceil(n / c) + c) + n * math.log(8.0 / alpha) / eps + 1
        assert sol.metrics.queries <= cap
        assert oracle.query_count == sol.metrics.queries


def test_qs_br_never_below_seed():
    for trial in range(15):
        weights = random_modular_weights(14, 300 + trial)
        seed_sol = dispatch_monotone(modular_oracle(weights), 3, 1, 0.1, range(14))
        seed_val = seed_sol.ensure_value(modular_oracle(weights))
        boosted = qs_br(modular_oracle(weights), 3, 1, 0.1, list(range(14)))
        assert boosted.value >= seed_val - 1e-12


def test_qs_br_zero_objective_short_circuits():
    oracle = modular_oracle([0.0] * 6)
    sol = qs_br(oracle, 2, 1, 0.1, list(range(6)))
    assert sol.value == 0.0


def test_qs_mpl_ratio_on_brute_forceable_maxcut():
    eps = 0.1
    for trial in range(15):
        oracle = maxcut_oracle(triangle_noise_graph(12, 500 + trial))
        sol = qs_mpl(oracle.fresh(), 4, eps, 1.49, list(range(oracle.n)))
        opt = brute_force_opt(oracle.fresh(), 4).value
        assert opt <= (4.0 + 6.0 * eps) * sol.value + 1e-9


def test_qs_mpl_never_below_seed():
    from substream.nonmonotone import NmConfig, quickstream_nm

    for trial in range(10):
        g = triangle_noise_graph(13, 700 + trial)
        seed_sol = quickstream_nm(maxcut_oracle(g), NmConfig(k=3, b=1.49, eps=0.1), range(13))
        full = qs_mpl(maxcut_oracle(g), 3, 0.1, 1.49, list(range(13)))
        assert full.value >= seed_sol.value - 1e-12

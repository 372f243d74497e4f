import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substream.baselines import brute_force_opt
from substream.core import Trace, buffer_log_factor
from substream.errors import ValidationError
from substream.monotone import (
    QsConfig,
    _TopBlockTracker,
    dispatch_alpha,
    dispatch_monotone,
    partition_best,
    qs_small,
    quickstream_c,
    quickstream_largek,
    quickstream_pp,
)
from substream.oracle import coverage_oracle, modular_oracle
from substream.rng import SplitMix64
from substream.synth import er_graph, geometric_modular_weights, random_modular_weights


def test_config_ell_formula_and_clamp():
    assert QsConfig(k=2, c=1, eps=0.1).ell == 4
    assert QsConfig(k=2, c=1, eps=0.25).ell == 2
    assert QsConfig(k=2, c=1, eps=0.9).ell == 2  # clamped


def test_quickstream_hand_trace_unit_weights():
    oracle = modular_oracle([1.0, 1.0, 1.0, 1.0])
    sol = quickstream_c(oracle, QsConfig(k=2, c=1, eps=0.1), range(4))
    # accepts the first three elements, rejects the fourth, keeps the last two
    assert sol.elements == (1, 2)
    assert sol.value == 2.0
    assert oracle.query_count == 5  # n stream queries + 1 terminal


def test_quickstream_query_budget_c1():
    n = 57
    oracle = modular_oracle(random_modular_weights(n, 5))
    quickstream_c(oracle, QsConfig(k=3, c=1, eps=0.1), range(n))
    assert oracle.query_count <= n + 1


def test_quickstream_rejects_zero_gain_after_positive_start():
    oracle = modular_oracle([2.0] + [0.0] * 9)
    sol = quickstream_c(oracle, QsConfig(k=2, c=1, eps=0.1), range(10))
    assert sol.value == 2.0
    assert sol.elements == (0,)


def test_quickstream_k1_rejected():
    with pytest.raises(ValidationError):
        quickstream_c(modular_oracle([1.0]), QsConfig(k=1), [0])


def test_quickstream_empty_stream():
    oracle = modular_oracle([1.0])
    sol = quickstream_c(oracle, QsConfig(k=2), [])
    assert sol.elements == () and sol.value == 0.0
    assert oracle.query_count == 0


def test_quickstream_deletion_fires_and_invariants_hold():
    weights = geometric_modular_weights(60, 2.0, 7)
    oracle = modular_oracle(weights)
    config = QsConfig(k=2, c=1, eps=0.3)
    trace = Trace()
    quickstream_c(oracle, config, range(60), trace)
    assert any(ev.deleted for ev in trace.events)
    trace.validate()
    bound = 2 * config.ell * 3 * buffer_log_factor(2)
    assert all(ev.size_after <= bound for ev in trace.events)


def test_quickstream_peak_memory_bound():
    for c in (1, 2, 3):
        config = QsConfig(k=2, c=c, eps=0.3)
        oracle = modular_oracle(geometric_modular_weights(80, 2.0, 11))
        sol = quickstream_c(oracle, config, range(80))
        bound = 2 * c * config.ell * 3 * buffer_log_factor(2) + c
        assert sol.metrics.peak_elements <= bound


def test_maintained_value_nondecreasing_even_with_deletions():
    oracle = modular_oracle(geometric_modular_weights(60, 2.5, 3))
    trace = Trace()
    quickstream_c(oracle, QsConfig(k=2, c=1, eps=0.3), range(60), trace)
    values = [ev.value_after for ev in trace.events]
    assert values == sorted(values)


def test_qs_small_hand_trace():
    oracle = modular_oracle([3.0, 1.0, 5.0, 2.0])
    sol = qs_small(oracle, 1, 2, range(4))
    assert sol.elements == (2,)
    assert sol.value == 5.0
    assert oracle.query_count == 4  # 2 block + 2 singleton queries


def test_qs_small_c1_is_exact_argmax():
    gen = SplitMix64(19)
    for trial in range(50):
        weights = random_modular_weights(12, trial)
        oracle = modular_oracle(weights)
        sol = qs_small(oracle, 1, 1, range(12))
        assert sol.value == max(weights)
        assert oracle.query_count == 12  # singleton re-query skipped at c=1


def test_qs_small_ratio_one_over_c():
    for trial in range(60):
        g = er_graph(10, 0.4, trial)
        oracle = coverage_oracle(g)
        opt = brute_force_opt(oracle.fresh(), 1).value
        for c in (1, 2, 3):
            sol = qs_small(oracle.fresh(), 1, c, range(10))
            assert sol.value * c >= opt


def test_qs_small_empty_stream():
    sol = qs_small(modular_oracle([1.0]), 1, 2, [])
    assert sol.elements == () and sol.value == 0.0


def test_largek_exact_query_count():
    import warnings

    for n, c in ((10, 1), (10, 2), (11, 2), (37, 5)):
        oracle = modular_oracle(random_modular_weights(n, n + c))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            quickstream_largek(oracle, 3, c, range(n))
        assert oracle.query_count == math.ceil(n / c)


def test_largek_warns_outside_regime():
    with pytest.warns(RuntimeWarning):
        quickstream_largek(modular_oracle([1.0] * 4), 2, 1, range(4))


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_largek_same_threshold_as_quickstream_at_c1_different_return():
    # identical acceptance behavior at c=1; the return set is the last k
    # elements with no terminal partition query
    weights = [1.0, 1.0, 1.0, 1.0]
    plain = modular_oracle(weights)
    quickstream_c(plain, QsConfig(k=2, c=1, eps=0.1), range(4))
    large = modular_oracle(weights)
    sol = quickstream_largek(large, 2, 1, range(4))
    assert plain.query_count == 5
    assert large.query_count == 4
    assert sol.elements == (1, 2)
    assert sol.value is None  # buffer outgrew k, value never queried
    assert sol.ensure_value(large) == 2.0
    assert large.query_count == 5


def test_largek_value_recorded_when_buffer_small():
    oracle = modular_oracle([1.0, 0.0, 0.0, 0.0])
    sol = quickstream_largek(oracle, 8, 1, range(4))
    assert sol.value is not None
    assert sol.value == oracle.fresh().evaluate(sol.elements)


def test_largek_ratio_on_brute_forceable_instances():
    # derived check at c=1: value >= (1/(2+c)) * (1 - 1/e - 2c/(k e)) * OPT
    c = 1
    for trial in range(40):
        k = 3 + trial % 2
        g = er_graph(12, 0.35, 100 + trial)
        oracle = coverage_oracle(g)
        sol = quickstream_largek(oracle.fresh(), k, c, range(12))
        value = sol.ensure_value(oracle.fresh())
        opt = brute_force_opt(oracle.fresh(), k).value
        bound = (1.0 / (2 + c)) * (1.0 - 1.0 / math.e - 2.0 * c / (k * math.e))
        assert value >= bound * opt - 1e-9


def test_dispatch_branches():
    o = modular_oracle([1.0] * 6)
    assert dispatch_monotone(o.fresh(), 1, 1, 0.1, range(6)).label == "qs_small"
    assert dispatch_monotone(o.fresh(), 2, 1, 0.1, range(6)).label == "quickstream"
    assert dispatch_monotone(o.fresh(), 3, 1, 0.1, range(6)).label == "quickstream_largek"
    # larger c widens the middle branch: 8*3/e ~ 8.83
    assert dispatch_monotone(o.fresh(), 5, 3, 0.1, range(6)).label == "quickstream"


def test_dispatch_alpha_positive_and_branch_consistent():
    for k, c in ((1, 1), (1, 3), (2, 1), (5, 3), (10, 1), (50, 2)):
        a = dispatch_alpha(k, c, 0.1)
        assert 0 < a <= 1
    assert dispatch_alpha(1, 2, 0.1) == 0.5


def test_partition_best_examples():
    oracle = modular_oracle([5.0, 1.0, 4.0, 2.0])
    sol = partition_best(oracle, [0, 1, 2, 3], 2, 2)
    assert sol.elements == (0, 1)
    assert sol.value == 6.0
    assert oracle.query_count == 2
    single = partition_best(oracle.fresh(), [1, 2], 4, 1)
    assert single.elements == (1, 2)


def test_partition_best_validates_size():
    with pytest.raises(ValidationError):
        partition_best(modular_oracle([1.0] * 9), range(9), 2, 2)


@given(st.lists(st.floats(min_value=0, max_value=100), min_size=1, max_size=12), st.integers(1, 4))
@settings(max_examples=60)
def test_partition_best_pigeonhole_modular(weights, k):
    c = math.ceil(len(weights) / k)
    oracle = modular_oracle(weights)
    sol = partition_best(oracle, range(len(weights)), k, c)
    assert sol.value >= sum(weights) / c - 1e-9


def test_pp_beats_plain_when_capacity_goes_unused():
    # the steep threshold after the weight-100 element rejects every
    # weight-1 element, so plain returns a singleton; the tracker fills the
    # spare slot
    weights = [100.0] + [1.0] * 20
    config = QsConfig(k=2, c=1, eps=0.1)
    plain = quickstream_c(modular_oracle(weights), config, range(21))
    pp = quickstream_pp(modular_oracle(weights), config, range(21))
    assert plain.elements == (0,) and plain.value == 100.0
    assert pp.value == 101.0
    assert set(pp.elements) == {0, 1}


def test_pp_never_worse_and_query_budget():
    for trial in range(30):
        n = 20 + trial
        weights = random_modular_weights(n, trial * 3 + 1)
        config = QsConfig(k=3, c=2, eps=0.2)
        plain_oracle = modular_oracle(weights)
        plain = quickstream_c(plain_oracle, config, range(n))
        pp_oracle = modular_oracle(weights)
        pp = quickstream_pp(pp_oracle, config, range(n))
        assert pp.value >= plain.value
        assert pp_oracle.query_count <= math.ceil(n / 2) + 2 * 2


def test_tracker_comparisons_logarithmic():
    for k in (2, 3, 8, 17):
        tracker = _TopBlockTracker(k)
        gen = SplitMix64(k)
        for i in range(200):
            tracker.offer(gen.next_float(), i, (i,))
        cap = math.ceil(math.log2(k + 1))
        assert max(tracker.comparisons) <= cap


def test_tracker_keeps_earliest_on_ties():
    tracker = _TopBlockTracker(2)
    tracker.offer(1.0, 0, (0,))
    tracker.offer(1.0, 1, (1,))
    tracker.offer(1.0, 2, (2,))
    assert tracker.blocks_in_stream_order() == [(0,), (1,)]


def test_ratio_quickstream_on_coverage_and_modular():
    for trial in range(60):
        k = 2 + trial % 3
        if trial % 2 == 0:
            oracle = coverage_oracle(er_graph(11, 0.35, trial))
        else:
            oracle = modular_oracle(random_modular_weights(11, trial))
        sol = quickstream_c(oracle.fresh(), QsConfig(k=k, c=1, eps=0.1), range(11))
        opt = brute_force_opt(oracle.fresh(), k).value
        assert sol.value >= (0.25 - 0.1) * opt - 1e-9

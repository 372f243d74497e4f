import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substream.errors import ValidationError
from substream.harness import (
    ExperimentConfig,
    ResultRecord,
    clear_caches,
    lower_bound_experiment,
    parse_config_file,
    read_csv,
    run_experiment,
    stream_order,
    sweep,
    write_csv,
)

@pytest.fixture(autouse=True)
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("0 1\n1 2\n2 3\n")
    return str(p)


def test_stream_order_file_is_identity():
    assert stream_order(5, "file", 99) == [0, 1, 2, 3, 4]


def test_stream_order_shuffle_deterministic_golden():
    a = stream_order(3, "shuffle", 0)
    assert a == stream_order(3, "shuffle", 0)
    # frozen output of the documented generator at n=3, seed=0
    assert a == [2, 0, 1]


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=0, max_value=2**62))
@settings(max_examples=40)
def test_stream_order_is_permutation(n, seed):
    out = stream_order(n, "shuffle", seed)
    assert sorted(out) == list(range(n))


def test_stream_order_bad_mode():
    with pytest.raises(ValidationError):
        stream_order(3, "sideways", 0)


def test_run_experiment_quickstream_path(path_file):
    cfg = ExperimentConfig(graph=path_file, objective="coverage", algo="quickstream", k=2, c=1)
    records, greedy_record = run_experiment(cfg)
    assert len(records) == 1
    rec = records[0]
    assert rec.queries == 4 + 1  # n + 1 at c=1
    assert rec.n == 4
    assert greedy_record.algo == "greedy"
    assert greedy_record.value_norm == 1.0
    assert rec.value_norm == rec.value / greedy_record.value


def test_run_experiment_reps_use_distinct_seeds(path_file):
    cfg = ExperimentConfig(
        graph=path_file, objective="coverage", algo="ltl", k=2, reps=3, seed=10
    )
    records, _ = run_experiment(cfg)
    assert [r.seed for r in records] == [10, 11, 12]
    assert [r.rep for r in records] == [0, 1, 2]


def test_run_experiment_unknown_algo(path_file):
    with pytest.raises(ValidationError):
        run_experiment(ExperimentConfig(graph=path_file, objective="coverage", algo="mystery", k=2))


def test_queries_field_matches_oracle_counter(path_file):
    # metrics honesty: the recorded count is the oracle counter at run end
    for algo in ("quickstream", "qs_small", "sieve", "random", "quickstream_nm"):
        clear_caches()
        cfg = ExperimentConfig(graph=path_file, objective="coverage", algo=algo, k=2)
        records, _ = run_experiment(cfg)
        assert records[0].queries > 0
        assert records[0].queries_norm == records[0].queries / records[0].n


def test_record_peak_memory_within_quickstream_bound(path_file):
    from substream.core import buffer_log_factor
    from substream.monotone import QsConfig

    k, c, eps = 2, 1, 0.1
    cfg = ExperimentConfig(graph=path_file, objective="coverage", algo="quickstream", k=k, c=c, eps=eps)
    records, _ = run_experiment(cfg)
    ell = QsConfig(k=k, c=c, eps=eps).ell
    bound = 2 * c * ell * (k + 1) * buffer_log_factor(k) + c
    assert records[0].peak_memory <= bound


def test_independent_wrap_counter_agrees_with_record(path_file, monkeypatch):
    import substream.harness as harness_mod

    calls = {"n": 0}
    real_build = harness_mod._build_oracle

    def instrumented(objective, graph, seed):
        oracle = real_build(objective, graph, seed)
        inner = oracle._fn

        def counting(s):
            calls["n"] += 1
            return inner(s)

        oracle._fn = counting
        return oracle

    monkeypatch.setattr(harness_mod, "_build_oracle", instrumented)
    cfg = ExperimentConfig(graph=path_file, objective="coverage", algo="quickstream", k=2)
    records, greedy_record = run_experiment(cfg)
    assert calls["n"] == records[0].queries + greedy_record.queries


def test_largek_record_exact_budget_when_value_recorded(path_file):
    # on this instance the buffer never outgrows k, so the run's value is
    # already recorded and the record shows exactly ceil(n/c) queries
    cfg = ExperimentConfig(graph=path_file, objective="coverage", algo="quickstream_largek", k=2)
    with pytest.warns(RuntimeWarning):
        records, _ = run_experiment(cfg)
    assert records[0].queries == 4


def test_csv_round_trip(tmp_path, path_file):
    cfg = ExperimentConfig(graph=path_file, objective="coverage", algo="quickstream", k=2, reps=2)
    records, greedy_record = run_experiment(cfg)
    rows = records + [greedy_record]
    out = tmp_path / "r.csv"
    write_csv(rows, str(out))
    text = out.read_text().splitlines()
    assert text[0].split(",") == ResultRecord.columns()
    assert len(text) == len(rows) + 1
    parsed = read_csv(str(out))
    for a, b in zip(parsed, rows):
        assert a.algo == b.algo
        assert a.seed == b.seed
        assert a.queries == b.queries
        assert math.isclose(a.value, b.value, rel_tol=1e-5)


def test_csv_empty_records_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    write_csv([], str(out))
    assert out.read_text().splitlines() == [",".join(ResultRecord.columns())]


def test_float_printing_six_significant_digits(tmp_path):
    rec_kwargs = dict(
        algo="x", dataset="d", objective="coverage", n=3, k=1, c=1, eps=0.1, b=1.49,
        trials=0, order="file", rep=0, seed=7, value=1.2345678901, value_norm=0.987654321,
        queries=3, queries_norm=1.0, peak_memory=2, memory_per_k=2.0, passes=1, wall_ms=0.5,
    )
    row = ResultRecord(**rec_kwargs).row()
    assert row[ResultRecord.columns().index("value")] == "1.23457"
    assert row[ResultRecord.columns().index("seed")] == "7"


def test_deterministic_replay_modulo_wall_time(tmp_path, path_file):
    def render(path):
        clear_caches()
        cfg = ExperimentConfig(
            graph=path_file, objective="coverage", algo="ltl", k=2, reps=3, seed=5, order="shuffle"
        )
        records, greedy_record = run_experiment(cfg)
        write_csv(records + [greedy_record], path)
        lines = open(path).read().splitlines()
        wall_idx = ResultRecord.columns().index("wall_ms")
        return ["," .join(ln.split(",")[:wall_idx]) for ln in lines]

    assert render(str(tmp_path / "a.csv")) == render(str(tmp_path / "b.csv"))


def test_sweep_cartesian_counts(path_file):
    base = ExperimentConfig(graph=path_file, objective="coverage", algo="greedy", k=2)
    rows = sweep(base, ks=[1, 2, 3], epss=[0.1], algos=["qs_small", "sieve", "random"])
    algo_rows = [r for r in rows if r.algo != "greedy"]
    greedy_rows = [r for r in rows if r.algo == "greedy"]
    assert len(algo_rows) == 9
    assert len(greedy_rows) == 3  # one per k


def test_lower_bound_budget_zero_and_monotone():
    f0 = lower_bound_experiment(40, 2, 0, trials=50, seed=3)
    assert f0 == 0.0
    freqs = [lower_bound_experiment(40, 2, b, trials=200, seed=3) for b in (2, 5, 10)]
    assert freqs == sorted(freqs)


def test_lower_bound_respects_theorem_bound():
    n, c, trials = 100, 2, 400
    for budget in (5, 10):
        freq = lower_bound_experiment(n, c, budget, trials, seed=11)
        p = budget * (c - 1) / n
        sigma = math.sqrt(p * (1 - p) / trials)
        assert freq <= p + 3 * sigma


def test_lower_bound_exhaustive_certainty():
    n, c = 24, 3
    budget = math.ceil(n / (c - 1))
    freq = lower_bound_experiment(n, c, budget, trials=60, seed=9, prober="exhaustive")
    assert freq == 1.0


def test_lower_bound_validation():
    with pytest.raises(ValidationError):
        lower_bound_experiment(10, 2, -1, trials=5, seed=0)
    with pytest.raises(ValidationError):
        lower_bound_experiment(10, 2, 1, trials=0, seed=0)


def test_parse_config_file(tmp_path):
    p = tmp_path / "exp.cfg"
    p.write_text("# experiment\nalgo = quickstream\nk = 5\neps = 0.2\n")
    values = parse_config_file(str(p))
    assert values == {"algo": "quickstream", "k": "5", "eps": "0.2"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("algo quickstream\n")
    with pytest.raises(ValidationError):
        parse_config_file(str(bad))

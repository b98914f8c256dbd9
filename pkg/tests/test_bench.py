import math

import pandas as pd
import pytest

from bench import (
    CSV_COLUMNS,
    BenchConfig,
    Measurement,
    bench_suite,
    generate_factor,
    read_results,
    resolve_k,
    run_instance,
    speedup,
    summarize,
    summarize_by_n,
    write_results,
)
from bench.runner import frame_to_measurements, instance_seed
from factor_graph.errors import InvalidKError


def measurement(algorithm="decor", n=4, k=2, status="ok", elapsed_us=100, result_size=2, rep=0):
    return Measurement(algorithm, n, k, 2, 7, rep, status, elapsed_us, result_size)


class TestResolveK:
    @pytest.mark.parametrize(
        "token,expected", [("0", 0), ("2", 2), ("half", 8), ("log2", 4), ("n-1", 15), ("n", 16), ("5", 5)]
    )
    def test_tokens(self, token, expected):
        assert resolve_k(token, 16) == expected

    def test_log2_rounds_down(self):
        assert resolve_k("log2", 10) == 3

    def test_unknown_token(self):
        with pytest.raises(InvalidKError):
            resolve_k("quarter", 8)


class TestBenchConfig:
    def test_cells_drop_invalid_and_repeated_k(self):
        config = BenchConfig(n_list=[2, 4], k_spec=["0", "2", "half", "log2", "n-1", "n"])
        assert config.cells() == [(2, 0), (2, 2), (4, 0), (4, 2), (4, 3), (4, 4)]

    @pytest.mark.parametrize(
        "overrides",
        [
            {"n_list": [1]},
            {"k_spec": []},
            {"k_spec": ["many"]},
            {"reps": 0},
            {"timeout_ms": 0},
            {"parallel": 0},
            {"range_size": 1},
            {"algorithms": ("exhaustive",)},
        ],
    )
    def test_invalid(self, overrides):
        values = {"n_list": [4], "k_spec": ["0"]}
        values.update(overrides)
        with pytest.raises(ValueError):
            BenchConfig(**values)

    def test_defaults_from_settings(self):
        config = BenchConfig(n_list=[4], k_spec=["0"])
        assert config.timeout_ms == 300000
        assert config.to_dict()["algorithms"] == ("decor", "naive")


class TestRunInstance:
    def test_decor(self):
        result = run_instance("decor", generate_factor(3, 2, seed=0), timeout_ms=10000, k=2, seed=0)
        assert result.status == "ok"
        assert result.result_size == 2
        assert result.n == 3 and result.k == 2 and result.range_size == 2
        assert result.elapsed_us >= 0

    def test_naive_full_set(self):
        result = run_instance("naive", generate_factor(10, 10, seed=0), timeout_ms=10000)
        assert result.status == "ok"
        assert result.result_size == 10

    def test_naive_timeout(self):
        result = run_instance("naive", generate_factor(12, 6, seed=0), timeout_ms=1)
        assert result.status == "timeout"
        assert result.result_size == 0

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            run_instance("exhaustive", generate_factor(3, 2), timeout_ms=10)


class TestBenchSuite:
    def test_grid(self, tmp_path):
        out = tmp_path / "results.csv"
        config = BenchConfig(n_list=[4], k_spec=["0", "2"], reps=2, seed=3)
        measurements = bench_suite(config, out=out)
        assert len(measurements) == 2 * 2 * 2
        assert [(m.algorithm, m.k, m.rep) for m in measurements[:4]] == [
            ("decor", 0, 0),
            ("naive", 0, 0),
            ("decor", 0, 1),
            ("naive", 0, 1),
        ]
        assert {(m.k, m.result_size) for m in measurements} == {(0, 0), (2, 2)}
        assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
        assert len(read_results(out)) == 8

    def test_both_algorithms_see_the_same_instance(self):
        measurements = bench_suite(BenchConfig(n_list=[5], k_spec=["2"], reps=1, seed=1))
        decor_run, naive_run = measurements
        assert decor_run.seed == naive_run.seed == instance_seed(1, 5, 2, 0)

    def test_deterministic(self):
        config = BenchConfig(n_list=[4, 5], k_spec=["0", "2", "n"], reps=2, seed=9)
        first = [(m.seed, m.result_size) for m in bench_suite(config)]
        second = [(m.seed, m.result_size) for m in bench_suite(config)]
        assert first == second

    def test_parallel_matches_sequential(self):
        sequential = BenchConfig(n_list=[4, 6], k_spec=["0", "2", "half"], reps=2, seed=5, parallel=1)
        parallel = BenchConfig(n_list=[4, 6], k_spec=["0", "2", "half"], reps=2, seed=5, parallel=3)
        key = lambda m: (m.algorithm, m.n, m.k, m.rep, m.seed, m.status, m.result_size)  # noqa: E731
        assert [key(m) for m in bench_suite(parallel)] == [key(m) for m in bench_suite(sequential)]

    def test_timeouts_are_recorded(self, tmp_path):
        out = tmp_path / "results.csv"
        config = BenchConfig(n_list=[12], k_spec=["half"], reps=1, timeout_ms=1, algorithms=("naive",))
        measurements = bench_suite(config, out=out)
        assert [m.status for m in measurements] == ["timeout"]
        assert read_results(out)["status"].tolist() == ["timeout"]

    def test_parquet(self, tmp_path):
        measurements = bench_suite(BenchConfig(n_list=[3], k_spec=["0", "n"], reps=1))
        path = write_results(measurements, tmp_path / "results.parquet")
        frame = read_results(path)
        assert list(frame.columns) == CSV_COLUMNS
        assert frame_to_measurements(frame) == measurements


class TestResults:
    def test_read_rejects_missing_columns(self, tmp_path):
        path = tmp_path / "broken.csv"
        pd.DataFrame({"algorithm": ["decor"]}).to_csv(path, index=False)
        with pytest.raises(ValueError):
            read_results(path)

    def test_summarize(self):
        measurements = [
            measurement(elapsed_us=100),
            measurement(elapsed_us=300, rep=1),
            measurement("naive", elapsed_us=1000),
            measurement("naive", status="timeout", elapsed_us=5000, result_size=0, rep=1),
        ]
        summary = summarize(measurements)
        decor_row = summary[summary["algorithm"] == "decor"].iloc[0]
        naive_row = summary[summary["algorithm"] == "naive"].iloc[0]
        assert (decor_row["instances"], decor_row["solved"], decor_row["timeouts"]) == (2, 2, 0)
        assert decor_row["mean_us"] == 200 and decor_row["median_us"] == 200
        assert (naive_row["solved"], naive_row["timeouts"]) == (1, 1)
        assert naive_row["median_us"] == 1000

    def test_summarize_by_n(self):
        measurements = [measurement(k=0), measurement(k=2), measurement(n=6, k=0)]
        summary = summarize_by_n(measurements)
        assert summary[["algorithm", "n", "instances"]].values.tolist() == [["decor", 4, 2], ["decor", 6, 1]]

    def test_speedup(self):
        measurements = [measurement(elapsed_us=100), measurement("naive", elapsed_us=2500)]
        result = speedup(measurements)
        assert result["speedup"].tolist() == [25.0]

    def test_speedup_is_nan_for_timeouts(self):
        measurements = [
            measurement(elapsed_us=100),
            measurement("naive", status="timeout", elapsed_us=5000, result_size=0),
        ]
        assert math.isnan(speedup(measurements)["speedup"].iloc[0])

    def test_empty(self):
        assert summarize([]).empty

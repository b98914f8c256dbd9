# bench/runner.py
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from bench.generator import generate_factor
from config import settings
from detection.antichain import max_candidate
from detection.deadline import Deadline, Status
from detection.decor import decor
from detection.naive import naive_max_commutative
from factor_graph.errors import InvalidKError
from factor_graph.models import Factor

ALGORITHMS = ("decor", "naive")
K_TOKENS = ("0", "2", "half", "log2", "n-1", "n")
CSV_COLUMNS = ["algorithm", "n", "k", "range", "seed", "rep", "status", "elapsed_us", "result_size"]


def resolve_k(token: Union[str, int], n: int) -> int:
    """Resolve a k token ("0", "2", "half", "log2", "n-1", "n" or an integer) for a given n."""
    token = str(token).strip()
    named = {
        "half": n // 2,
        "log2": n.bit_length() - 1,
        "n-1": n - 1,
        "n": n,
    }
    if token in named:
        return named[token]
    try:
        return int(token)
    except ValueError:
        raise InvalidKError(f"unknown k token {token!r}, expected one of {K_TOKENS} or an integer") from None


@dataclass
class BenchConfig:
    n_list: List[int]
    k_spec: List[str]
    range_size: int = 2
    reps: int = 1
    timeout_ms: int = field(default_factory=lambda: settings.default_timeout_ms)
    seed: int = field(default_factory=lambda: settings.bench_seed)
    parallel: int = field(default_factory=lambda: settings.bench_parallel)
    algorithms: Tuple[str, ...] = ALGORITHMS

    def __post_init__(self):
        self.n_list = [int(n) for n in self.n_list]
        self.k_spec = [str(token) for token in self.k_spec]
        self.algorithms = tuple(self.algorithms)
        if not self.n_list or any(n < 2 for n in self.n_list):
            raise ValueError(f"every n must be at least 2, got {self.n_list}")
        if not self.k_spec:
            raise ValueError("at least one k token is required")
        for token in self.k_spec:
            resolve_k(token, 2)
        if self.range_size < 2:
            raise ValueError(f"range size must be at least 2, got {self.range_size}")
        if self.reps < 1:
            raise ValueError(f"reps must be at least 1, got {self.reps}")
        if self.timeout_ms <= 0:
            raise ValueError(f"timeout must be positive, got {self.timeout_ms}")
        if self.parallel < 1:
            raise ValueError(f"parallel must be at least 1, got {self.parallel}")
        unknown = [name for name in self.algorithms if name not in ALGORITHMS]
        if unknown or not self.algorithms:
            raise ValueError(f"unknown algorithms {unknown}, expected a subset of {ALGORITHMS}")

    def cells(self) -> List[Tuple[int, int]]:
        """Resolved (n, k) cells in config order; invalid and repeated k values are dropped."""
        cells = []
        for n in self.n_list:
            seen = set()
            for token in self.k_spec:
                k = resolve_k(token, n)
                if k == 1 or k < 0 or k > n:
                    logger.warning(f"Dropping cell n={n}, k={token} (resolves to {k})")
                    continue
                if k in seen:
                    continue
                seen.add(k)
                cells.append((n, k))
        return cells

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class Measurement:
    algorithm: str
    n: int
    k: Optional[int]
    range_size: int
    seed: int
    rep: int
    status: str
    elapsed_us: int
    result_size: int

    def to_record(self) -> Dict:
        record = asdict(self)
        record["range"] = record.pop("range_size")
        return {column: record[column] for column in CSV_COLUMNS}


def instance_seed(seed: int, n: int, k: int, rep: int) -> int:
    return int(np.random.SeedSequence([seed, n, k, rep]).generate_state(1)[0])


def run_instance(
    algorithm: str,
    factor: Factor,
    timeout_ms: int,
    k: Optional[int] = None,
    seed: int = 0,
    rep: int = 0,
) -> Measurement:
    """
    Time one detector on one factor under a cooperative deadline.

    Args:
        algorithm: "decor" or "naive".
        factor: The generated factor.
        timeout_ms: Time budget in milliseconds.
        k, seed, rep: Instance coordinates copied into the measurement.

    Returns:
        Measurement: Elapsed wall-clock microseconds, status and size of the set found.
    """
    if algorithm not in ALGORITHMS:
        logger.error(f"Unknown algorithm {algorithm}")
        raise ValueError(f"unknown algorithm {algorithm!r}, expected one of {ALGORITHMS}")

    deadline = Deadline.after_ms(timeout_ms)
    start = time.perf_counter_ns()
    if algorithm == "decor":
        result = decor(factor, deadline)
        status = result.status
        found = max_candidate(result.candidates)
    else:
        result = naive_max_commutative(factor, deadline)
        status = result.status
        found = result.subset
    elapsed_us = (time.perf_counter_ns() - start) // 1000

    size = len(found) if found and status is Status.OK else 0
    return Measurement(
        algorithm=algorithm,
        n=factor.arity,
        k=k,
        range_size=factor.args[0].size,
        seed=seed,
        rep=rep,
        status=status.value,
        elapsed_us=int(elapsed_us),
        result_size=size,
    )


def _run_cell(config: BenchConfig, n: int, k: int, rep: int) -> List[Measurement]:
    seed = instance_seed(config.seed, n, k, rep)
    factor = generate_factor(n, k, config.range_size, seed)
    logger.info(f"Running n={n}, k={k}, rep={rep}")
    return [run_instance(name, factor, config.timeout_ms, k, seed, rep) for name in config.algorithms]


def bench_suite(config: BenchConfig, out: Optional[Union[str, Path]] = None) -> List[Measurement]:
    """
    Run every algorithm on every (n, k, rep) instance of the config.

    Both algorithms see the same generated factor. Results keep config order and are
    written to `out` (CSV, or Parquet for a .parquet path) when given.
    """
    tasks = [(n, k, rep) for n, k in config.cells() for rep in range(config.reps)]
    logger.info(f"Benchmark: {len(tasks)} instances, algorithms {list(config.algorithms)}, parallel={config.parallel}")
    if config.parallel > 1:
        batches = Parallel(n_jobs=config.parallel, backend="threading")(
            delayed(_run_cell)(config, n, k, rep) for n, k, rep in tasks
        )
    else:
        batches = [_run_cell(config, n, k, rep) for n, k, rep in tasks]
    measurements = [measurement for batch in batches for measurement in batch]

    timeouts = sum(1 for m in measurements if m.status == Status.TIMEOUT.value)
    if timeouts:
        logger.warning(f"{timeouts} of {len(measurements)} runs timed out")
    if out is not None:
        write_results(measurements, out)
    return measurements


def to_frame(measurements: Sequence[Measurement]) -> pd.DataFrame:
    return pd.DataFrame([m.to_record() for m in measurements], columns=CSV_COLUMNS)


def write_results(measurements: Sequence[Measurement], path: Union[str, Path]) -> Path:
    path = Path(path)
    frame = to_frame(measurements)
    if path.suffix == ".parquet":
        frame.to_parquet(path, index=False)
    else:
        frame.to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} measurements to {path}")
    return path


def read_results(path: Union[str, Path]) -> pd.DataFrame:
    path = Path(path)
    frame = pd.read_parquet(path) if path.suffix == ".parquet" else pd.read_csv(path)
    missing = [column for column in CSV_COLUMNS if column not in frame.columns]
    if missing:
        logger.error(f"Missing required columns in {path}: {missing}")
        raise ValueError(f"Missing required columns in {path}: {missing}")
    return frame[CSV_COLUMNS]


def frame_to_measurements(frame: pd.DataFrame) -> List[Measurement]:
    measurements = []
    for row in frame.to_dict(orient="records"):
        k = row["k"]
        measurements.append(
            Measurement(
                algorithm=str(row["algorithm"]),
                n=int(row["n"]),
                k=None if pd.isna(k) else int(k),
                range_size=int(row["range"]),
                seed=int(row["seed"]),
                rep=int(row["rep"]),
                status=str(row["status"]),
                elapsed_us=int(row["elapsed_us"]),
                result_size=int(row["result_size"]),
            )
        )
    return measurements

# bench/results.py
from typing import Sequence, Union

import pandas as pd
from loguru import logger

from bench.runner import CSV_COLUMNS, Measurement, to_frame

SUMMARY_COLUMNS = ["instances", "solved", "timeouts", "mean_us", "median_us"]


def _as_frame(measurements: Union[pd.DataFrame, Sequence[Measurement]]) -> pd.DataFrame:
    if isinstance(measurements, pd.DataFrame):
        return measurements[CSV_COLUMNS]
    return to_frame(measurements)


def _aggregate(frame: pd.DataFrame, keys) -> pd.DataFrame:
    if frame.empty:
        return pd.DataFrame(columns=keys + SUMMARY_COLUMNS)

    frame = frame.copy()
    frame["solved"] = (frame["status"] == "ok").astype(int)
    frame["timeouts"] = (frame["status"] == "timeout").astype(int)
    # Timings of timed-out runs only show the budget, so averages use solved runs.
    frame["solved_us"] = frame["elapsed_us"].where(frame["solved"] == 1)

    summary = (
        frame.groupby(keys)
        .agg(
            instances=("status", "size"),
            solved=("solved", "sum"),
            timeouts=("timeouts", "sum"),
            mean_us=("solved_us", "mean"),
            median_us=("solved_us", "median"),
        )
        .reset_index()
    )
    return summary[keys + SUMMARY_COLUMNS]


def summarize(measurements: Union[pd.DataFrame, Sequence[Measurement]]) -> pd.DataFrame:
    """
    Per (algorithm, n, k): instance count, solved and timed-out runs, mean and median
    run time in microseconds over solved runs.
    """
    frame = _as_frame(measurements)
    summary = _aggregate(frame, ["algorithm", "n", "k"])
    logger.info(f"Summarized {len(frame)} measurements into {len(summary)} cells")
    return summary


def summarize_by_n(measurements: Union[pd.DataFrame, Sequence[Measurement]]) -> pd.DataFrame:
    """Per (algorithm, n) over all k."""
    return _aggregate(_as_frame(measurements), ["algorithm", "n"])


def speedup(measurements: Union[pd.DataFrame, Sequence[Measurement]]) -> pd.DataFrame:
    """Median naive time divided by median DECOR time per (n, k); NaN where either did not finish."""
    summary = summarize(measurements)
    pivot = summary.pivot(index=["n", "k"], columns="algorithm", values="median_us")
    if "naive" not in pivot.columns or "decor" not in pivot.columns:
        return pd.DataFrame(columns=["n", "k", "speedup"])
    result = (pivot["naive"] / pivot["decor"]).rename("speedup").reset_index()
    return result

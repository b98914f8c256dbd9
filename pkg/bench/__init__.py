# bench/__init__.py
from .generator import generate_factor
from .runner import (
    ALGORITHMS,
    CSV_COLUMNS,
    BenchConfig,
    Measurement,
    bench_suite,
    read_results,
    resolve_k,
    run_instance,
    write_results,
)
from .results import speedup, summarize, summarize_by_n

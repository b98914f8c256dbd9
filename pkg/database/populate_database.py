# database/populate_database.py
import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

from bench.run_registry import BenchRunTracker
from bench.runner import frame_to_measurements, read_results
from database.config import create_tables


def import_results(
    path: Union[str, Path],
    run_name: Optional[str] = None,
    description: Optional[str] = None,
    tracker: Optional[BenchRunTracker] = None,
) -> str:
    """
    Record an existing results CSV (or Parquet) file as a benchmark run.

    Returns:
        The name of the registered run
    """
    path = Path(path)
    tracker = tracker or BenchRunTracker()
    measurements = frame_to_measurements(read_results(path))
    logger.info(f"Importing {len(measurements)} measurements from {path}")
    return tracker.register_run(
        measurements,
        config={"source": str(path)},
        run_name=run_name or path.stem,
        description=description,
    )


# This allows the script to be run directly
if __name__ == "__main__":
    create_tables()
    for argument in sys.argv[1:]:
        import_results(argument)

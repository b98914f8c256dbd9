# bench/run_registry.py
import json
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Sequence

from loguru import logger
from sqlalchemy.orm import Session

from bench.results import summarize
from bench.runner import Measurement
from database.config import SessionLocal
from database.models import BenchMeasurement, BenchRun


class BenchRunTracker:
    """
    Records benchmark runs (configuration, summary and every measurement) in the
    database and reads them back.
    """

    def __init__(self, session_factory: Callable[[], Session] = SessionLocal):
        """
        Args:
            session_factory: Callable returning a new SQLAlchemy session
        """
        self.session_factory = session_factory

    def register_run(
        self,
        measurements: Sequence[Measurement],
        config: Optional[Dict[str, Any]] = None,
        run_name: Optional[str] = None,
        description: Optional[str] = None,
    ) -> str:
        """
        Register a benchmark run.

        Args:
            measurements: Measurements produced by bench_suite
            config: Optional BenchConfig as a dictionary
            run_name: Optional run name (generated if not provided)
            description: Optional free-text description

        Returns:
            The name of the registered run
        """
        if not run_name:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            run_name = f"bench_{timestamp}"

        # to_json maps NaN medians of all-timeout cells to null
        summary = json.loads(summarize(measurements).to_json(orient="records"))

        db = self.session_factory()
        try:
            if db.query(BenchRun).filter(BenchRun.run_name == run_name).first():
                logger.error(f"Benchmark run {run_name} already exists")
                raise ValueError(f"benchmark run {run_name} already exists")

            run = BenchRun(run_name=run_name, description=description)
            if config:
                run.set_config(config)
            run.set_summary(summary)
            for m in measurements:
                run.measurements.append(
                    BenchMeasurement(
                        algorithm=m.algorithm,
                        n=m.n,
                        k=m.k,
                        range_size=m.range_size,
                        seed=m.seed,
                        rep=m.rep,
                        status=m.status,
                        elapsed_us=m.elapsed_us,
                        result_size=m.result_size,
                    )
                )

            db.add(run)
            db.commit()
            logger.info(f"Registered benchmark run {run_name} with {len(measurements)} measurements")
            return run_name
        except Exception:
            db.rollback()
            raise
        finally:
            db.close()

    def list_runs(self) -> List[Dict[str, Any]]:
        """
        All registered runs, newest first, without their measurements.
        """
        db = self.session_factory()
        try:
            runs = db.query(BenchRun).order_by(BenchRun.created_at.desc(), BenchRun.id.desc()).all()
            return [
                {
                    "id": run.id,
                    "run_name": run.run_name,
                    "created_at": run.created_at.isoformat(),
                    "description": run.description,
                    "measurement_count": len(run.measurements),
                }
                for run in runs
            ]
        finally:
            db.close()

    def get_run_details(self, run_name: str) -> Optional[Dict[str, Any]]:
        db = self.session_factory()
        try:
            run = db.query(BenchRun).filter(BenchRun.run_name == run_name).first()
            if not run:
                return None
            return {
                "id": run.id,
                "run_name": run.run_name,
                "created_at": run.created_at.isoformat(),
                "description": run.description,
                "config": run.get_config(),
                "summary": run.get_summary(),
                "measurement_count": len(run.measurements),
            }
        finally:
            db.close()

    def load_measurements(self, run_name: str) -> Optional[List[Measurement]]:
        """
        Measurements of a run in recorded order, or None for an unknown run.
        """
        db = self.session_factory()
        try:
            run = db.query(BenchRun).filter(BenchRun.run_name == run_name).first()
            if not run:
                return None
            return [
                Measurement(
                    algorithm=row.algorithm,
                    n=row.n,
                    k=row.k,
                    range_size=row.range_size,
                    seed=row.seed,
                    rep=row.rep,
                    status=row.status,
                    elapsed_us=row.elapsed_us,
                    result_size=row.result_size,
                )
                for row in run.measurements
            ]
        finally:
            db.close()

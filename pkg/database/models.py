# database/models.py
import json
from datetime import datetime

from sqlalchemy import BigInteger, Column, DateTime, ForeignKey, Integer, String, Text
from sqlalchemy.orm import relationship

from database.config import Base


class BenchRun(Base):
    """
    One recorded benchmark run: its configuration and summary
    """

    __tablename__ = "bench_runs"

    id = Column(Integer, primary_key=True, index=True)
    run_name = Column(String, unique=True, index=True, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow)
    description = Column(Text, nullable=True)
    config = Column(Text, nullable=True)  # JSON string of the BenchConfig
    summary = Column(Text, nullable=True)  # JSON string of the per-cell summary

    measurements = relationship(
        "BenchMeasurement", back_populates="run", cascade="all, delete-orphan", order_by="BenchMeasurement.id"
    )

    def set_config(self, config_dict):
        """Store the configuration as JSON string"""
        self.config = json.dumps(config_dict)

    def get_config(self):
        if self.config:
            return json.loads(self.config)
        return {}

    def set_summary(self, summary_records):
        self.summary = json.dumps(summary_records)

    def get_summary(self):
        """Retrieve the summary as a list of records"""
        if self.summary:
            return json.loads(self.summary)
        return []


class BenchMeasurement(Base):
    """
    A single timed detector run
    """

    __tablename__ = "bench_measurements"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("bench_runs.id"), nullable=False, index=True)
    algorithm = Column(String, nullable=False)
    n = Column(Integer, nullable=False)
    k = Column(Integer, nullable=True)
    range_size = Column(Integer, nullable=False)
    seed = Column(BigInteger, nullable=False)
    rep = Column(Integer, nullable=False)
    status = Column(String, nullable=False)
    elapsed_us = Column(BigInteger, nullable=False)
    result_size = Column(Integer, nullable=False)

    run = relationship("BenchRun", back_populates="measurements")

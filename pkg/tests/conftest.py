# tests/conftest.py
import os
import tempfile
from pathlib import Path

# Keep the benchmark store of the test session out of the working directory.
os.environ["DATABASE_URL"] = f"sqlite:///{Path(tempfile.mkdtemp()) / 'bench_test.db'}"

import pytest  # noqa: E402
from loguru import logger  # noqa: E402

from config import configure_logging  # noqa: E402
from factor_graph import FactorGraph, RandomVariable, build_factor  # noqa: E402

BOOLEAN = ("true", "false")


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    configure_logging("WARNING")


def boolean(name, evidence=None):
    return RandomVariable(name, BOOLEAN, evidence)


@pytest.fixture
def pair_factor():
    """phi(R1, R2) with phi(true, false) = phi(false, true)."""
    return build_factor("phi", [boolean("R1"), boolean("R2")], ["1", "2", "2", "3"])


@pytest.fixture
def three_arg_factor():
    """phi(R1, R2, R3), commutative with respect to {R2, R3}; potentials 1..6 stand for phi_1..phi_6."""
    return build_factor(
        "phi",
        [boolean("R1"), boolean("R2"), boolean("R3")],
        ["1", "2", "2", "3", "4", "5", "5", "6"],
    )


@pytest.fixture
def chain_document():
    return {
        "variables": [
            {"name": "A", "range": list(BOOLEAN), "evidence": None},
            {"name": "B", "range": list(BOOLEAN), "evidence": None},
            {"name": "C", "range": list(BOOLEAN), "evidence": None},
        ],
        "factors": [
            {"name": "phi1", "args": ["A", "B"], "table": ["1", "2", "3", "4"]},
            {"name": "phi2", "args": ["C", "B"], "table": ["1", "2", "3", "4"]},
        ],
    }


@pytest.fixture
def chain_graph():
    a, b, c = boolean("A"), boolean("B"), boolean("C")
    return FactorGraph(
        [a, b, c],
        [
            build_factor("phi1", [a, b], ["1", "2", "3", "4"]),
            build_factor("phi2", [c, b], ["1", "2", "3", "4"]),
        ],
    )


@pytest.fixture
def three_arg_document():
    return {
        "variables": [{"name": f"R{i}", "range": list(BOOLEAN)} for i in (1, 2, 3)],
        "factors": [
            {"name": "phi", "args": ["R1", "R2", "R3"], "table": ["1", "2", "2", "3", "4", "5", "5", "6"]}
        ],
    }


@pytest.fixture
def log_messages():
    """Messages logged at DEBUG and above while the test runs."""
    messages = []
    sink_id = logger.add(lambda message: messages.append(message.record["message"]), level="DEBUG")
    yield messages
    logger.remove(sink_id)

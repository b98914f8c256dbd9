# config/settings.py
import os

from dotenv import load_dotenv
from pydantic import BaseModel, validator

# Load environment variables
load_dotenv()


class Settings(BaseModel):
    """
    Runtime configuration shared by the CLI, the API and the benchmark store.
    """

    database_url: str = "sqlite:///decor_bench.db"
    log_level: str = "INFO"
    default_timeout_ms: int = 300000
    arity_limit: int = 8
    bench_parallel: int = 1
    bench_seed: int = 42

    @validator("default_timeout_ms")
    def _positive_timeout(cls, value):
        if value <= 0:
            raise ValueError("timeout must be positive")
        return value

    @validator("arity_limit", "bench_parallel")
    def _at_least_one(cls, value):
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @validator("log_level")
    def _upper_level(cls, value):
        return value.upper()


# Environment variable -> settings field
ENV_KEYS = {
    "DATABASE_URL": "database_url",
    "DECOR_LOG_LEVEL": "log_level",
    "DECOR_TIMEOUT_MS": "default_timeout_ms",
    "DECOR_ARITY_LIMIT": "arity_limit",
    "DECOR_BENCH_PARALLEL": "bench_parallel",
    "DECOR_BENCH_SEED": "bench_seed",
}


def get_settings() -> Settings:
    """Read settings from the environment (after .env has been loaded)."""
    values = {}
    for env_key, field in ENV_KEYS.items():
        value = os.getenv(env_key)
        if value is not None and value != "":
            values[field] = value
    return Settings(**values)


settings = get_settings()

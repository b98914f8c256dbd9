# detection/deadline.py
import time
from enum import Enum
from typing import Optional


class Status(str, Enum):
    OK = "ok"
    TIMEOUT = "timeout"


class Deadline:
    """Cooperative deadline on the monotonic clock; detectors poll `expired()` between work units."""

    def __init__(self, expires_at: Optional[float] = None):
        self.expires_at = expires_at

    @classmethod
    def after_ms(cls, timeout_ms: Optional[int]) -> "Deadline":
        if timeout_ms is None:
            return cls(None)
        return cls(time.monotonic() + timeout_ms / 1000.0)

    @classmethod
    def never(cls) -> "Deadline":
        return cls(None)

    def expired(self) -> bool:
        return self.expires_at is not None and time.monotonic() >= self.expires_at

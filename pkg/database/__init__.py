from .config import Base
from .models import BenchMeasurement, BenchRun

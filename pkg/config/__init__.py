from .settings import Settings, get_settings, settings
from .logging import configure_logging

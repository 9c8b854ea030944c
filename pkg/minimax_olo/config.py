"""
Runtime settings for minimax-olo.
Environment defaults are read once from the process environment (and a
``.env`` file when present); nothing here is required.
"""

import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables
load_dotenv()

# Seed used whenever a run does not name one. Seeds never come from the environment.
DEFAULT_SEED = 20130101


class Settings(BaseModel):
    """Numerics thresholds and logging options."""
    exact_tail_max_m: int = Field(default=10_000, ge=0)
    tail_approximation: Literal["beta", "normal"] = "beta"
    log_space_min_m: int = Field(default=20, ge=0, le=20)
    log_level: str = "INFO"
    log_file: Optional[str] = None


def load_settings() -> Settings:
    """Build settings from MINIMAX_OLO_* environment variables."""
    values = {
        "exact_tail_max_m": os.getenv("MINIMAX_OLO_EXACT_TAIL_MAX_M"),
        "tail_approximation": os.getenv("MINIMAX_OLO_TAIL_APPROXIMATION"),
        "log_space_min_m": os.getenv("MINIMAX_OLO_LOG_SPACE_MIN_M"),
        "log_level": os.getenv("MINIMAX_OLO_LOG_LEVEL"),
        "log_file": os.getenv("MINIMAX_OLO_LOG_FILE"),
    }
    return Settings(**{key: value for key, value in values.items() if value})


settings = load_settings()

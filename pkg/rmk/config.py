"""
Configuration - Settings for the rmk library and CLI
"""
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field


DEFAULT_CLOSURE_CAP = 2 ** 20


class RmkConfig(BaseModel):
    """Process-wide settings; CLI flags override these"""

    # Logging
    log_level: str = "WARNING"
    log_json: bool = False

    # Semantics
    closure_cap: int = Field(default=DEFAULT_CLOSURE_CAP, ge=1)

    # Lab
    seed: int = 1
    jobs: int = Field(default=1, ge=1)
    exhaustive_worlds: int = Field(default=3, ge=1)  # sequent search bound

    @classmethod
    def from_env(cls) -> "RmkConfig":
        """Create config from environment variables (and a .env file if present)"""
        load_dotenv()
        return cls(
            log_level=os.environ.get("RMK_LOG_LEVEL", "WARNING"),
            log_json=os.environ.get("RMK_LOG_JSON", "false").lower() == "true",
            closure_cap=int(os.environ.get("RMK_CLOSURE_CAP", str(DEFAULT_CLOSURE_CAP))),
            seed=int(os.environ.get("RMK_SEED", "1")),
            jobs=int(os.environ.get("RMK_JOBS", "1")),
            exhaustive_worlds=int(os.environ.get("RMK_EXHAUSTIVE_WORLDS", "3")),
        )

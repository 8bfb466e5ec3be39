import os
from typing import Optional

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv()


class Settings(BaseSettings):
    PROJECT_NAME: str = "Depth kNN"
    VERSION: str = "0.1.0"

    # Filesystem
    DATA_DIR: str = os.getenv("DATA_DIR", "data")
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "outputs")
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_TO_FILE: bool = False

    # Randomness
    DEFAULT_SEED: int = 20130101

    # Depth computation
    DEFAULT_DIRECTIONS: int = 1000  # approximate halfspace/projection depth
    MAX_ENUMERATION: int = 200_000  # simplicial subsets enumerated exactly (d >= 3)

    # DD-classifiers
    DD_CANDIDATE_CAP: int = 20_000
    DD_SMOOTH_T: float = 100.0
    DD_SMOOTH_STARTS: int = 100
    DD_SMOOTH_MAXITER: int = 500

    # Estimators
    MC_VOLUME_BUDGET: int = 200_000

    # Experiments
    BENCHMARK_WORKERS: int = int(os.getenv("BENCHMARK_WORKERS", "1"))

    # Pinned dataset digests (sha256); unset means trust-on-first-fetch
    RIPLEY_TRAIN_SHA256: Optional[str] = os.getenv("RIPLEY_TRAIN_SHA256")
    RIPLEY_TEST_SHA256: Optional[str] = os.getenv("RIPLEY_TEST_SHA256")
    TRANSFUSION_SHA256: Optional[str] = os.getenv("TRANSFUSION_SHA256")

    class Config:
        env_file = ".env"


settings = Settings()

# zonovol/core/config.py

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "zonotope-volume"

    # Logging
    LOG_LEVEL: str = Field(default="INFO")
    LOG_FILE: str = Field(default="")  # JSON lines when set

    # Linear algebra tolerances
    SINGULARITY_TOL: float = Field(default=1e-300)
    SEPARATION_TOL_REL: float = Field(default=1e-9)  # relative to max|lambda|
    IMAG_TOL_REL: float = Field(default=1e-10)
    RECONSTRUCTION_TOL_REL: float = Field(default=1e-8)  # relative to max|A|
    COND_WARN: float = Field(default=1e8)
    RANK_TOL_REL: float = Field(default=1e-10)

    # Spectral path
    BETA_ZERO_TOL_REL: float = Field(default=1e-12)
    INFINITE_MARGIN: float = Field(default=1e-9)

    # Exact enumeration
    DET_BUDGET: int = Field(default=500_000_000)
    DET_CHUNK_SIZE: int = Field(default=65_536)

    # Bench
    BENCH_WORKERS: int = Field(default=1)

    # Extra directory searched for --model <name>
    MODEL_DIR: str = Field(default="")

    model_config = SettingsConfigDict(
        env_prefix="ZONOVOL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()

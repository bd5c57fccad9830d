"""
Configuration management for the sqmk engine.
Loads settings from environment variables with sensible defaults.
"""

from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application
    app_name: str = "sqmk stable quadratic module engine"
    debug: bool = False
    log_level: str = "INFO"

    # HTTP API
    host: str = "0.0.0.0"
    port: int = 8000

    # Computation
    seed: int = 0
    threads: int = 1
    search_budget: int = 200_000
    max_cells: int = 500_000
    f2t_degree_cap: int = 64
    sample_count: int = 50
    spot_checks: int = 20

    class Config:
        env_prefix = "SQMK_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience access
settings = get_settings()

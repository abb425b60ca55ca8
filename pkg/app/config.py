from pydantic_settings import BaseSettings
from functools import lru_cache
from typing import List


class Settings(BaseSettings):
    # Service
    app_name: str = "Linear Layout Toolkit"
    app_version: str = "1.0.0"
    api_prefix: str = "/api/v1"
    cors_origins: List[str] = ["*"]
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: str = "INFO"

    # Exact search limits
    exact_queue_vertex_limit: int = 9
    exact_stack_vertex_limit: int = 8
    exact_coloring_edge_limit: int = 40
    vertex_cover_limit: int = 20
    exact_threads: int = 1

    # Reports and corpora
    violation_report_cap: int = 1000
    random_seed: int = 0

    class Config:
        env_file = ".env"
        env_prefix = "LAYOUT_"


@lru_cache()
def get_settings():
    return Settings()

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel

# Load environment variables from .env file
load_dotenv()


class Settings(BaseModel):
    app_name: str = os.getenv("APP_NAME", "Elliptic Hall Lab")

    # Enumeration
    hall_threads: int = int(os.getenv("HALL_THREADS", str(os.cpu_count() or 1)))
    enumeration_chunk: int = int(os.getenv("HALL_CHUNK_SIZE", "200000"))
    max_enumeration: int = int(os.getenv("HALL_MAX_ENUMERATION", "2000000000"))

    # Relation oracle (modular pre-pass; verdicts are confirmed exactly)
    oracle_prime: int = int(os.getenv("HALL_ORACLE_PRIME", "2147483647"))
    oracle_seed: int = int(os.getenv("HALL_ORACLE_SEED", "20240229"))
    oracle_rounds: int = int(os.getenv("HALL_ORACLE_ROUNDS", "3"))
    oracle_max_generators: int = int(os.getenv("HALL_ORACLE_MAX_GENERATORS", "5000"))

    # API
    cors_origins: str = os.getenv(
        "CORS_ORIGINS",
        "http://localhost:3000,http://127.0.0.1:3000",
    )

    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    log_format: str | None = os.getenv("LOG_FORMAT", None)


@lru_cache
def get_settings() -> Settings:
    return Settings()

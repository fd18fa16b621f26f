"""Configuration module for hashembed."""

import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Process-wide settings."""

    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "INFO")

    # Encoder execution
    encode_workers: int = int(os.getenv("ENCODE_WORKERS", "1"))
    stream_block_rows: int = int(os.getenv("STREAM_BLOCK_ROWS", "4096"))

    # Mixed into the master seed for the fixed evaluation sampler
    eval_seed_offset: int = int(os.getenv("EVAL_SEED_OFFSET", "7919"))

    class Config:
        """Pydantic config."""

        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()

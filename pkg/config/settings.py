# config/settings.py
from __future__ import annotations

from typing import List, Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


ParityMode = Literal["odd", "all"]
OutputFormat = Literal["text", "json", "dot"]
NormalFormMethod = Literal["semantic", "syntactic", "both"]


class Settings(BaseSettings):
    """
    Centralized configuration loaded from .env and environment variables.

    Priority (highest to lowest):
      1) Environment variables
      2) .env file
      3) Defaults here

    List values are read as JSON, e.g. BRANCHING_PRIMES='[3, 5, 7]'.
    """
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Module family
    default_primes: List[int] = Field([3, 5], alias="BRANCHING_PRIMES")
    default_seeds: List[int] = Field([1, 7], alias="BRANCHING_SEEDS")
    default_parity: ParityMode = Field("odd", alias="BRANCHING_PARITY")
    max_primes: int = Field(4, alias="BRANCHING_MAX_PRIMES")

    # Equality certificate: exponent cap is depth + 1 per prime
    depth_cap: int = Field(3, alias="BRANCHING_DEPTH")

    # Character oracle
    oracle_tolerance: float = Field(1e-6, alias="ORACLE_TOLERANCE")
    oracle_n_max: int = Field(200, alias="ORACLE_N_MAX")

    # Verification sweeps
    p2_n_max: int = Field(192, alias="P2_N_MAX")
    sample_seed: int = Field(20240607, alias="SAMPLE_SEED")
    basis_exponent_bound: int = Field(2, alias="BASIS_EXPONENT_BOUND")
    agreement_word_length: int = Field(5, alias="AGREEMENT_WORD_LENGTH")

    # CLI
    output_format: OutputFormat = Field("text", alias="OUTPUT_FORMAT")
    normal_form_method: NormalFormMethod = Field("both", alias="NORMAL_FORM_METHOD")
    diagram_n_max: int = Field(45, alias="DIAGRAM_N_MAX")

    # App
    app_env: str = Field("local", alias="APP_ENV")
    log_level: str = Field("INFO", alias="LOG_LEVEL")


settings = Settings()

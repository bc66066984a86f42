"""
Configuration management for Clean Ring Lab
"""

from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_prefix="RINGLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Application
    app_name: str = "Clean Ring Lab"
    app_version: str = "1.0.0"
    log_level: str = "INFO"
    log_format: str = "console"

    # Budgets
    max_order: int = 4096
    max_ideals: int = 200_000
    max_assignments: int = 1_000_000
    max_module_order: int = 1024

    # Catalog processing
    workers: int = 1
    findings_dir: str = "findings"

    # Monitoring
    metrics_path: Optional[str] = None

    @field_validator("max_order", "max_ideals", "max_assignments", "max_module_order", "workers")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("Budgets and worker counts must be positive")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        if v.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v not in {"console", "json"}:
            raise ValueError("log_format must be 'console' or 'json'")
        return v


class Budgets(BaseModel):
    """Resource caps threaded through every exhaustive search"""

    max_order: int = Field(4096, gt=0, description="Largest ring order a constructor may build")
    max_ideals: int = Field(200_000, gt=0, description="Largest ideal/submodule lattice")
    max_assignments: int = Field(1_000_000, gt=0, description="Backtracking assignments per search")
    max_module_order: int = Field(1024, gt=0, description="Largest module order")

    @classmethod
    def from_settings(cls, source: Optional[Settings] = None) -> "Budgets":
        source = source or settings
        return cls(
            max_order=source.max_order,
            max_ideals=source.max_ideals,
            max_assignments=source.max_assignments,
            max_module_order=source.max_module_order,
        )


# Global settings instance
settings = Settings()

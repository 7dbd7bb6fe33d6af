from enum import StrEnum
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Interpretation(StrEnum):
    """Reading of the multi-copy central formula at c >= 2."""

    LITERAL = "literal"
    REDUCED = "reduced"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="BAER_",
        extra="ignore",
    )

    # Homology oracle bounds
    max_order: int = Field(default=16, ge=1)
    h3_max_order: int = Field(default=12, ge=1)

    # Exact arithmetic
    max_entry_bits: int = Field(default=4096, ge=64)

    # Baer invariants
    nilpotency_class: int = 1
    interpretation: Interpretation = Interpretation.REDUCED

    # Corpus
    pair_enumeration_max_order: int = Field(default=12, ge=1)
    max_group_order: int = Field(default=64, ge=1)

    # Execution
    sequential: bool = False
    workers: int | None = None

    # Randomized property batches
    seed: int = 0
    symmetry_batch_size: int = Field(default=100, ge=0)
    cor44_batch_size: int = Field(default=50, ge=0)

    @field_validator("nilpotency_class")
    @classmethod
    def _check_class(cls, value: int) -> int:
        if value not in (1, 2):
            raise ValueError(f"nilpotency class must be 1 or 2, got {value}")
        return value

    def homology_bound(self, degree: int) -> int:
        """Largest group order the bar-complex oracle accepts in this degree."""
        return self.max_order if degree <= 2 else self.h3_max_order


@lru_cache
def get_settings() -> Settings:
    return Settings()

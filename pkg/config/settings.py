"""Pipeline settings using Pydantic."""
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Tunables of the canonization pipeline.

    Values are taken from keyword arguments only (the CLI passes its flags
    here); environment variables and dotenv files are never consulted.
    """

    # === Oracles ===
    oracle_limit: int = Field(default=20, ge=1, description="Largest graph handed to treewidth_exact")
    brute_force_limit: int = Field(default=16, ge=1, description="Largest graph handed to the VF2 oracle")

    # === Ordering ===
    permutation_cap: int = Field(default=40320, ge=1, description="Upper bound on |Pi(c)| (default 8!)")

    # === Descriptor decomposition thresholds ===
    small_factor: int = Field(default=2, ge=1, description="small(k) = small_factor * (k+1)")
    medium_factor: int = Field(default=8, ge=1, description="medium(k) = medium_factor * (k+1)^3")
    threshold_retries: int = Field(default=3, ge=0, description="Retries with doubled thresholds")

    # === Logging ===
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    model_config = SettingsConfigDict(extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def small(self, k: int, scale: int = 1) -> int:
        return self.small_factor * (k + 1) * scale

    def medium(self, k: int, scale: int = 1) -> int:
        return self.medium_factor * (k + 1) ** 3 * scale

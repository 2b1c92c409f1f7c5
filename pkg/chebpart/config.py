from pathlib import Path

from pydantic import BaseSettings, Field


class CacheSettings(BaseSettings):
    DIR: Path = Field(default_factory=lambda: Path.home() / '.cache' / 'chebpart')
    ENABLED: bool = True

    class Config:
        env_prefix = 'CHEBPART_CACHE_'


class CensusSettings(BaseSettings):
    THREADS: int = 0
    """Worker processes for the prime census; 0 means one per core."""

    CHUNK_SIZE: int = 50_000
    """Odd numbers per census chunk."""

    class Config:
        env_prefix = 'CHEBPART_CENSUS_'


class LimitSettings(BaseSettings):
    FACTOR_BOUND: int = 10 ** 7
    CHAIN_DEPTH: int = 64
    ORBIT_STEPS: int = 12
    TOLERANCE: float = 0.015

    class Config:
        env_prefix = 'CHEBPART_LIMITS_'


class ChebpartSettings(BaseSettings):
    LOG_LEVEL: str = 'INFO'
    CACHE: CacheSettings = Field(default_factory=CacheSettings)
    CENSUS: CensusSettings = Field(default_factory=CensusSettings)
    LIMITS: LimitSettings = Field(default_factory=LimitSettings)

    class Config:
        env_prefix = 'CHEBPART_'


config = ChebpartSettings()

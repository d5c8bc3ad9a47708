from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import BaseModel, ValidationError, validator

from .const import (
    CONFIG_ENV_VAR,
    DEFAULT_BASE_SCALE,
    DEFAULT_D_MAX,
    DEFAULT_EPS_MAX,
    DEFAULT_EPS_MIN,
    DEFAULT_EPS_POINTS,
    DEFAULT_K_MAX,
    DEFAULT_K_MIN,
    DEFAULT_MAX_15TO1_LEVELS,
    DEFAULT_PREFACTOR,
    DEFAULT_QUBITS_PER_D2,
    DEFAULT_ROUNDS_PER_D,
    MIN_DISTANCE,
    PLUMBING_EDGE,
)
from .exceptions import ConfigError
from .types import PlumbingMode

logger = logging.getLogger(__name__)

_PLUMBING_ALIASES = {"paper_simplified": PlumbingMode.SIMPLIFIED}


class CostModel(BaseModel):
    prefactor: float = DEFAULT_PREFACTOR
    base_scale: float = DEFAULT_BASE_SCALE
    plumbing_mode: PlumbingMode = PlumbingMode.SIMPLIFIED
    qubits_per_d2: float = DEFAULT_QUBITS_PER_D2
    rounds_per_d: float = DEFAULT_ROUNDS_PER_D

    class Config:
        frozen = True

    @validator("plumbing_mode", pre=True)
    def _plumbing_alias(cls, value: Any) -> Any:
        if isinstance(value, str):
            return _PLUMBING_ALIASES.get(value.strip().lower(), value)
        return value

    @validator("prefactor", "base_scale", "qubits_per_d2", "rounds_per_d")
    def _positive(cls, value: float, field: Any) -> float:
        if not value > 0:
            raise ValueError(f"{field.name} must be positive, got {value}")
        return value

    @property
    def volume_constant(self) -> float:
        """Qubit-rounds per d^3 for one plumbing piece."""
        return self.qubits_per_d2 * PLUMBING_EDGE * PLUMBING_EDGE * self.rounds_per_d * PLUMBING_EDGE


class SearchConfig(BaseModel):
    eps_min: float = DEFAULT_EPS_MIN
    eps_max: float = DEFAULT_EPS_MAX
    eps_points: int = DEFAULT_EPS_POINTS
    k_min: int = DEFAULT_K_MIN
    k_max: int = DEFAULT_K_MAX
    max_15to1_levels: int = DEFAULT_MAX_15TO1_LEVELS
    d_max: int = DEFAULT_D_MAX
    per_level_eps: bool = False
    include_retry_factor: bool = False

    class Config:
        frozen = True

    @validator("eps_min")
    def _eps_min_positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("eps_min must be positive")
        return value

    @validator("eps_max")
    def _eps_range(cls, value: float, values: Dict[str, Any]) -> float:
        if "eps_min" in values and value < values["eps_min"]:
            raise ValueError("eps_max must not be below eps_min")
        return value

    @validator("eps_points", "max_15to1_levels")
    def _at_least_one(cls, value: int, field: Any) -> int:
        if value < 1:
            raise ValueError(f"{field.name} must be at least 1")
        return value

    @validator("k_min")
    def _k_min_even(cls, value: int) -> int:
        if value < 2 or value % 2:
            raise ValueError("k_min must be an even integer >= 2")
        return value

    @validator("k_max")
    def _k_range(cls, value: int, values: Dict[str, Any]) -> int:
        if "k_min" in values and value < values["k_min"]:
            raise ValueError("k_max must not be below k_min")
        return value

    @validator("d_max")
    def _d_max_odd(cls, value: int) -> int:
        if value < MIN_DISTANCE or value % 2 == 0:
            raise ValueError("d_max must be an odd integer >= 3")
        return value

    @property
    def eps_grid(self) -> Tuple[float, ...]:
        """Log-spaced slack values; the default grid holds 2**(i * 5/16 - 5) for i in 0..32."""
        if self.eps_points == 1:
            return (self.eps_min,)
        ratio = self.eps_max / self.eps_min
        steps = self.eps_points - 1
        return tuple(self.eps_min * ratio ** (i / steps) for i in range(self.eps_points))

    @property
    def k_values(self) -> Tuple[int, ...]:
        return tuple(range(self.k_min, self.k_max + 1, 2))


class Settings(BaseModel):
    cost: CostModel = CostModel()
    search: SearchConfig = SearchConfig()
    threads: Optional[int] = None

    class Config:
        frozen = True

    @validator("threads")
    def _threads_positive(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("threads must be at least 1")
        return value

    @classmethod
    def parse_text(cls, text: str) -> "Settings":
        """Read ``section.key=value`` lines; ``#`` starts a comment."""
        sections: Dict[str, Dict[str, Any]] = {"cost": {}, "search": {}}
        top: Dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            try:
                target, name = _CONFIG_KEYS[key]
            except KeyError as e:
                raise ConfigError(f"line {lineno}: unknown configuration key {key!r}") from e
            if target == "run":
                top[name] = value
            else:
                sections[target][name] = value
        try:
            return cls(cost=CostModel(**sections["cost"]), search=SearchConfig(**sections["search"]), **top)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Settings":
        logger.debug("Loading configuration from %s", path)
        return cls.parse_text(Path(path).read_text())


_CONFIG_KEYS: Dict[str, Tuple[str, str]] = {
    "error_model.prefactor": ("cost", "prefactor"),
    "error_model.base_scale": ("cost", "base_scale"),
    "error_model.plumbing_mode": ("cost", "plumbing_mode"),
    "volume.qubits_per_d2": ("cost", "qubits_per_d2"),
    "volume.rounds_per_d": ("cost", "rounds_per_d"),
    **{f"search.{name}": ("search", name) for name in SearchConfig.__fields__},
    "run.threads": ("run", "threads"),
}


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Explicit path first, then the ``MFP_CONFIG`` environment variable, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return Settings()
    return Settings.load(path)


DEFAULT_COST_MODEL = CostModel()
DEFAULT_SEARCH = SearchConfig()

from __future__ import annotations

import enum
from typing import Any, Dict, NamedTuple, Optional, Protocol, Tuple


class _Strategy(NamedTuple):
    label: str
    block_levels: Optional[int]


@enum.unique
class Strategy(_Strategy, enum.Enum):
    ONLY_15TO1 = _Strategy("15-1", 0)
    ONE_BLOCK = _Strategy("block", 1)
    TWO_BLOCK = _Strategy("block2", 2)
    BEST_OF_ALL = _Strategy("best", None)

    @classmethod
    def from_string(cls, name: str) -> "Strategy":
        for member in cls:
            if member.label == name or member.name.lower() == name.lower():
                return member
        raise ValueError(f"Unknown value {name} for enum {cls.__name__}")

    @classmethod
    def concrete(cls) -> Tuple["Strategy", ...]:
        return tuple(s for s in cls if s.block_levels is not None)

    @property
    def is_concrete(self) -> bool:
        return self.block_levels is not None

    def __str__(self) -> str:
        return self.label


@enum.unique
class ProtocolKind(enum.Enum):
    FIFTEEN_TO_ONE = "15-1"
    BLOCK = "block"

    def __str__(self) -> str:
        return self.value


@enum.unique
class PlumbingMode(str, enum.Enum):
    SIMPLIFIED = "simplified"
    DERIVATION_EXACT = "derivation_exact"

    def __str__(self) -> str:
        return self.value


@enum.unique
class OutputFormat(str, enum.Enum):
    HUMAN = "human"
    JSON = "json"
    CSV = "csv"

    @classmethod
    def from_string(cls, name: str) -> "OutputFormat":
        try:
            return cls(name.lower())
        except ValueError as e:
            raise ValueError(f"Unknown value {name} for enum {cls.__name__}") from e

    def __str__(self) -> str:
        return self.value


class ISerializable(Protocol):
    def to_dict(self) -> Dict[str, Any]:
        ...

    def to_json(self) -> str:
        ...

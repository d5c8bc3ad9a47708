from __future__ import annotations

import contextlib
import json
import math
from typing import Any, Iterator, Optional


class Formatter:
    """Indent-aware text buffer for reports and circuit files."""

    _indent_level: int
    _indent_str: str
    _buffer: str

    def __init__(self, indent_level: int = 0, indent_str: str = "  ") -> None:
        self._indent_str = indent_str
        self._indent_level = indent_level
        self._buffer = ""

    @property
    def indent_level(self) -> int:
        return self._indent_level

    def __str__(self) -> str:
        return self._buffer

    @contextlib.contextmanager
    def block(self, heading: Optional[str] = None, delta: int = 1) -> Iterator[None]:
        if heading:
            self.writeline(heading)
        self._indent_level += delta
        yield
        self._indent_level -= delta

    def write(self, s: Any) -> "Formatter":
        self._buffer += str(s)
        return self

    def indent(self) -> "Formatter":
        return self.write(self._indent_str * self._indent_level)

    def writeline(self, s: Any = "") -> "Formatter":
        if s == "":
            return self.newline()
        return self.indent().write(s).newline()

    def writelines(self, s: Any) -> "Formatter":
        for line in str(s).split("\n"):
            self.writeline(line)
        return self

    def newline(self) -> "Formatter":
        return self.write("\n")


def dumps(data: Any) -> str:
    """Canonical JSON rendering shared by the library results and the CLI."""
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False)


def finite_or_none(value: float) -> Optional[float]:
    """JSON has no NaN; undefined rates are written as null."""
    return value if math.isfinite(value) else None


def sci(value: Optional[float], digits: int = 2) -> str:
    """Scientific notation with ``digits`` significant figures; ``-`` for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return f"{value:.{digits - 1}e}"

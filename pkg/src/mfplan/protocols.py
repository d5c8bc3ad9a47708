from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Any, Dict, Optional

from typing_extensions import assert_never

from .const import (
    BLOCK_ERROR_EXPONENT,
    BLOCK_ERROR_EXTRA,
    BLOCK_EXTRA_INPUTS,
    BLOCK_INPUTS_PER_OUTPUT,
    BLOCK_MIN_K,
    BLOCK_VOLUME_OFFSET,
    BLOCK_VOLUME_PER_OUTPUT,
    FIFTEEN_ERROR_COEFFICIENT,
    FIFTEEN_ERROR_EXPONENT,
    FIFTEEN_INPUTS,
    FIFTEEN_VOLUME,
    REJECTION_WARNING_THRESHOLD,
)
from .error_model import check_probability
from .exceptions import DegenerateTargetError, InvalidKError, RejectionValidityWarning
from .types import ProtocolKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProtocolSpec:
    """One distillation protocol: either 15-to-1 or the block code with ``k`` outputs."""

    kind: ProtocolKind
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is ProtocolKind.BLOCK:
            k = self.k
            if isinstance(k, bool) or not isinstance(k, int) or k < BLOCK_MIN_K or k % 2:
                raise InvalidKError(f"k must be even and at least {BLOCK_MIN_K}, got {k}")
        elif self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            if self.k is not None:
                raise InvalidKError("15-1 takes no block size")
        else:
            assert_never(self.kind)

    @classmethod
    def fifteen_to_one(cls) -> "ProtocolSpec":
        return cls(ProtocolKind.FIFTEEN_TO_ONE)

    @classmethod
    def block(cls, k: int) -> "ProtocolSpec":
        return cls(ProtocolKind.BLOCK, k)

    @property
    def block_size(self) -> int:
        if self.k is None:
            raise InvalidKError("15-1 has no block size")
        return self.k

    @property
    def n_inputs(self) -> int:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return FIFTEEN_INPUTS
        return BLOCK_INPUTS_PER_OUTPUT * self.block_size + BLOCK_EXTRA_INPUTS

    @property
    def n_outputs(self) -> int:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return 1
        return self.block_size

    @property
    def error_coefficient(self) -> int:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return FIFTEEN_ERROR_COEFFICIENT
        return BLOCK_INPUTS_PER_OUTPUT * self.block_size + BLOCK_ERROR_EXTRA

    @property
    def error_exponent(self) -> int:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return FIFTEEN_ERROR_EXPONENT
        return BLOCK_ERROR_EXPONENT

    @property
    def rejection_coefficient(self) -> int:
        # every single input fault trips a check
        return self.n_inputs

    @property
    def geometric_volume(self) -> int:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return FIFTEEN_VOLUME
        return BLOCK_VOLUME_PER_OUTPUT * self.block_size + BLOCK_VOLUME_OFFSET

    @property
    def has_transversal_sx(self) -> bool:
        """Whether the code admits a transversal S^dagger X without correction (k = 2 mod 4)."""
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return True
        return self.block_size % 4 == 2

    @property
    def label(self) -> str:
        if self.kind is ProtocolKind.FIFTEEN_TO_ONE:
            return "15-1"
        return f"block({self.k})"

    def __str__(self) -> str:
        return self.label

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": str(self.kind),
            "k": self.k,
            "n_inputs": self.n_inputs,
            "n_outputs": self.n_outputs,
            "geometric_volume": self.geometric_volume,
        }


FIFTEEN_TO_ONE = ProtocolSpec.fifteen_to_one()


def parse_protocol(text: str) -> ProtocolSpec:
    """``15-1``, ``block:4`` or ``block(4)``."""
    value = text.strip().lower()
    if value in ("15-1", "15to1", "fifteen_to_one"):
        return FIFTEEN_TO_ONE
    for prefix, suffix in (("block:", ""), ("block(", ")")):
        if value.startswith(prefix) and value.endswith(suffix):
            digits = value[len(prefix) : len(value) - len(suffix)]
            try:
                k = int(digits)
            except ValueError as e:
                raise InvalidKError(f"block size must be an integer, got {digits!r}") from e
            return ProtocolSpec.block(k)
    raise ValueError(f"Unknown protocol {text!r}")


def output_error(spec: ProtocolSpec, p_in: float) -> float:
    """Leading-order error of each output given independent input errors ``p_in``."""
    p_in = check_probability(p_in, "input error", allow_zero=True)
    return min(1.0, spec.error_coefficient * p_in**spec.error_exponent)


def required_input_error(spec: ProtocolSpec, p_target: float, eps: float) -> float:
    """Largest input error whose output error leaves ``eps / (1 + eps)`` of ``p_target`` for logical errors."""
    p_target = check_probability(p_target, "target error")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    x = p_target / (spec.error_coefficient * (1 + eps))
    result = math.sqrt(x) if spec.error_exponent == 2 else x ** (1.0 / spec.error_exponent)
    if result >= 1:
        raise DegenerateTargetError(
            f"{spec.label} target {p_target:g} is satisfied by any input (required input error {result:.3g} >= 1)"
        )
    return result


def geometric_volume(spec: ProtocolSpec) -> int:
    return spec.geometric_volume


def rejection_probability(spec: ProtocolSpec, p_in: float) -> float:
    """First-order probability that a run is discarded, capped at 1."""
    p_in = check_probability(p_in, "input error", allow_zero=True)
    rate = min(1.0, spec.rejection_coefficient * p_in)
    if rate > REJECTION_WARNING_THRESHOLD:
        logger.warning("first-order rejection estimate %.3g for %s is outside its validity range", rate, spec.label)
        warnings.warn(
            f"rejection estimate {rate:.3g} for {spec.label} is not small; the first-order formula is unreliable",
            RejectionValidityWarning,
            stacklevel=2,
        )
    return rate

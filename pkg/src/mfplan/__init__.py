"""Magic-state distillation factory planning and block-code circuit verification."""
from .config import CostModel, SearchConfig, Settings, load_settings
from .error_model import (
    injection_gate_error,
    logical_error_per_round,
    min_distance,
    min_distance_array,
    plumbing_piece_error,
)
from .exceptions import (
    CircuitError,
    CircuitParseError,
    ConfigError,
    DegenerateTargetError,
    FitRangeWarning,
    InfeasibleError,
    InvalidDistanceError,
    InvalidKError,
    InvalidProbabilityError,
    MfplanError,
    RejectionValidityWarning,
    TooLargeError,
    TransversalityWarning,
)
from .protocols import (
    FIFTEEN_TO_ONE,
    ProtocolSpec,
    geometric_volume,
    output_error,
    parse_protocol,
    rejection_probability,
    required_input_error,
)
from .types import PlumbingMode, ProtocolKind, Strategy

__all__ = [
    "FIFTEEN_TO_ONE",
    "CircuitError",
    "CircuitParseError",
    "ConfigError",
    "CostModel",
    "DegenerateTargetError",
    "FitRangeWarning",
    "InfeasibleError",
    "InvalidDistanceError",
    "InvalidKError",
    "InvalidProbabilityError",
    "MfplanError",
    "PlumbingMode",
    "ProtocolKind",
    "ProtocolSpec",
    "RejectionValidityWarning",
    "SearchConfig",
    "Settings",
    "Strategy",
    "TooLargeError",
    "TransversalityWarning",
    "geometric_volume",
    "injection_gate_error",
    "load_settings",
    "logical_error_per_round",
    "min_distance",
    "min_distance_array",
    "output_error",
    "parse_protocol",
    "plumbing_piece_error",
    "rejection_probability",
    "required_input_error",
]

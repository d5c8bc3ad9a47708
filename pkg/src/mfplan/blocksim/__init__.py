from .census import (
    ExactStats,
    FaultCensus,
    ValidationReport,
    WeightCensus,
    enumerate_faults,
    exact_statistics,
    validate_circuit,
    weight_polynomials,
)
from .circuit import CircuitIR, Cnot, MeasRole, MeasX, Prep, PrepBasis, TSite, delete_check, generate_block_circuit
from .frame import FrameResult, simulate_frame, simulate_patterns, site_signatures
from .montecarlo import SimStats, SimulationSummary, run_monte_carlo, shard_ranges, simulate
from .text import parse_circuit, serialize_circuit

__all__ = [
    "CircuitIR",
    "Cnot",
    "ExactStats",
    "FaultCensus",
    "FrameResult",
    "MeasRole",
    "MeasX",
    "Prep",
    "PrepBasis",
    "SimStats",
    "SimulationSummary",
    "TSite",
    "ValidationReport",
    "WeightCensus",
    "delete_check",
    "enumerate_faults",
    "exact_statistics",
    "generate_block_circuit",
    "parse_circuit",
    "run_monte_carlo",
    "serialize_circuit",
    "shard_ranges",
    "simulate",
    "simulate_frame",
    "simulate_patterns",
    "site_signatures",
    "validate_circuit",
    "weight_polynomials",
]

"""Z-error propagation in the Pauli frame.

Each qubit carries one Z bit. A fault at a T site toggles its qubit's bit, a CNOT XORs the target's bit into the
control's bit, and an X-basis readout flips exactly when the measured qubit's bit is set. Clifford gates are noiseless,
so the noiseless reference run has every bit zero and the bits below are already flips relative to it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ..exceptions import CircuitError
from .circuit import CircuitIR, Cnot, MeasRole, MeasX, Prep, TSite


@dataclass(frozen=True)
class FrameResult:
    check_flips: Tuple[int, ...]
    output_errors: Tuple[int, ...]

    @property
    def accepted(self) -> bool:
        return not any(self.check_flips)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check_flips": list(self.check_flips),
            "output_errors": list(self.output_errors),
            "accepted": self.accepted,
        }


def simulate_patterns(circuit: CircuitIR, patterns: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Propagate a batch of fault patterns.

    ``patterns`` has shape ``(t_site_count, shots)``; returns check flips ``(3, shots)`` and output errors
    ``(k, shots)`` as uint8 arrays.
    """
    patterns = np.asarray(patterns, dtype=np.uint8)
    if patterns.ndim != 2 or patterns.shape[0] != circuit.t_site_count:
        raise CircuitError(f"expected patterns of shape ({circuit.t_site_count}, shots), got {patterns.shape}")
    shots = patterns.shape[1]
    check_column = {c: i for i, c in enumerate(circuit.check_ids)}
    z = np.zeros((circuit.n_qubits, shots), dtype=np.uint8)
    checks = np.zeros((len(check_column), shots), dtype=np.uint8)
    byproducts = np.zeros((circuit.k, shots), dtype=np.uint8)

    for op in circuit.ops:
        if isinstance(op, TSite):
            z[op.qubit] ^= patterns[op.site]
        elif isinstance(op, Cnot):
            z[op.control] ^= z[op.target]
        elif isinstance(op, MeasX):
            if op.role is MeasRole.CHECK:
                checks[check_column[op.index]] ^= z[op.qubit]
            else:
                byproducts[op.index] ^= z[op.qubit]
        elif isinstance(op, Prep):
            z[op.qubit] = 0

    outputs = z[list(circuit.output_wires)] ^ byproducts
    return checks, outputs


def simulate_frame(circuit: CircuitIR, pattern: Sequence[int]) -> FrameResult:
    bits = np.asarray(pattern, dtype=np.uint8).reshape(-1, 1)
    if bits.shape[0] != circuit.t_site_count:
        raise CircuitError(f"pattern has {bits.shape[0]} bits, circuit has {circuit.t_site_count} T sites")
    checks, outputs = simulate_patterns(circuit, bits)
    return FrameResult(tuple(int(x) for x in checks[:, 0]), tuple(int(x) for x in outputs[:, 0]))


def site_signatures(circuit: CircuitIR) -> Tuple[np.ndarray, np.ndarray]:
    """Check and output flips caused by a lone fault at each site, as ``(sites, 3)`` and ``(sites, k)`` arrays."""
    checks, outputs = simulate_patterns(circuit, np.eye(circuit.t_site_count, dtype=np.uint8))
    return checks.T.copy(), outputs.T.copy()

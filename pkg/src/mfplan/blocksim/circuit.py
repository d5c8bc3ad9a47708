"""Intermediate representation of the block-code distillation circuit and its generator.

Layout for ``k`` outputs: qubit 0 is the check qubit of the transversal T^dagger X T measurement, qubits
``1 .. k+4`` hold the block code ``b_0 .. b_{k+3}`` and qubits ``k+5 .. 2k+4`` are the output wires.
"""
from __future__ import annotations

import dataclasses
import enum
import logging
import warnings
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple, Union

from ..const import BLOCK_EXTRA_INPUTS, BLOCK_INPUTS_PER_OUTPUT, BYPRODUCT_SUPPORT_SIZE, CHECK_COUNT
from ..exceptions import CircuitError, TransversalityWarning
from ..protocols import ProtocolSpec

logger = logging.getLogger(__name__)


@enum.unique
class PrepBasis(enum.Enum):
    PLUS = "PREP+"
    ZERO = "PREP0"
    MAGIC = "PREPA"


@enum.unique
class MeasRole(enum.Enum):
    CHECK = "CHECK"
    OUT_SUPPORT = "OUT-SUPPORT"


@dataclass(frozen=True)
class Prep:
    qubit: int
    basis: PrepBasis = PrepBasis.PLUS


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int


@dataclass(frozen=True)
class TSite:
    """A T gate; the only place a Z fault can enter."""

    qubit: int
    site: int


@dataclass(frozen=True)
class MeasX:
    """One X-basis readout feeding check ``index`` or the byproduct of output ``index``."""

    qubit: int
    role: MeasRole
    index: int


Op = Union[Prep, Cnot, TSite, MeasX]


@dataclass(frozen=True)
class CircuitIR:
    n_qubits: int
    ops: Tuple[Op, ...]
    output_wires: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.output_wires)

    @property
    def t_site_count(self) -> int:
        return sum(isinstance(op, TSite) for op in self.ops)

    @property
    def check_ids(self) -> Tuple[int, ...]:
        return tuple(sorted({op.index for op in self.ops if isinstance(op, MeasX) and op.role is MeasRole.CHECK}))

    @property
    def byproduct_supports(self) -> Tuple[FrozenSet[int], ...]:
        supports: List[set] = [set() for _ in self.output_wires]
        for op in self.ops:
            if isinstance(op, MeasX) and op.role is MeasRole.OUT_SUPPORT:
                supports[op.index] ^= {op.qubit}
        return tuple(frozenset(s) for s in supports)

    def check(self) -> None:
        """Raise :class:`CircuitError` unless the structural invariants hold."""
        sites = sorted(op.site for op in self.ops if isinstance(op, TSite))
        if sites != list(range(len(sites))):
            raise CircuitError(f"T site ids must be 0..{len(sites) - 1} without gaps or repeats")
        if len(self.check_ids) != CHECK_COUNT:
            raise CircuitError(f"expected {CHECK_COUNT} checks, found {len(self.check_ids)}")
        for op in self.ops:
            qubits = (op.control, op.target) if isinstance(op, Cnot) else (op.qubit,)
            if any(not 0 <= q < self.n_qubits for q in qubits):
                raise CircuitError(f"{op} touches a qubit outside 0..{self.n_qubits - 1}")
            if isinstance(op, Cnot) and op.control == op.target:
                raise CircuitError(f"{op} has the same control and target")
            if isinstance(op, MeasX) and op.role is MeasRole.OUT_SUPPORT and not 0 <= op.index < self.k:
                raise CircuitError(f"{op} refers to an undeclared output")
        expected_sites = BLOCK_INPUTS_PER_OUTPUT * self.k + BLOCK_EXTRA_INPUTS
        if len(sites) != expected_sites:
            raise CircuitError(f"{self.k} outputs need {expected_sites} T sites, found {len(sites)}")
        for n, support in enumerate(self.byproduct_supports):
            if len(support) != BYPRODUCT_SUPPORT_SIZE:
                raise CircuitError(
                    f"output {n} needs a {BYPRODUCT_SUPPORT_SIZE}-qubit byproduct support, got {sorted(support)}"
                )


def stabilizer_supports(k: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Block-qubit indices of the two X stabilizers X_0 X_2 .. X_{k+2} and X_1 X_2 .. X_{k+1} X_{k+3}."""
    first = (0,) + tuple(range(2, k + 3))
    second = (1,) + tuple(range(2, k + 2)) + (k + 3,)
    return first, second


def logical_x_support(k: int, n: int) -> Tuple[int, ...]:
    return (n + 2, k + 2, k + 3)


def generate_block_circuit(k: int) -> CircuitIR:
    """The distillation circuit consuming 3k + 8 T gates and producing ``k`` outputs."""
    spec = ProtocolSpec.block(k)
    if not spec.has_transversal_sx:
        warnings.warn(
            f"k={k} is not 2 mod 4; the transversal S^dagger X needs a correction for this block size",
            TransversalityWarning,
            stacklevel=2,
        )

    top = 0
    b = list(range(1, k + 5))
    wires = list(range(k + 5, 2 * k + 5))
    first, second = stabilizer_supports(k)
    ops: List[Op] = []
    site = 0

    def t_layer(qubits: Sequence[int]) -> None:
        nonlocal site
        for q in qubits:
            ops.append(TSite(q, site))
            site += 1

    # inputs
    ops += [Prep(top), Prep(b[0]), Prep(b[1]), Prep(b[k + 2], PrepBasis.ZERO), Prep(b[k + 3], PrepBasis.ZERO)]
    for n in range(k):
        ops.append(Prep(b[n + 2], PrepBasis.MAGIC))
        t_layer([b[n + 2]])
    ops += [Prep(w, PrepBasis.ZERO) for w in wires]

    # encode
    for n in range(k):
        ops += [Cnot(b[n + 2], b[k + 2]), Cnot(b[n + 2], b[k + 3])]
    ops += [Cnot(b[0], b[j]) for j in first[1:]]
    ops += [Cnot(b[1], b[j]) for j in second[1:]]

    # transversal T^dagger X T, controlled by the check qubit
    t_layer(b)
    ops += [Cnot(top, q) for q in b]
    t_layer(b)
    ops.append(MeasX(top, MeasRole.CHECK, 0))

    # copy each logical Z parity onto its output wire
    for n, w in enumerate(wires):
        ops += [Cnot(b[0], w), Cnot(b[1], w), Cnot(b[n + 2], w)]

    # X-basis readout of the block
    ops += [MeasX(b[j], MeasRole.CHECK, 1) for j in first]
    ops += [MeasX(b[j], MeasRole.CHECK, 2) for j in second]
    for n in range(k):
        ops += [MeasX(b[j], MeasRole.OUT_SUPPORT, n) for j in logical_x_support(k, n)]

    circuit = CircuitIR(n_qubits=2 * k + 5, ops=tuple(ops), output_wires=tuple(wires))
    logger.debug("generated block circuit k=%d: %d qubits, %d ops, %d T sites", k, circuit.n_qubits, len(ops), site)
    return circuit


def delete_check(circuit: CircuitIR, check_id: int) -> CircuitIR:
    """Disable one check: its readouts are replaced by a single read of a fresh, idle |+> qubit."""
    if check_id not in circuit.check_ids:
        raise CircuitError(f"circuit has no check {check_id}")
    idle = circuit.n_qubits
    ops: List[Op] = [Prep(idle)]
    for op in circuit.ops:
        if isinstance(op, MeasX) and op.role is MeasRole.CHECK and op.index == check_id:
            continue
        ops.append(op)
    ops.append(MeasX(idle, MeasRole.CHECK, check_id))
    return dataclasses.replace(circuit, n_qubits=idle + 1, ops=tuple(ops))

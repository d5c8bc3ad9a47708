"""Line-oriented circuit text format.

One operation per line, ``#`` starts a comment::

    QUBITS <n>
    PREP+ <q> | PREP0 <q> | PREPA <q>
    CNOT <control> <target>
    T <q> <site_id>
    MEASX <q> CHECK <check_id>
    MEASX <q> OUT-SUPPORT <output_id>
    OUTPUT <output_id> <q>
"""
from __future__ import annotations

from typing import Dict, List, Optional, Set

from ..exceptions import CircuitError, CircuitParseError
from ..utils import Formatter
from .circuit import CircuitIR, Cnot, MeasRole, MeasX, Op, Prep, PrepBasis, TSite

_ARITY = {"QUBITS": 1, "PREP+": 1, "PREP0": 1, "PREPA": 1, "CNOT": 2, "T": 2, "MEASX": 3, "OUTPUT": 2}


def serialize_circuit(circuit: CircuitIR) -> str:
    out = Formatter()
    out.writeline(f"# block-code distillation circuit: k={circuit.k}, {circuit.t_site_count} T sites")
    out.writeline(f"QUBITS {circuit.n_qubits}")
    for op in circuit.ops:
        if isinstance(op, Prep):
            out.writeline(f"{op.basis.value} {op.qubit}")
        elif isinstance(op, Cnot):
            out.writeline(f"CNOT {op.control} {op.target}")
        elif isinstance(op, TSite):
            out.writeline(f"T {op.qubit} {op.site}")
        else:
            out.writeline(f"MEASX {op.qubit} {op.role.value} {op.index}")
    for n, wire in enumerate(circuit.output_wires):
        out.writeline(f"OUTPUT {n} {wire}")
    return str(out)


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token, 10)
    except ValueError as e:
        raise CircuitParseError(f"{what} must be a decimal integer, got {token!r}", lineno) from e
    if value < 0:
        raise CircuitParseError(f"{what} must be nonnegative, got {value}", lineno)
    return value


def parse_circuit(text: str) -> CircuitIR:  # noqa: C901
    n_qubits: Optional[int] = None
    ops: List[Op] = []
    outputs: Dict[int, int] = {}
    sites: Set[int] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        opcode, args = tokens[0].upper(), tokens[1:]
        if opcode not in _ARITY:
            raise CircuitParseError(f"unknown opcode {tokens[0]!r}", lineno)
        if len(args) != _ARITY[opcode]:
            raise CircuitParseError(f"{opcode} takes {_ARITY[opcode]} operands, got {len(args)}", lineno)

        if opcode == "QUBITS":
            if n_qubits is not None:
                raise CircuitParseError("QUBITS declared twice", lineno)
            n_qubits = _int(args[0], lineno, "qubit count")
            continue
        if n_qubits is None:
            raise CircuitParseError("QUBITS must come before any operation", lineno)

        size = n_qubits

        def qubit(token: str) -> int:
            q = _int(token, lineno, "qubit index")
            if q >= size:
                raise CircuitParseError(f"qubit {q} out of range 0..{size - 1}", lineno)
            return q

        if opcode in ("PREP+", "PREP0", "PREPA"):
            ops.append(Prep(qubit(args[0]), PrepBasis(opcode)))
        elif opcode == "CNOT":
            control, target = qubit(args[0]), qubit(args[1])
            if control == target:
                raise CircuitParseError(f"CNOT control and target are both {control}", lineno)
            ops.append(Cnot(control, target))
        elif opcode == "T":
            site = _int(args[1], lineno, "site id")
            if site in sites:
                raise CircuitParseError(f"duplicate site id {site}", lineno)
            sites.add(site)
            ops.append(TSite(qubit(args[0]), site))
        elif opcode == "MEASX":
            q = qubit(args[0])
            try:
                role = MeasRole(args[1].upper())
            except ValueError as e:
                raise CircuitParseError(f"MEASX role must be CHECK or OUT-SUPPORT, got {args[1]!r}", lineno) from e
            ops.append(MeasX(q, role, _int(args[2], lineno, "index")))
        else:
            output = _int(args[0], lineno, "output id")
            if output in outputs:
                raise CircuitParseError(f"output {output} declared twice", lineno)
            outputs[output] = qubit(args[1])

    if n_qubits is None:
        raise CircuitParseError("missing QUBITS declaration")
    if sorted(outputs) != list(range(len(outputs))):
        raise CircuitParseError(f"output ids must be 0..{len(outputs) - 1}")
    circuit = CircuitIR(n_qubits=n_qubits, ops=tuple(ops), output_wires=tuple(outputs[n] for n in range(len(outputs))))
    try:
        circuit.check()
    except CircuitError as e:
        raise CircuitParseError(str(e)) from e
    return circuit

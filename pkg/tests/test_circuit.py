import dataclasses
import re
import warnings

import pytest

from mfplan.blocksim import (
    Cnot,
    MeasRole,
    MeasX,
    Prep,
    TSite,
    delete_check,
    generate_block_circuit,
    parse_circuit,
    serialize_circuit,
)
from mfplan.exceptions import CircuitError, CircuitParseError, InvalidKError, TransversalityWarning


@pytest.mark.parametrize("k", [2, 4, 6, 10])
def test_generated_shape(k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TransversalityWarning)
        circuit = generate_block_circuit(k)
    assert circuit.k == k
    assert circuit.n_qubits == 2 * k + 5
    assert circuit.t_site_count == 3 * k + 8
    assert circuit.check_ids == (0, 1, 2)
    assert circuit.output_wires == tuple(range(k + 5, 2 * k + 5))
    assert circuit.byproduct_supports == tuple(frozenset({n + 3, k + 3, k + 4}) for n in range(k))
    circuit.check()


def test_input_sites_come_first(circuit_k4):
    sites = [op for op in circuit_k4.ops if isinstance(op, TSite)]
    assert [s.site for s in sorted(sites, key=lambda s: s.site)][:4] == [0, 1, 2, 3]
    assert [s.qubit for s in sorted(sites, key=lambda s: s.site)][:4] == [3, 4, 5, 6]


def test_transversality_warning():
    with pytest.warns(TransversalityWarning):
        generate_block_circuit(4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        generate_block_circuit(6)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_invalid_k(k):
    with pytest.raises(InvalidKError):
        generate_block_circuit(k)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_text_round_trip(k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TransversalityWarning)
        circuit = generate_block_circuit(k)
    text = serialize_circuit(circuit)
    assert text.startswith("# block-code distillation circuit")
    assert parse_circuit(text) == circuit
    assert serialize_circuit(parse_circuit(text)) == text


def test_parse_ignores_case_comments_and_blank_lines(circuit_k2):
    lines = serialize_circuit(circuit_k2).splitlines()
    text = "\n\n".join(f"  {line.lower()}   # edited" for line in lines)
    circuit = parse_circuit(text)
    assert circuit == circuit_k2
    assert {type(op) for op in circuit.ops} == {Prep, Cnot, TSite, MeasX}


@pytest.mark.parametrize(
    "text,message",
    [
        ("QUBITS 5\nCNOT 3 3\n", "line 2: CNOT control and target are both 3"),
        ("QUBITS 5\nHADAMARD 1\n", "line 2: unknown opcode 'HADAMARD'"),
        ("QUBITS 5\nCNOT 1\n", "line 2: CNOT takes 2 operands, got 1"),
        ("QUBITS 5\n\n# note\nT 7 0\n", "line 4: qubit 7 out of range 0..4"),
        ("QUBITS 5\nT 1 0\nT 2 0\n", "line 3: duplicate site id 0"),
        ("T 1 0\n", "line 1: QUBITS must come before any operation"),
        ("QUBITS 5\nQUBITS 6\n", "line 2: QUBITS declared twice"),
        ("QUBITS 5\nMEASX 1 PARITY 0\n", "line 2: MEASX role must be CHECK or OUT-SUPPORT"),
        ("QUBITS 5\nT x 0\n", "line 2: qubit index must be a decimal integer"),
        ("QUBITS 5\nOUTPUT 0 4\nOUTPUT 0 3\n", "line 3: output 0 declared twice"),
        ("# empty\n", "missing QUBITS declaration"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(CircuitParseError) as info:
        parse_circuit(text)
    assert message in str(info.value)


def test_parse_rejects_missing_check(circuit_k2):
    lines = [line for line in serialize_circuit(circuit_k2).splitlines() if not line.endswith("CHECK 2")]
    with pytest.raises(CircuitParseError, match="expected 3 checks, found 2"):
        parse_circuit("\n".join(lines))


def test_parse_rejects_wrong_site_count(circuit_k2):
    lines = [line for line in serialize_circuit(circuit_k2).splitlines() if not re.fullmatch(r"T \d+ 13", line)]
    assert len(lines) == len(serialize_circuit(circuit_k2).splitlines()) - 1
    with pytest.raises(CircuitParseError, match="2 outputs need 14 T sites, found 13"):
        parse_circuit("\n".join(lines))


def test_parse_rejects_short_byproduct_support(circuit_k2):
    lines = serialize_circuit(circuit_k2).splitlines()
    lines.remove(next(line for line in lines if line.endswith("OUT-SUPPORT 0")))
    with pytest.raises(CircuitParseError, match="output 0 needs a 3-qubit byproduct support"):
        parse_circuit("\n".join(lines))


def test_check_rejects_extra_t_site(circuit_k2):
    extra = dataclasses.replace(circuit_k2, ops=circuit_k2.ops + (TSite(1, 14),))
    with pytest.raises(CircuitError, match="need 14 T sites, found 15"):
        extra.check()


def test_parse_rejects_output_gaps(circuit_k2):
    text = serialize_circuit(circuit_k2).replace("OUTPUT 1", "OUTPUT 2")
    with pytest.raises(CircuitParseError, match="output ids"):
        parse_circuit(text)


def test_delete_check(circuit_k4):
    mutated = delete_check(circuit_k4, 1)
    assert mutated.n_qubits == circuit_k4.n_qubits + 1
    assert mutated.check_ids == (0, 1, 2)
    assert sum(isinstance(op, MeasX) and op.role is MeasRole.CHECK and op.index == 1 for op in mutated.ops) == 1
    assert parse_circuit(serialize_circuit(mutated)) == mutated
    with pytest.raises(CircuitError):
        delete_check(circuit_k4, 5)

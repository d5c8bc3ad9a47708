from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np

from ..const import ENUMERATION_LIMIT, EXACT_SITE_LIMIT, PATTERN_CHUNK
from ..error_model import check_probability
from ..exceptions import TooLargeError
from ..protocols import ProtocolSpec
from ..utils import dumps, finite_or_none
from .circuit import CircuitIR
from .frame import simulate_patterns

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightCensus:
    weight: int
    total: int
    detected: int
    undetected_benign: int
    undetected_harmful: int
    harmful_per_output: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weight": self.weight,
            "total": self.total,
            "detected": self.detected,
            "undetected_benign": self.undetected_benign,
            "undetected_harmful": self.undetected_harmful,
            "harmful_per_output": list(self.harmful_per_output),
        }


@dataclass(frozen=True)
class FaultCensus:
    """Classification of every fault pattern up to a given weight."""

    k: int
    n_sites: int
    rows: Tuple[WeightCensus, ...]
    weight1_escapes: Tuple[int, ...] = ()

    def row(self, weight: int) -> WeightCensus:
        for r in self.rows:
            if r.weight == weight:
                return r
        raise KeyError(f"weight {weight} was not enumerated")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "n_sites": self.n_sites,
            "weights": [r.to_dict() for r in self.rows],
            "weight1_escapes": list(self.weight1_escapes),
        }


def _combination_chunks(n: int, w: int) -> Iterator[np.ndarray]:
    combos = itertools.combinations(range(n), w)
    while True:
        chunk = np.array(list(itertools.islice(combos, PATTERN_CHUNK)), dtype=np.int64)
        if chunk.size == 0:
            return
        yield chunk.reshape(-1, w)


def enumerate_faults(circuit: CircuitIR, max_weight: int = 2) -> FaultCensus:
    n = circuit.t_site_count
    if not 1 <= max_weight <= 3:
        raise ValueError(f"max_weight must be 1, 2 or 3, got {max_weight}")
    count = sum(comb(n, w) for w in range(1, max_weight + 1))
    if count > ENUMERATION_LIMIT:
        raise TooLargeError(f"{count} fault patterns exceed the enumeration limit {ENUMERATION_LIMIT}; use Monte Carlo")

    rows: List[WeightCensus] = []
    escapes: List[int] = []
    for w in range(1, max_weight + 1):
        detected = benign = harmful = 0
        per_output = np.zeros(circuit.k, dtype=np.int64)
        for combos in _combination_chunks(n, w):
            patterns = np.zeros((n, len(combos)), dtype=np.uint8)
            patterns[combos.T, np.arange(len(combos))] = 1
            checks, outputs = simulate_patterns(circuit, patterns)
            caught = checks.any(axis=0)
            wrong = outputs.astype(bool) & ~caught
            detected += int(caught.sum())
            harmful += int(wrong.any(axis=0).sum())
            benign += int((~caught & ~wrong.any(axis=0)).sum())
            per_output += wrong.sum(axis=1)
            if w == 1:
                escapes += [int(s) for s in combos[~caught, 0]]
        rows.append(WeightCensus(w, comb(n, w), detected, benign, harmful, tuple(int(x) for x in per_output)))
        logger.debug("weight %d: %d detected, %d undetected harmful", w, detected, harmful)
    return FaultCensus(k=circuit.k, n_sites=n, rows=tuple(rows), weight1_escapes=tuple(escapes))


@dataclass(frozen=True)
class WeightPolynomials:
    """Pattern counts by weight: accepted, rejected, and accepted-with-output-n-wrong."""

    n_sites: int
    accepted: Tuple[int, ...]
    rejected: Tuple[int, ...]
    joint: Tuple[Tuple[int, ...], ...]

    @staticmethod
    def evaluate(counts: Tuple[int, ...], p: float) -> float:
        q = 1.0 - p
        n = len(counts) - 1
        return sum(c * p**w * q ** (n - w) for w, c in enumerate(counts) if c)


@functools.lru_cache(maxsize=16)
def weight_polynomials(circuit: CircuitIR) -> WeightPolynomials:
    n = circuit.t_site_count
    if n > EXACT_SITE_LIMIT:
        raise TooLargeError(f"exact sums over 2^{n} patterns are limited to {EXACT_SITE_LIMIT} sites; use Monte Carlo")
    accepted = np.zeros(n + 1, dtype=np.int64)
    rejected = np.zeros(n + 1, dtype=np.int64)
    joint = np.zeros((circuit.k, n + 1), dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)[:, None]
    for start in range(0, 1 << n, PATTERN_CHUNK):
        index = np.arange(start, min(start + PATTERN_CHUNK, 1 << n), dtype=np.int64)
        patterns = ((index[None, :] >> shifts) & 1).astype(np.uint8)
        weights = patterns.sum(axis=0, dtype=np.int64)
        checks, outputs = simulate_patterns(circuit, patterns)
        ok = ~checks.any(axis=0)
        accepted += np.bincount(weights[ok], minlength=n + 1)
        rejected += np.bincount(weights[~ok], minlength=n + 1)
        for out in range(circuit.k):
            joint[out] += np.bincount(weights[ok & outputs[out].astype(bool)], minlength=n + 1)
    return WeightPolynomials(
        n_sites=n,
        accepted=tuple(int(x) for x in accepted),
        rejected=tuple(int(x) for x in rejected),
        joint=tuple(tuple(int(x) for x in row) for row in joint),
    )


@dataclass(frozen=True)
class ExactStats:
    p: float
    acceptance: float
    rejection: float
    joint_error: Tuple[float, ...]

    @property
    def error_rate(self) -> Tuple[float, ...]:
        """Per-output error among accepted runs."""
        if self.acceptance == 0:
            return tuple(float("nan") for _ in self.joint_error)
        return tuple(j / self.acceptance for j in self.joint_error)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "acceptance": self.acceptance,
            "rejection": self.rejection,
            "error_rate": [finite_or_none(r) for r in self.error_rate],
            "joint_error": list(self.joint_error),
        }


def exact_statistics(circuit: CircuitIR, p: float) -> ExactStats:
    """Acceptance and per-output error summed over all 2^N fault patterns."""
    p = check_probability(p, "p", allow_zero=True)
    poly = weight_polynomials(circuit)
    return ExactStats(
        p=p,
        acceptance=poly.evaluate(poly.accepted, p),
        rejection=poly.evaluate(poly.rejected, p),
        joint_error=tuple(poly.evaluate(row, p) for row in poly.joint),
    )


@dataclass(frozen=True)
class ValidationReport:
    k: int
    weight1_escapes: Tuple[int, ...]
    harmful_pair_counts: Tuple[int, ...]
    expected_pair_count: int
    rejection_coefficient: int
    expected_rejection_coefficient: int
    census: FaultCensus
    failures: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "k": self.k,
            "weight1_escapes": list(self.weight1_escapes),
            "harmful_pair_counts": list(self.harmful_pair_counts),
            "expected_pair_count": self.expected_pair_count,
            "rejection_coefficient": self.rejection_coefficient,
            "expected_rejection_coefficient": self.expected_rejection_coefficient,
            "failures": list(self.failures),
            "census": self.census.to_dict(),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def validate_circuit(circuit: CircuitIR) -> ValidationReport:
    """Check single-fault detection, the quadratic output error coefficient and the rejection coefficient."""
    census = enumerate_faults(circuit, max_weight=2)
    k = circuit.k
    try:
        spec = ProtocolSpec.block(k)
        expected_pairs, expected_rejection = spec.error_coefficient, spec.rejection_coefficient
    except ValueError:
        logger.warning("circuit has %d outputs, which is not a valid block size; using the formulas anyway", k)
        expected_pairs, expected_rejection = 3 * k + 1, 3 * k + 8

    failures: List[str] = []
    if census.weight1_escapes:
        failures.append(f"single faults escape detection at sites {list(census.weight1_escapes)}")
    pairs = census.row(2).harmful_per_output
    for n, count in enumerate(pairs):
        if count != expected_pairs:
            failures.append(f"output {n}: {count} harmful undetected fault pairs, expected {expected_pairs}")
    rejection = census.row(1).detected
    if rejection != expected_rejection:
        failures.append(f"first-order rejection coefficient {rejection}, expected {expected_rejection}")

    for failure in failures:
        logger.warning("validation: %s", failure)
    return ValidationReport(
        k=k,
        weight1_escapes=census.weight1_escapes,
        harmful_pair_counts=pairs,
        expected_pair_count=expected_pairs,
        rejection_coefficient=rejection,
        expected_rejection_coefficient=expected_rejection,
        census=census,
        failures=tuple(failures),
    )

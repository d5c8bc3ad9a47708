from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..const import EXACT_SITE_LIMIT, MC_BLOCK_SHOTS
from ..error_model import check_probability
from ..exceptions import MfplanError
from ..utils import dumps, finite_or_none
from .census import ExactStats, exact_statistics
from .circuit import CircuitIR
from .frame import simulate_patterns

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimStats:
    """Counts from a (possibly partial) Monte Carlo run; shards of the same run merge by summation."""

    p: float
    seed: int
    shots: int
    accepted: int
    errors: Tuple[int, ...]
    blocks: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def acceptance(self) -> float:
        return self.accepted / self.shots if self.shots else float("nan")

    @property
    def acceptance_stderr(self) -> float:
        a = self.acceptance
        return math.sqrt(a * (1 - a) / self.shots) if self.shots else float("nan")

    @property
    def error_rate(self) -> Tuple[float, ...]:
        if not self.accepted:
            return tuple(float("nan") for _ in self.errors)
        return tuple(e / self.accepted for e in self.errors)

    @property
    def error_stderr(self) -> Tuple[float, ...]:
        if not self.accepted:
            return tuple(float("nan") for _ in self.errors)
        return tuple(math.sqrt(r * (1 - r) / self.accepted) for r in self.error_rate)

    def merge(self, other: "SimStats") -> "SimStats":
        if (self.p, self.seed, len(self.errors)) != (other.p, other.seed, len(other.errors)):
            raise MfplanError("only shards of the same run (p, seed, circuit) can be merged")
        overlap = set(self.blocks) & set(other.blocks)
        if overlap:
            raise MfplanError(f"shards overlap in blocks {sorted(overlap)}")
        return SimStats(
            p=self.p,
            seed=self.seed,
            shots=self.shots + other.shots,
            accepted=self.accepted + other.accepted,
            errors=tuple(a + b for a, b in zip(self.errors, other.errors)),
            blocks=tuple(sorted(self.blocks + other.blocks)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "seed": self.seed,
            "shots": self.shots,
            "accepted": self.accepted,
            "errors": list(self.errors),
            "acceptance": finite_or_none(self.acceptance),
            "acceptance_stderr": finite_or_none(self.acceptance_stderr),
            "error_rate": [finite_or_none(r) for r in self.error_rate],
            "error_stderr": [finite_or_none(s) for s in self.error_stderr],
        }


def block_count(shots: int) -> int:
    return -(-shots // MC_BLOCK_SHOTS)


def shard_ranges(shots: int, n_shards: int) -> List[range]:
    """Split the shot blocks of a run into ``n_shards`` contiguous ranges."""
    if n_shards < 1:
        raise ValueError("n_shards must be at least 1")
    blocks = block_count(shots)
    bounds = np.linspace(0, blocks, n_shards + 1).round().astype(int)
    return [range(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


def _run_block(circuit: CircuitIR, p: float, shots: int, seed: int, block: int) -> Tuple[int, int, np.ndarray]:
    size = min(MC_BLOCK_SHOTS, shots - block * MC_BLOCK_SHOTS)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    patterns = (rng.random((circuit.t_site_count, size)) < p).astype(np.uint8)
    checks, outputs = simulate_patterns(circuit, patterns)
    ok = ~checks.any(axis=0)
    return size, int(ok.sum()), outputs[:, ok].sum(axis=1, dtype=np.int64)


def run_monte_carlo(
    circuit: CircuitIR,
    p: float,
    shots: int,
    seed: int,
    *,
    block_range: Optional[range] = None,
    threads: Optional[int] = None,
) -> SimStats:
    """Sample independent Z faults at every T site with probability ``p``.

    Shots are drawn in fixed blocks and block ``b`` always uses the stream ``SeedSequence(seed, spawn_key=(b,))``,
    so results depend only on ``(seed, shots)`` and shards given by ``block_range`` sum to the full run.
    """
    p = check_probability(p, "p", allow_zero=True)
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    blocks = range(block_count(shots)) if block_range is None else block_range
    if blocks and (blocks[0] < 0 or blocks[-1] >= block_count(shots)):
        raise ValueError(f"block range {blocks} is outside 0..{block_count(shots) - 1}")

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda b: _run_block(circuit, p, shots, seed, b), blocks))

    errors = np.zeros(circuit.k, dtype=np.int64)
    done = accepted = 0
    for size, ok, wrong in results:
        done += size
        accepted += ok
        errors += wrong
    logger.debug("monte carlo p=%g seed=%d: %d/%d accepted over %d blocks", p, seed, accepted, done, len(blocks))
    return SimStats(
        p=p, seed=seed, shots=done, accepted=accepted, errors=tuple(int(e) for e in errors), blocks=tuple(blocks)
    )


@dataclass(frozen=True)
class SimulationSummary:
    k: int
    stats: SimStats
    exact: Optional[ExactStats] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "stats": self.stats.to_dict(),
            "exact": self.exact.to_dict() if self.exact is not None else None,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def simulate(
    circuit: CircuitIR, p: float, shots: int, seed: int, *, shards: int = 1, threads: Optional[int] = None
) -> SimulationSummary:
    """Monte Carlo statistics, with the exact values alongside when the circuit is small enough."""
    stats: Optional[SimStats] = None
    for blocks in shard_ranges(shots, shards):
        part = run_monte_carlo(circuit, p, shots, seed, block_range=blocks, threads=threads)
        stats = part if stats is None else stats.merge(part)
    assert stats is not None
    exact = exact_statistics(circuit, p) if circuit.t_site_count <= EXACT_SITE_LIMIT else None
    return SimulationSummary(k=circuit.k, stats=stats, exact=exact)

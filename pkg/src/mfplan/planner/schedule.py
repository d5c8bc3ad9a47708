from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULT_COST_MODEL, DEFAULT_SEARCH, CostModel, SearchConfig
from ..const import MAX_BLOCK_LEVELS, PLUMBING_EDGE, REFERENCE_WORKED_VOLUME
from ..error_model import check_probability, injection_gate_error, min_distance
from ..exceptions import DegenerateTargetError, InfeasibleError, InvalidKError
from ..protocols import FIFTEEN_TO_ONE, ProtocolSpec, rejection_probability, required_input_error
from ..types import ProtocolKind, Strategy
from ..utils import Formatter, dumps, sci

logger = logging.getLogger(__name__)

Number = Union[float, np.ndarray]

REFERENCE_NOTE = (
    f"published worked example (p_in=1e-3, p_out=1e-15, d=19/9) quotes {REFERENCE_WORKED_VOLUME:.1e} qubit-rounds; "
    "the default unit constants give 2.67e7 for the same distances"
)


def absolute_volume(v_geom: Number, d: Number, m: CostModel = DEFAULT_COST_MODEL) -> Number:
    """Qubit-rounds occupied by ``v_geom`` plumbing pieces at code distance ``d``; works elementwise on arrays."""
    edge = PLUMBING_EDGE * d
    return v_geom * (m.qubits_per_d2 * edge * edge) * (m.rounds_per_d * edge)


@dataclass(frozen=True)
class StagePlan:
    spec: ProtocolSpec
    distance: int
    eps: float
    target_error: float
    required_input_error: float
    logical_budget: float
    abs_volume: float
    multiplicity: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "protocol": self.spec.label,
            "spec": self.spec.to_dict(),
            "distance": self.distance,
            "eps": self.eps,
            "target_error": self.target_error,
            "required_input_error": self.required_input_error,
            "logical_budget": self.logical_budget,
            "abs_volume": self.abs_volume,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class Schedule:
    """A distillation pipeline, top level first, with its qubit-round cost per final output."""

    stages: Tuple[StagePlan, ...]
    p_in: float
    p_out: float
    pg: float
    total_volume_per_output: float
    include_retry_factor: bool = False
    eps: float = 1.0
    eps_lower: float = 1.0
    ks: Tuple[int, ...] = ()
    strategy: Optional[Strategy] = None
    volume_constant: float = field(default=DEFAULT_COST_MODEL.volume_constant)

    @property
    def levels(self) -> int:
        return len(self.stages)

    @property
    def distances(self) -> Tuple[int, ...]:
        return tuple(s.distance for s in self.stages)

    @property
    def top_distance(self) -> int:
        return self.stages[0].distance

    @property
    def chain_levels(self) -> int:
        return sum(s.spec.kind is ProtocolKind.FIFTEEN_TO_ONE for s in self.stages)

    def key(self) -> Tuple[Any, ...]:
        """Total order used to pick among candidate schedules."""
        return (
            self.total_volume_per_output,
            self.levels,
            sum(self.ks),
            self.top_distance,
            self.eps,
            self.eps_lower,
            self.ks,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p_in": self.p_in,
            "p_out": self.p_out,
            "pg": self.pg,
            "strategy": str(self.strategy) if self.strategy is not None else None,
            "total_volume_per_output": self.total_volume_per_output,
            "include_retry_factor": self.include_retry_factor,
            "levels": self.levels,
            "distances": list(self.distances),
            "eps": self.eps,
            "eps_lower": self.eps_lower,
            "ks": list(self.ks),
            "stages": [s.to_dict() for s in self.stages],
            "metadata": {"volume_constant": self.volume_constant, "reference_note": REFERENCE_NOTE},
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def describe(self) -> str:
        out = Formatter()
        strategy = f"  strategy={self.strategy}" if self.strategy is not None else ""
        with out.block(f"schedule  p_in={sci(self.p_in)}  p_out={sci(self.p_out)}  p_g={sci(self.pg)}{strategy}"):
            out.writeline(f"volume per output: {sci(self.total_volume_per_output)} qubit-rounds")
            for level, stage in enumerate(self.stages, start=1):
                out.writeline(
                    f"level {level}: {stage.spec.label:<10} d={stage.distance:<3} eps={stage.eps:.3g}  "
                    f"target={sci(stage.target_error)}  input<={sci(stage.required_input_error)}  "
                    f"x{stage.multiplicity:.4g}  volume={sci(stage.abs_volume)}"
                )
            out.writeline(f"unit constant: {self.volume_constant:g} qubit-rounds per d^3 of plumbing")
        return str(out)


def _check_targets(p_in: float, p_out: float) -> None:
    check_probability(p_in, "p_in")
    check_probability(p_out, "p_out")
    if p_out >= p_in:
        raise DegenerateTargetError(f"p_out={p_out:g} is not below p_in={p_in:g}; no distillation is needed")


def plan_block_pipeline(
    p_in: float,
    p_out: float,
    ks: Sequence[int],
    eps: float,
    pg: Optional[float] = None,
    m: CostModel = DEFAULT_COST_MODEL,
    cfg: SearchConfig = DEFAULT_SEARCH,
    *,
    eps_lower: Optional[float] = None,
) -> Schedule:
    """Block levels (outermost first) on top of the 15-1 chain needed to reach ``p_in``."""
    _check_targets(p_in, p_out)
    if len(ks) > MAX_BLOCK_LEVELS:
        raise InvalidKError(f"at most {MAX_BLOCK_LEVELS} block levels are supported, got {len(ks)}")
    if not eps > 0 or (eps_lower is not None and not eps_lower > 0):
        raise ValueError("eps must be positive")
    if pg is None:
        pg = injection_gate_error(p_in)
    lower = eps if eps_lower is None else eps_lower

    blocks = [ProtocolSpec.block(k) for k in ks]
    stages = []
    total = 0.0
    demand = 1.0
    target = p_out

    def add(spec: ProtocolSpec, stage_eps: float) -> float:
        nonlocal total, demand
        budget = stage_eps * target / (1 + stage_eps)
        v = spec.geometric_volume
        d = min_distance(v, pg, budget, m, cfg.d_max)
        required = required_input_error(spec, target, stage_eps)
        structures = demand / spec.n_outputs
        if cfg.include_retry_factor:
            rejection = rejection_probability(spec, required)
            if rejection >= 1:
                raise InfeasibleError(
                    f"{spec.label} rejects every run at input error {required:.3g}", constraint="rejection probability"
                )
            structures = structures / (1 - rejection)
        volume = absolute_volume(v, d, m)
        total += structures * volume
        demand = structures * spec.n_inputs
        stages.append(StagePlan(spec, d, stage_eps, target, required, budget, volume, structures))
        logger.debug(
            "%s d=%d eps=%.3g target=%.3g input<=%.3g x%.4g", spec.label, d, stage_eps, target, required, structures
        )
        return required

    for spec in blocks:
        target = add(spec, eps if not stages else lower)

    while target < p_in:
        if len(stages) - len(blocks) >= cfg.max_15to1_levels:
            raise InfeasibleError(
                f"reaching p_in={p_in:g} needs more than {cfg.max_15to1_levels} levels of 15-1",
                constraint=f"15-1 levels <= {cfg.max_15to1_levels}",
                best=target,
            )
        target = add(FIFTEEN_TO_ONE, eps if not stages else lower)

    return Schedule(
        stages=tuple(stages),
        p_in=p_in,
        p_out=p_out,
        pg=pg,
        total_volume_per_output=total,
        include_retry_factor=cfg.include_retry_factor,
        eps=eps,
        eps_lower=lower,
        ks=tuple(ks),
        volume_constant=m.volume_constant,
    )


def plan_15to1_chain(
    p_in: float,
    p_out: float,
    eps: float,
    pg: Optional[float] = None,
    m: CostModel = DEFAULT_COST_MODEL,
    cfg: SearchConfig = DEFAULT_SEARCH,
    *,
    eps_lower: Optional[float] = None,
) -> Schedule:
    return plan_block_pipeline(p_in, p_out, (), eps, pg, m, cfg, eps_lower=eps_lower)

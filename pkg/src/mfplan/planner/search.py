from __future__ import annotations

import dataclasses
import itertools
import logging
from typing import Any, Iterator, List, Optional, Tuple

from ..config import DEFAULT_COST_MODEL, DEFAULT_SEARCH, CostModel, SearchConfig
from ..const import GRID_CHUNK
from ..error_model import check_probability, injection_gate_error
from ..exceptions import DegenerateTargetError, InfeasibleError
from ..types import Strategy
from .grid import evaluate_points, grid_axes
from .schedule import Schedule, plan_block_pipeline

logger = logging.getLogger(__name__)

GridParams = Tuple[float, float, Tuple[int, ...]]


def grid_candidates(strategy: Strategy, cfg: SearchConfig = DEFAULT_SEARCH) -> Iterator[GridParams]:
    """Every (eps, eps_lower, ks) tuple a concrete strategy searches over."""
    if strategy.block_levels is None:
        raise ValueError(f"{strategy} is not a concrete strategy")
    lowers: Any = cfg.eps_grid if cfg.per_level_eps else (None,)
    for eps, lower, ks in itertools.product(
        cfg.eps_grid, lowers, itertools.product(cfg.k_values, repeat=strategy.block_levels)
    ):
        yield eps, eps if lower is None else lower, ks


def optimize(
    p_in: float,
    p_out: float,
    strategy: Strategy = Strategy.BEST_OF_ALL,
    pg: Optional[float] = None,
    m: CostModel = DEFAULT_COST_MODEL,
    cfg: SearchConfig = DEFAULT_SEARCH,
) -> Schedule:
    """Minimum-volume schedule for ``strategy`` over the whole search grid."""
    check_probability(p_in, "p_in")
    check_probability(p_out, "p_out")
    if p_out >= p_in:
        raise DegenerateTargetError(f"p_out={p_out:g} is not below p_in={p_in:g}; no distillation is needed")
    if pg is None:
        pg = injection_gate_error(p_in)

    if strategy.block_levels is None:
        found: List[Schedule] = []
        errors: List[InfeasibleError] = []
        for concrete in Strategy.concrete():
            try:
                found.append(optimize(p_in, p_out, concrete, pg, m, cfg))
            except InfeasibleError as e:
                errors.append(e)
        if not found:
            raise InfeasibleError(
                f"no strategy reaches p_out={p_out:g} from p_in={p_in:g}: " + "; ".join(str(e) for e in errors),
                constraint=", ".join(e.constraint for e in errors),
            )
        return min(found, key=Schedule.key)

    axes = grid_axes(strategy.block_levels, cfg)
    best_key: Optional[Tuple[Any, ...]] = None
    best: Optional[GridParams] = None
    distance_failures = level_failures = rejection_failures = feasible = 0
    for start in range(0, axes.size, GRID_CHUNK):
        evaluation = evaluate_points(axes.chunk(start, min(start + GRID_CHUNK, axes.size)), p_in, p_out, pg, m, cfg)
        distance_failures += evaluation.distance_failures
        level_failures += evaluation.level_failures
        rejection_failures += evaluation.rejection_failures
        feasible += int(evaluation.feasible.sum())
        i = evaluation.best_index()
        if i is None:
            continue
        key = evaluation.key(i)
        if best_key is None or key < best_key:
            best_key, best = key, evaluation.points.params(i)

    if best is None:
        constraint, _ = max(
            (
                (f"code distance <= {cfg.d_max}", distance_failures),
                (f"15-1 levels <= {cfg.max_15to1_levels}", level_failures),
                ("rejection probability < 1", rejection_failures),
            ),
            key=lambda item: item[1],
        )
        raise InfeasibleError(
            f"{strategy}: none of {axes.size} grid points reaches p_out={p_out:g} from p_in={p_in:g} "
            f"(binding constraint: {constraint})",
            constraint=constraint,
        )

    eps, eps_lower, ks = best
    logger.info(
        "%s p_in=%g p_out=%g: %d of %d grid points feasible, best volume %.3g (eps=%.3g, ks=%s)",
        strategy,
        p_in,
        p_out,
        feasible,
        axes.size,
        best_key[0] if best_key else float("nan"),
        eps,
        list(ks),
    )
    schedule = plan_block_pipeline(p_in, p_out, ks, eps, pg, m, cfg, eps_lower=eps_lower)
    return dataclasses.replace(schedule, strategy=strategy)

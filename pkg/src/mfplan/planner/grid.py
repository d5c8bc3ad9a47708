"""Vectorised evaluation of whole parameter grids.

Each grid point is one (eps, eps_lower, k_1, ..., k_n) tuple. The arithmetic mirrors the scalar builders in
:mod:`.schedule` operation for operation, so a point's volume here equals the rebuilt schedule's volume.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

import numpy as np

from ..config import CostModel, SearchConfig
from ..const import (
    BLOCK_ERROR_EXTRA,
    BLOCK_EXTRA_INPUTS,
    BLOCK_INPUTS_PER_OUTPUT,
    BLOCK_VOLUME_OFFSET,
    BLOCK_VOLUME_PER_OUTPUT,
    FIFTEEN_ERROR_COEFFICIENT,
    FIFTEEN_ERROR_EXPONENT,
    FIFTEEN_INPUTS,
    FIFTEEN_VOLUME,
)
from ..error_model import min_distance_array
from .schedule import absolute_volume

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridPoints:
    eps: np.ndarray
    eps_lower: np.ndarray
    ks: np.ndarray

    def __len__(self) -> int:
        return len(self.eps)

    def params(self, i: int) -> Tuple[float, float, Tuple[int, ...]]:
        return float(self.eps[i]), float(self.eps_lower[i]), tuple(int(k) for k in self.ks[i])


@dataclass(frozen=True)
class GridAxes:
    eps: np.ndarray
    eps_lower: Optional[np.ndarray]
    k: np.ndarray
    n_blocks: int

    @property
    def shape(self) -> Tuple[int, ...]:
        lower = () if self.eps_lower is None else (len(self.eps_lower),)
        return (len(self.eps),) + lower + (len(self.k),) * self.n_blocks

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def chunk(self, start: int, stop: int) -> GridPoints:
        index = np.unravel_index(np.arange(start, stop), self.shape)
        eps = self.eps[index[0]]
        if self.eps_lower is None:
            eps_lower, rest = eps, index[1:]
        else:
            eps_lower, rest = self.eps_lower[index[1]], index[2:]
        ks = np.stack([self.k[i] for i in rest], axis=1) if rest else np.zeros((stop - start, 0), dtype=np.int64)
        return GridPoints(eps=eps, eps_lower=eps_lower, ks=ks)


def grid_axes(n_blocks: int, cfg: SearchConfig) -> GridAxes:
    eps = np.array(cfg.eps_grid, dtype=float)
    return GridAxes(
        eps=eps,
        eps_lower=eps.copy() if cfg.per_level_eps else None,
        k=np.array(cfg.k_values, dtype=np.int64),
        n_blocks=n_blocks,
    )


@dataclass
class GridEvaluation:
    points: GridPoints
    feasible: np.ndarray
    volume: np.ndarray
    levels: np.ndarray
    top_distance: np.ndarray
    distance_failures: int = 0
    level_failures: int = 0
    rejection_failures: int = 0

    def key(self, i: int) -> Tuple[Any, ...]:
        eps, eps_lower, ks = self.points.params(i)
        return (float(self.volume[i]), int(self.levels[i]), sum(ks), int(self.top_distance[i]), eps, eps_lower, ks)

    def best_index(self) -> Optional[int]:
        candidates = np.flatnonzero(self.feasible)
        if candidates.size == 0:
            return None
        ks = self.points.ks[candidates]
        keys = [ks[:, j] for j in reversed(range(ks.shape[1]))]
        keys += [
            self.points.eps_lower[candidates],
            self.points.eps[candidates],
            self.top_distance[candidates],
            ks.sum(axis=1),
            self.levels[candidates],
            self.volume[candidates],
        ]
        return int(candidates[np.lexsort(keys)[0]])


def evaluate_points(
    points: GridPoints, p_in: float, p_out: float, pg: float, m: CostModel, cfg: SearchConfig
) -> GridEvaluation:
    size = len(points)
    target = np.full(size, p_out)
    demand = np.ones(size)
    volume = np.zeros(size)
    levels = np.zeros(size, dtype=np.int64)
    top_distance = np.zeros(size, dtype=np.int64)
    feasible = np.ones(size, dtype=bool)
    rejected = np.zeros(size, dtype=bool)
    distance_failed = np.zeros(size, dtype=bool)

    def add(
        idx: np.ndarray, stage_eps: np.ndarray, v: Any, n_out: Any, n_in: Any, coeff: Any, exponent: int
    ) -> None:
        t = target[idx]
        budget = stage_eps * t / (1 + stage_eps)
        d = min_distance_array(v, pg, budget, m, cfg.d_max)
        x = t / (coeff * (1 + stage_eps))
        required = np.sqrt(x) if exponent == 2 else np.power(x, 1.0 / exponent)
        structures = demand[idx] / n_out
        if cfg.include_retry_factor:
            rejection = np.minimum(1.0, n_in * required)
            rejected[idx] |= rejection >= 1
            with np.errstate(divide="ignore", invalid="ignore"):
                structures = structures / (1 - rejection)
        stage_volume = absolute_volume(v, d, m)
        volume[idx] += structures * stage_volume
        demand[idx] = structures * n_in
        top_distance[idx] = np.where(levels[idx] == 0, d, top_distance[idx])
        levels[idx] += 1
        distance_failed[idx] |= d == 0
        target[idx] = required

    everything = np.arange(size)
    for j in range(points.ks.shape[1]):
        k = points.ks[:, j]
        add(
            everything,
            points.eps if j == 0 else points.eps_lower,
            (BLOCK_VOLUME_PER_OUTPUT * k + BLOCK_VOLUME_OFFSET).astype(float),
            k,
            BLOCK_INPUTS_PER_OUTPUT * k + BLOCK_EXTRA_INPUTS,
            BLOCK_INPUTS_PER_OUTPUT * k + BLOCK_ERROR_EXTRA,
            2,
        )
        feasible &= ~(distance_failed | rejected)

    for _ in range(cfg.max_15to1_levels):
        idx = np.flatnonzero(feasible & (target < p_in))
        if idx.size == 0:
            break
        stage_eps = np.where(levels[idx] == 0, points.eps[idx], points.eps_lower[idx])
        add(idx, stage_eps, float(FIFTEEN_VOLUME), 1, FIFTEEN_INPUTS, FIFTEEN_ERROR_COEFFICIENT, FIFTEEN_ERROR_EXPONENT)
        feasible &= ~(distance_failed | rejected)

    short = feasible & (target < p_in)
    feasible &= ~short
    return GridEvaluation(
        points=points,
        feasible=feasible,
        volume=volume,
        levels=levels,
        top_distance=top_distance,
        distance_failures=int(distance_failed.sum()),
        level_failures=int(short.sum()),
        rejection_failures=int(rejected.sum()),
    )

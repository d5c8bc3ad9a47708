"""Surface-code logical error model and minimum code-distance selection."""
from __future__ import annotations

import logging
import math
import sys
import warnings
from typing import Optional

import numpy as np
from typing_extensions import assert_never

from .config import DEFAULT_COST_MODEL, CostModel
from .const import (
    DEFAULT_D_MAX,
    DEFAULT_PREFACTOR,
    INJECTION_ERROR_RATIO,
    MIN_DISTANCE,
    PLUMBING_DEFECT_KINDS,
    PLUMBING_EDGE,
    PLUMBING_ERROR_CLASSES,
)
from .exceptions import FitRangeWarning, InfeasibleError, InvalidDistanceError, InvalidProbabilityError
from .types import PlumbingMode

logger = logging.getLogger(__name__)


def check_probability(value: float, name: str = "probability", *, allow_zero: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
        raise InvalidProbabilityError(f"{name} must be a number, got {value!r}")
    low_ok = value >= 0 if allow_zero else value > 0
    if not (low_ok and value < 1):
        bounds = "[0, 1)" if allow_zero else "(0, 1)"
        raise InvalidProbabilityError(f"{name} must lie in {bounds}, got {value}")
    return float(value)


def check_distance(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < MIN_DISTANCE or d % 2 == 0:
        raise InvalidDistanceError(f"code distance must be an odd integer >= {MIN_DISTANCE}, got {d}")
    return int(d)


def _check_fit_range(pg: float, m: CostModel) -> None:
    if m.base_scale * pg >= 1:
        warnings.warn(
            f"gate error {pg} is outside the fitted range (base_scale * p_g = {m.base_scale * pg:.3g} >= 1)",
            FitRangeWarning,
            stacklevel=3,
        )


_MAX_LOG = math.log(sys.float_info.max)


def _suppression(d: int, pg: float, m: CostModel) -> float:
    """(base_scale * pg) ** ((d + 1) / 2), saturating to inf above the float range."""
    x, e = m.base_scale * pg, (d + 1) / 2
    if x > 1 and e * math.log(x) > _MAX_LOG:
        return math.inf
    return x**e


def _logical_raw(d: int, pg: float, m: CostModel) -> float:
    return m.prefactor * _suppression(d, pg, m)


def _plumbing_raw(d: int, pg: float, m: CostModel) -> float:
    if m.plumbing_mode is PlumbingMode.SIMPLIFIED:
        return (m.prefactor / DEFAULT_PREFACTOR) * d * _suppression(d, pg, m)
    elif m.plumbing_mode is PlumbingMode.DERIVATION_EXACT:
        return PLUMBING_DEFECT_KINDS * PLUMBING_ERROR_CLASSES * (PLUMBING_EDGE * d) * _logical_raw(d, pg, m)
    else:
        assert_never(m.plumbing_mode)


def logical_error_per_round(d: int, pg: float, m: CostModel = DEFAULT_COST_MODEL) -> float:
    """Logical error per code-distance round of a distance-``d`` patch, clamped to 1."""
    d = check_distance(d)
    pg = check_probability(pg, "gate error")
    _check_fit_range(pg, m)
    return min(1.0, _logical_raw(d, pg, m))


def plumbing_piece_error(d: int, pg: float, m: CostModel = DEFAULT_COST_MODEL) -> float:
    """Error bound for one plumbing piece (a 5d/4 cube of spacetime), clamped to 1."""
    d = check_distance(d)
    pg = check_probability(pg, "gate error")
    _check_fit_range(pg, m)
    return min(1.0, _plumbing_raw(d, pg, m))


def min_distance(
    v_geom: float, pg: float, budget: float, m: CostModel = DEFAULT_COST_MODEL, d_max: int = DEFAULT_D_MAX
) -> int:
    """Smallest odd d >= 3 with ``v_geom * plumbing_piece_error(d) < budget``."""
    if not v_geom > 0:
        raise ValueError(f"geometric volume must be positive, got {v_geom}")
    if not budget > 0:
        raise ValueError(f"logical error budget must be positive, got {budget}")
    pg = check_probability(pg, "gate error")
    _check_fit_range(pg, m)

    best: Optional[float] = None
    for d in range(MIN_DISTANCE, d_max + 1, 2):
        product = v_geom * min(1.0, _plumbing_raw(d, pg, m))
        if product < budget:
            return d
        best = product if best is None else min(best, product)

    raise InfeasibleError(
        f"no code distance up to {d_max} keeps {v_geom:g} plumbing pieces below {budget:.3g}",
        constraint=f"code distance <= {d_max}",
        best=best,
    )


def min_distance_array(
    v_geom: np.ndarray, pg: float, budget: np.ndarray, m: CostModel = DEFAULT_COST_MODEL, d_max: int = DEFAULT_D_MAX
) -> np.ndarray:
    """Elementwise :func:`min_distance`; 0 marks entries with no admissible distance."""
    v, b = np.broadcast_arrays(np.asarray(v_geom, dtype=float), np.asarray(budget, dtype=float))
    out = np.zeros(v.shape, dtype=np.int64)
    pending = b > 0
    for d in range(MIN_DISTANCE, d_max + 1, 2):
        if not pending.any():
            break
        piece = min(1.0, _plumbing_raw(d, pg, m))
        hit = pending & (v * piece < b)
        out[hit] = d
        pending &= ~hit
    return out


def injection_gate_error(p_in: float) -> float:
    """Gate error implied by injected states of error ``p_in``."""
    return check_probability(p_in, "input error") / INJECTION_ERROR_RATIO

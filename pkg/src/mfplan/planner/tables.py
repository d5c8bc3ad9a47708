from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import IO, Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..config import DEFAULT_COST_MODEL, DEFAULT_SEARCH, CostModel, SearchConfig
from ..const import DEFAULT_PIN_LIST, DEFAULT_POUT_DECADES
from ..error_model import injection_gate_error
from ..exceptions import DegenerateTargetError, InfeasibleError
from ..types import Strategy
from ..utils import dumps
from .schedule import Schedule
from .search import optimize

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("p_in", "p_out", "strategy", "volume_qubit_rounds", "levels", "distances", "eps", "k1", "k2", "winner")
DEFAULT_TABLE_STRATEGIES = (Strategy.ONLY_15TO1, Strategy.ONE_BLOCK, Strategy.TWO_BLOCK)


@dataclass(frozen=True)
class TableRecord:
    p_in: float
    p_out: float
    strategy: Strategy
    volume: Optional[float] = None
    levels: Optional[int] = None
    distances: Tuple[int, ...] = ()
    eps: Optional[float] = None
    k1: Optional[int] = None
    k2: Optional[int] = None
    winner: bool = False
    note: str = ""

    @property
    def feasible(self) -> bool:
        return self.volume is not None

    @classmethod
    def from_schedule(cls, schedule: Schedule, strategy: Strategy) -> "TableRecord":
        ks = schedule.ks + (None, None)
        return cls(
            p_in=schedule.p_in,
            p_out=schedule.p_out,
            strategy=strategy,
            volume=schedule.total_volume_per_output,
            levels=schedule.levels,
            distances=schedule.distances,
            eps=schedule.eps,
            k1=ks[0],
            k2=ks[1],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p_in": self.p_in,
            "p_out": self.p_out,
            "strategy": str(self.strategy),
            "volume_qubit_rounds": self.volume,
            "levels": self.levels,
            "distances": list(self.distances),
            "eps": self.eps,
            "k1": self.k1,
            "k2": self.k2,
            "winner": self.winner,
            "feasible": self.feasible,
            "note": self.note,
        }

    def to_row(self) -> Dict[str, str]:
        def cell(value: Any) -> str:
            return "" if value is None else repr(value) if isinstance(value, float) else str(value)

        return {
            "p_in": f"{self.p_in:g}",
            "p_out": f"{self.p_out:g}",
            "strategy": str(self.strategy),
            "volume_qubit_rounds": cell(self.volume),
            "levels": cell(self.levels),
            "distances": "/".join(str(d) for d in self.distances),
            "eps": cell(self.eps),
            "k1": cell(self.k1),
            "k2": cell(self.k2),
            "winner": "true" if self.winner else "false",
        }


def pout_decades(first: int = DEFAULT_POUT_DECADES[0], last: int = DEFAULT_POUT_DECADES[1]) -> List[float]:
    """``[1e-first, ..., 1e-last]``, one value per decade."""
    step = 1 if last >= first else -1
    return [10.0**-e for e in range(first, last + step, step)]


def _evaluate_cell(
    p_in: float, p_out: float, strategy: Strategy, pg: float, m: CostModel, cfg: SearchConfig
) -> TableRecord:
    try:
        schedule = optimize(p_in, p_out, strategy, pg, m, cfg)
    except (InfeasibleError, DegenerateTargetError) as e:
        logger.warning("%s p_in=%g p_out=%g is infeasible: %s", strategy, p_in, p_out, e)
        constraint = getattr(e, "constraint", "p_out >= p_in")
        return TableRecord(p_in=p_in, p_out=p_out, strategy=strategy, note=f"infeasible: {constraint}")
    return TableRecord.from_schedule(schedule, strategy)


def mark_winners(records: Sequence[TableRecord]) -> List[TableRecord]:
    """Flag, per (p_in, p_out) cell, the concrete strategy with the strictly smallest volume."""
    cells: Dict[Tuple[float, float], List[int]] = {}
    for i, record in enumerate(records):
        if record.strategy.is_concrete and record.feasible:
            cells.setdefault((record.p_in, record.p_out), []).append(i)

    out = [replace(r, winner=False) for r in records]
    for indices in cells.values():
        smallest = min(records[i].volume for i in indices)  # type: ignore[type-var]
        tied = [i for i in indices if records[i].volume == smallest]
        if len(tied) == 1:
            out[tied[0]] = replace(out[tied[0]], winner=True)
    return out


def emit_tables(
    p_in_list: Sequence[float] = DEFAULT_PIN_LIST,
    p_out_list: Optional[Sequence[float]] = None,
    pg_rule: Callable[[float], float] = injection_gate_error,
    strategies: Sequence[Strategy] = DEFAULT_TABLE_STRATEGIES,
    m: CostModel = DEFAULT_COST_MODEL,
    cfg: SearchConfig = DEFAULT_SEARCH,
    *,
    threads: Optional[int] = None,
) -> List[TableRecord]:
    """One record per (p_out, p_in, strategy), in that nesting order, with winner flags set."""
    if p_out_list is None:
        p_out_list = pout_decades()
    cells = [(p_in, p_out, s) for p_out in p_out_list for p_in in p_in_list for s in strategies]
    logger.info("Evaluating %d table cells", len(cells))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        records = list(pool.map(lambda c: _evaluate_cell(c[0], c[1], c[2], pg_rule(c[0]), m, cfg), cells))
    return mark_winners(records)


def write_csv(records: Sequence[TableRecord], stream: IO[str]) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(record.to_row())


def records_to_json(records: Sequence[TableRecord]) -> str:
    return dumps([r.to_dict() for r in records])

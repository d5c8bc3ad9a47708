"""Published minimum volumes (qubit-rounds) for the three strategies, with their winner and transition marks.

Cells are keyed by ``(p_in exponent, p_out exponent)``, so ``(3, 15)`` is p_in = 1e-3, p_out = 1e-15.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..types import Strategy

if TYPE_CHECKING:
    from .tables import TableRecord

Cell = Tuple[int, int]

PIN_EXPONENTS = (2, 3, 4)
POUT_EXPONENTS = tuple(range(5, 21))


def _table(rows: Sequence[Tuple[float, float, float]]) -> Dict[Cell, float]:
    return {
        (pin, pout): value
        for pout, row in zip(POUT_EXPONENTS, rows)
        for pin, value in zip(PIN_EXPONENTS, row)
    }


VOLUMES: Dict[Strategy, Dict[Cell, float]] = {
    Strategy.ONLY_15TO1: _table(
        [
            (4.0e7, 1.3e6, 2.6e5),
            (6.7e7, 1.3e6, 2.6e5),
            (7.2e7, 2.1e6, 5.6e5),
            (7.5e7, 1.1e7, 5.6e5),
            (1.0e8, 1.2e7, 1.3e6),
            (1.1e8, 1.2e7, 1.3e6),
            (1.7e8, 1.4e7, 5.3e6),
            (6.4e8, 1.4e7, 6.1e6),
            (6.5e8, 2.8e7, 6.1e6),
            (7.0e8, 2.8e7, 6.1e6),
            (1.1e9, 3.1e7, 7.7e6),
            (1.1e9, 3.1e7, 1.2e7),
            (1.2e9, 3.5e7, 1.2e7),
            (1.2e9, 4.7e7, 1.4e7),
            (1.2e9, 5.0e7, 1.4e7),
            (1.3e9, 5.7e7, 1.4e7),
        ]
    ),
    Strategy.ONE_BLOCK: _table(
        [
            (2.3e7, 1.4e6, 1.5e5),
            (2.6e7, 2.8e6, 3.0e5),
            (4.2e7, 3.0e6, 5.9e5),
            (1.1e8, 5.9e6, 1.3e6),
            (2.0e8, 6.1e6, 1.5e6),
            (2.4e8, 6.7e6, 2.4e6),
            (2.5e8, 7.8e6, 2.7e6),
            (2.6e8, 1.1e7, 2.7e6),
            (2.7e8, 1.3e7, 2.8e6),
            (3.0e8, 3.8e7, 3.6e6),
            (3.7e8, 4.4e7, 3.9e6),
            (3.9e8, 4.4e7, 6.1e6),
            (4.1e8, 4.6e7, 6.6e6),
            (4.4e8, 4.7e7, 6.7e6),
            (4.7e8, 5.3e7, 8.3e6),
            (6.3e8, 5.4e7, 1.8e7),
        ]
    ),
    Strategy.TWO_BLOCK: _table(
        [
            (4.8e7, 1.7e6, 6.2e5),
            (6.4e7, 2.4e6, 7.1e5),
            (7.4e7, 4.1e6, 7.6e5),
            (8.9e7, 6.4e6, 9.6e5),
            (9.8e7, 1.1e7, 1.6e6),
            (1.1e8, 1.1e7, 1.7e6),
            (1.3e8, 1.2e7, 2.3e6),
            (1.7e8, 1.5e7, 3.0e6),
            (2.2e8, 1.8e7, 5.2e6),
            (3.3e8, 2.4e7, 6.4e6),
            (5.8e8, 2.5e7, 6.6e6),
            (7.4e8, 2.8e7, 7.0e6),
            (8.1e8, 3.0e7, 8.8e6),
            (8.3e8, 3.1e7, 1.1e7),
            (8.5e8, 3.4e7, 1.1e7),
            (8.8e8, 4.1e7, 1.2e7),
        ]
    ),
}

# Cells printed in italics: the strategy beat the other two tables.
ITALIC: Dict[Strategy, FrozenSet[Cell]] = {
    Strategy.ONLY_15TO1: frozenset({(2, 8), (2, 10), (3, 5), (3, 6), (3, 7), (4, 6), (4, 7), (4, 8), (4, 9), (4, 10)}),
    Strategy.ONE_BLOCK: frozenset(
        {(2, 5), (2, 6), (2, 7), (2, 14), (2, 15), (2, 16), (2, 17), (2, 18), (2, 19), (2, 20)}
        | {(3, 8), (3, 9), (3, 10), (3, 11), (3, 12), (3, 13)}
        | {(4, 5), (4, 12), (4, 13), (4, 14), (4, 15), (4, 16), (4, 17), (4, 18), (4, 19)}
    ),
    Strategy.TWO_BLOCK: frozenset(
        {(2, 9), (2, 11), (2, 12), (2, 13), (3, 14), (3, 15), (3, 16), (3, 17), (3, 18), (3, 19), (3, 20)}
        | {(4, 11), (4, 20)}
    ),
}

# Cells printed in bold: first row of a p_in column needing one more level.
BOLD: Dict[Strategy, FrozenSet[Cell]] = {
    Strategy.ONLY_15TO1: frozenset({(2, 5), (2, 12), (3, 8), (4, 11)}),
    Strategy.ONE_BLOCK: frozenset({(2, 5), (2, 9), (3, 6), (3, 15), (4, 8)}),
    Strategy.TWO_BLOCK: frozenset({(2, 6), (3, 9), (4, 13)}),
}


def cell_of(p_in: float, p_out: float) -> Optional[Cell]:
    """Map a probability pair onto a published cell, or None when it is off the grid."""
    pin = -math.log10(p_in)
    pout = -math.log10(p_out)
    cell = (round(pin), round(pout))
    if abs(pin - cell[0]) > 1e-9 or abs(pout - cell[1]) > 1e-9:
        return None
    if cell[0] not in PIN_EXPONENTS or cell[1] not in POUT_EXPONENTS:
        return None
    return cell


def published_winner(cell: Cell) -> Optional[Strategy]:
    for strategy, cells in ITALIC.items():
        if cell in cells:
            return strategy
    return None


@dataclass
class ReferenceComparison:
    """How a set of computed table records lines up with the published tables."""

    volume_ratios: Dict[Tuple[Strategy, Cell], float] = field(default_factory=dict)
    winners: Dict[Cell, Optional[Strategy]] = field(default_factory=dict)

    @property
    def compared_cells(self) -> List[Cell]:
        return sorted(cell for cell in self.winners if published_winner(cell) is not None)

    @property
    def max_ratio_deviation(self) -> float:
        """Largest factor by which a computed volume departs from its published value."""
        if not self.volume_ratios:
            return 1.0
        return max(max(r, 1 / r) for r in self.volume_ratios.values())

    @property
    def winner_agreement(self) -> float:
        """Fraction of cells whose computed winner is the italicised strategy."""
        cells = self.compared_cells
        if not cells:
            return 1.0
        return sum(self.winners[c] is published_winner(c) for c in cells) / len(cells)

    @property
    def block_helps_agreement(self) -> float:
        """Fraction of cells agreeing on whether any block strategy beats 15-1 alone."""
        cells = self.compared_cells
        if not cells:
            return 1.0
        agree = sum(
            (self.winners[c] is Strategy.ONLY_15TO1) == (published_winner(c) is Strategy.ONLY_15TO1) for c in cells
        )
        return agree / len(cells)

    def summary(self) -> str:
        return (
            f"compared {len(self.volume_ratios)} volumes (max deviation x{self.max_ratio_deviation:.2f}); "
            f"winner agreement {self.winner_agreement:.0%}, "
            f"block-vs-15-1 agreement {self.block_helps_agreement:.0%} over {len(self.compared_cells)} cells"
        )


def compare_with_reference(records: Iterable["TableRecord"]) -> ReferenceComparison:
    comparison = ReferenceComparison()
    for record in records:
        cell = cell_of(record.p_in, record.p_out)
        if cell is None:
            continue
        comparison.winners.setdefault(cell, None)
        if record.volume is not None and record.strategy in VOLUMES:
            comparison.volume_ratios[(record.strategy, cell)] = record.volume / VOLUMES[record.strategy][cell]
        if record.winner:
            comparison.winners[cell] = record.strategy
    return comparison


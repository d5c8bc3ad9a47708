import math

import numpy as np
import pytest

from mfplan.config import CostModel
from mfplan.error_model import (
    injection_gate_error,
    logical_error_per_round,
    min_distance,
    min_distance_array,
    plumbing_piece_error,
)
from mfplan.exceptions import FitRangeWarning, InfeasibleError, InvalidDistanceError, InvalidProbabilityError
from mfplan.types import PlumbingMode

EXACT = CostModel(plumbing_mode=PlumbingMode.DERIVATION_EXACT)


def test_logical_error_per_round_values():
    assert logical_error_per_round(5, 1e-3) == pytest.approx(1e-4, rel=1e-12)
    assert logical_error_per_round(3, 1e-2) == pytest.approx(0.1, rel=1e-12)


def test_logical_error_clamps_outside_fit_range():
    with pytest.warns(FitRangeWarning):
        assert logical_error_per_round(3, 0.5) == 1.0


@pytest.mark.parametrize("d", [1, 2, 4, 0, -3])
def test_invalid_distance(d):
    with pytest.raises(InvalidDistanceError):
        logical_error_per_round(d, 1e-3)


@pytest.mark.parametrize("pg", [0.0, 1.0, -1e-3, float("nan")])
def test_invalid_gate_error(pg):
    with pytest.raises(InvalidProbabilityError):
        plumbing_piece_error(5, pg)


def test_plumbing_piece_error_values():
    assert plumbing_piece_error(19, 1e-4) == pytest.approx(1.9e-19, rel=1e-9)
    assert plumbing_piece_error(9, 1e-4) == pytest.approx(9e-10, rel=1e-9)
    # 0.75 * 3 * 1 clamps
    assert plumbing_piece_error(3, 1e-2, EXACT) == 1.0


@pytest.mark.parametrize("d", [3, 7, 11, 19, 31])
@pytest.mark.parametrize("pg", [1e-5, 1e-4, 1e-3])
def test_simplified_over_exact_is_four_thirds(d, pg):
    ratio = plumbing_piece_error(d, pg) / plumbing_piece_error(d, pg, EXACT)
    assert ratio == pytest.approx(4 / 3, rel=1e-12)


def test_four_thirds_holds_for_other_prefactors():
    simplified = CostModel(prefactor=0.05)
    exact = CostModel(prefactor=0.05, plumbing_mode=PlumbingMode.DERIVATION_EXACT)
    assert plumbing_piece_error(9, 1e-4, simplified) / plumbing_piece_error(9, 1e-4, exact) == pytest.approx(4 / 3)


def test_plumbing_error_decreases_with_distance():
    values = [plumbing_piece_error(d, 1e-4) for d in range(3, 41, 2)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_min_distance_worked_example():
    assert min_distance(192, 1e-4, 5e-16) == 19
    assert min_distance(192, 1e-4, 1.2e-6) == 9
    assert min_distance(192, 1e-4, 0.9) == 3


def test_min_distance_is_minimal():
    for budget in np.geomspace(1e-25, 1e-3, 40):
        d = min_distance(408, 1e-4, budget)
        assert 408 * plumbing_piece_error(d, 1e-4) < budget
        if d > 3:
            assert 408 * plumbing_piece_error(d - 2, 1e-4) >= budget


def test_min_distance_monotone_in_budget():
    budgets = np.geomspace(1e-30, 1e-2, 60)
    distances = [min_distance(192, 1e-3, b) for b in budgets]
    assert distances == sorted(distances, reverse=True)


def _distance_or_inf(v, pg, budget, m):
    try:
        return min_distance(v, pg, budget, m)
    except InfeasibleError:
        return math.inf


@pytest.mark.parametrize("m", [CostModel(), EXACT])
@pytest.mark.parametrize("budget", [1e-30, 1e-15, 1e-8, 1e-3])
def test_min_distance_monotone_in_gate_error(m, budget):
    gate_errors = np.geomspace(1e-6, 9e-3, 80)
    distances = [_distance_or_inf(408, pg, budget, m) for pg in gate_errors]
    assert distances == sorted(distances)


def test_huge_distance_clamps_instead_of_overflowing():
    with pytest.warns(FitRangeWarning):
        with pytest.raises(InfeasibleError):
            min_distance(192, 0.9, 1e-30, d_max=401)
    with pytest.warns(FitRangeWarning):
        assert plumbing_piece_error(401, 0.9) == 1.0
    with pytest.warns(FitRangeWarning):
        assert logical_error_per_round(2001, 0.9, EXACT) == 1.0
    assert min_distance_array(np.array([192.0]), 0.9, np.array([1e-30]), d_max=401).tolist() == [0]


def test_min_distance_infeasible_reports_best():
    with pytest.raises(InfeasibleError) as info:
        min_distance(192, 5e-3, 1e-30, d_max=21)
    assert info.value.best == pytest.approx(192 * 21 / 2048)
    assert "21" in info.value.constraint


def test_min_distance_array_matches_scalar():
    rng = np.random.default_rng(seed=0)
    v = rng.choice([192.0, 408.0, 600.0, 12504.0], size=200)
    budgets = 10 ** rng.uniform(-22, -2, size=200)
    got = min_distance_array(v, 1e-4, budgets)
    expected = [min_distance(vi, 1e-4, bi) for vi, bi in zip(v, budgets)]
    assert got.tolist() == expected


def test_min_distance_array_marks_infeasible_with_zero():
    got = min_distance_array(np.array([192.0, 192.0]), 5e-3, np.array([1e-30, 1e3]), d_max=21)
    assert got.tolist() == [0, 3]


def test_injection_gate_error():
    assert injection_gate_error(1e-3) == pytest.approx(1e-4)
    assert math.isclose(injection_gate_error(1e-2), 1e-3)

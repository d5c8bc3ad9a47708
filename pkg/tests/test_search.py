import random

import pytest

from mfplan.config import SearchConfig
from mfplan.exceptions import DegenerateTargetError, InfeasibleError
from mfplan.planner import grid_candidates, optimize, plan_block_pipeline
from mfplan.types import Strategy


def brute_force(p_in, p_out, strategy, cfg, seed=0):
    candidates = list(grid_candidates(strategy, cfg))
    random.Random(seed).shuffle(candidates)
    best = None
    for eps, eps_lower, ks in candidates:
        try:
            schedule = plan_block_pipeline(p_in, p_out, ks, eps, cfg=cfg, eps_lower=eps_lower)
        except InfeasibleError:
            continue
        if best is None or schedule.key() < best.key():
            best = schedule
    return best


def test_grid_candidates_cardinality(small_search):
    assert len(list(grid_candidates(Strategy.ONLY_15TO1, small_search))) == 9
    assert len(list(grid_candidates(Strategy.ONE_BLOCK, small_search))) == 9 * 6
    assert len(list(grid_candidates(Strategy.TWO_BLOCK, small_search))) == 9 * 36
    per_level = small_search.copy(update={"per_level_eps": True})
    assert len(list(grid_candidates(Strategy.ONE_BLOCK, per_level))) == 9 * 9 * 6
    with pytest.raises(ValueError):
        list(grid_candidates(Strategy.BEST_OF_ALL))


def test_worked_example():
    schedule = optimize(1e-3, 1e-15, Strategy.ONLY_15TO1)
    assert schedule.strategy is Strategy.ONLY_15TO1
    assert schedule.distances == (19, 9)
    assert schedule.total_volume_per_output == pytest.approx(2.6691e7, rel=1e-12)
    assert 3.1e7 / 2 <= schedule.total_volume_per_output <= 3.1e7 * 2


@pytest.mark.parametrize(
    "p_in,p_out,levels",
    [
        (1e-2, 1e-5, 2),
        (1e-2, 1e-11, 2),
        (1e-2, 1e-12, 3),
        (1e-3, 1e-7, 1),
        (1e-3, 1e-8, 2),
        (1e-4, 1e-10, 1),
        (1e-4, 1e-11, 2),
    ],
)
def test_level_transitions(p_in, p_out, levels):
    assert optimize(p_in, p_out, Strategy.ONLY_15TO1).levels == levels


def test_deep_target():
    schedule = optimize(1e-2, 1e-20, Strategy.ONLY_15TO1)
    assert schedule.levels == 3
    assert schedule.top_distance in (45, 47, 49)
    assert list(schedule.distances) == sorted(schedule.distances, reverse=True)
    assert len(set(schedule.distances)) == 3


def test_block_beats_chain_at_shallow_target():
    chain = optimize(1e-4, 1e-5, Strategy.ONLY_15TO1)
    block = optimize(1e-4, 1e-5, Strategy.ONE_BLOCK)
    assert chain.total_volume_per_output == pytest.approx(187500, rel=1e-12)
    assert block.total_volume_per_output < chain.total_volume_per_output
    assert 1.5e5 / 2 <= block.total_volume_per_output <= 1.5e5 * 2
    best = optimize(1e-4, 1e-5)
    assert best.strategy is Strategy.ONE_BLOCK
    assert best.total_volume_per_output == block.total_volume_per_output


def test_block_gain_is_bounded():
    chain = optimize(1e-3, 1e-8, Strategy.ONLY_15TO1)
    block = optimize(1e-3, 1e-8, Strategy.ONE_BLOCK)
    assert block.total_volume_per_output < chain.total_volume_per_output
    assert chain.total_volume_per_output / block.total_volume_per_output < 2


def test_block_alone_when_inputs_suffice():
    schedule = optimize(1e-3, 1e-5, Strategy.ONE_BLOCK)
    assert schedule.ks == (2,)
    assert schedule.levels == 1
    assert schedule.total_volume_per_output == pytest.approx(1161843.75, rel=1e-12)


@pytest.mark.parametrize(
    "strategy,p_in,p_out",
    [
        (Strategy.ONLY_15TO1, 1e-3, 1e-15),
        (Strategy.ONE_BLOCK, 1e-3, 1e-5),
        (Strategy.ONE_BLOCK, 1e-3, 1e-12),
        (Strategy.ONE_BLOCK, 1e-2, 1e-9),
        (Strategy.TWO_BLOCK, 1e-3, 1e-12),
        (Strategy.TWO_BLOCK, 1e-4, 1e-18),
    ],
)
def test_grid_matches_exhaustive_search(strategy, p_in, p_out, small_search):
    expected = brute_force(p_in, p_out, strategy, small_search)
    found = optimize(p_in, p_out, strategy, cfg=small_search)
    assert found.key() == expected.key()
    assert found.stages == expected.stages


def test_grid_matches_exhaustive_search_with_retry(small_search):
    cfg = small_search.copy(update={"include_retry_factor": True, "per_level_eps": True})
    expected = brute_force(1e-3, 1e-12, Strategy.ONE_BLOCK, cfg, seed=1)
    found = optimize(1e-3, 1e-12, Strategy.ONE_BLOCK, cfg=cfg)
    assert found.key() == expected.key()


def test_ties_prefer_smallest_eps():
    schedule = optimize(1e-3, 1e-5, Strategy.ONE_BLOCK)
    cfg = SearchConfig()
    tied = []
    for eps in cfg.eps_grid:
        try:
            other = plan_block_pipeline(1e-3, 1e-5, [2], eps)
        except InfeasibleError:
            continue
        if other.total_volume_per_output == schedule.total_volume_per_output and other.levels == schedule.levels:
            tied.append(eps)
    assert len(tied) > 1
    assert schedule.eps == min(tied)


def test_best_of_all_is_minimum(small_search):
    schedules = [optimize(1e-3, 1e-12, s, cfg=small_search) for s in Strategy.concrete()]
    best = optimize(1e-3, 1e-12, Strategy.BEST_OF_ALL, cfg=small_search)
    assert best.total_volume_per_output == min(s.total_volume_per_output for s in schedules)
    assert best.strategy in Strategy.concrete()


def test_per_level_eps_never_worse(small_search):
    shared = optimize(1e-3, 1e-15, Strategy.ONE_BLOCK, cfg=small_search)
    split = optimize(1e-3, 1e-15, Strategy.ONE_BLOCK, cfg=small_search.copy(update={"per_level_eps": True}))
    assert split.total_volume_per_output <= shared.total_volume_per_output


def test_retry_factor_costs_volume(small_search):
    plain = optimize(1e-2, 1e-10, Strategy.ONLY_15TO1, cfg=small_search)
    retried = optimize(1e-2, 1e-10, Strategy.ONLY_15TO1, cfg=small_search.copy(update={"include_retry_factor": True}))
    assert retried.total_volume_per_output > plain.total_volume_per_output
    assert retried.include_retry_factor


def test_infeasible_levels():
    with pytest.raises(InfeasibleError) as info:
        optimize(1e-2, 1e-20, Strategy.ONLY_15TO1, cfg=SearchConfig(max_15to1_levels=2))
    assert info.value.constraint == "15-1 levels <= 2"


def test_infeasible_distance():
    with pytest.raises(InfeasibleError) as info:
        optimize(1e-3, 1e-15, Strategy.ONLY_15TO1, cfg=SearchConfig(d_max=9))
    assert info.value.constraint == "code distance <= 9"


def test_best_of_all_infeasible():
    with pytest.raises(InfeasibleError):
        optimize(1e-3, 1e-15, cfg=SearchConfig(d_max=5))


def test_degenerate():
    with pytest.raises(DegenerateTargetError):
        optimize(1e-3, 1e-2)


@pytest.mark.slow
@pytest.mark.parametrize("strategy", list(Strategy.concrete()))
def test_volume_scales_with_unit_constant(strategy):
    from mfplan.config import CostModel

    base = optimize(1e-3, 1e-12, strategy)
    scaled = optimize(1e-3, 1e-12, strategy, m=CostModel(qubits_per_d2=8))
    assert scaled.total_volume_per_output == pytest.approx(2 * base.total_volume_per_output, rel=1e-12)
    assert scaled.distances == base.distances

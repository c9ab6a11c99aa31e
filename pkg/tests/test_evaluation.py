#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
评估测试

测试内容：
1. 滚动评估与报告汇总
2. 收敛统计
3. 穷举/动态规划预言机
4. 噪声扫描
"""

import json

import numpy as np
import pytest

from agent import AgentConfig, train
from data.scenario import MinMaxScaler, ScenarioSeries
from env.microgrid import Action, MicrogridConfig
from evaluation import (
    compare_architectures, convergence_stats, constant_policy, default_soc, dp_oracle, exhaustive_oracle,
    myopic_policy, noise_sweep, objective_ablation, random_policy, reachable_soc_grid, report_name, rollout,
    rollout_checkpoint, rollout_policy, smooth_trace,
)
from evaluation.report import TRACE_COLUMNS, WINDOW_COLUMNS
from net import init_params
from schemes import StateBuilder
from evaluation.rollout import greedy_policy
from utils.errors import ConfigError, DataValidationError, DimensionMismatch, OracleLimitError, SeriesTooShortError
from utils.time_utils import hourly_index

UNIT_SCALER = MinMaxScaler({'price': 0.0, 'carbon_intensity': 0.0},
                           {'price': 1.0, 'carbon_intensity': 1.0})
SMALL_AGENT = dict(batch_size=8, episode_len=12, target_period=12, hidden=(16, 16, 16))


def hand_series(price, carbon=None, unmet=1000.0):
    """归一化后的电价即为原值；负荷不越限"""
    n = len(price)
    return ScenarioSeries(
        timestamps=hourly_index('2023-01-01', n),
        price=price,
        carbon=carbon if carbon is not None else np.zeros(n),
        demand=np.full(n, unmet),
        res=np.zeros(n),
        scaler=UNIT_SCALER,
    )


# ==================== 滚动评估 ====================

def test_idle_step_without_peak_earns_nothing(cfg):
    series = hand_series([0.0, 0.0])
    report = rollout_policy(constant_policy(Action.IDLE), series, cfg, UNIT_SCALER, span=(0, 1))
    assert len(report) == 1
    assert report.cumulative_reward == 0.0


def test_zero_weight_network_picks_first_action(series_2d, cfg):
    params = init_params(4, hidden=(8,), rng_seed=0)
    for w in params.weights.values():
        w[...] = 0.0
    report = rollout(params, series_2d, None, 'common', cfg, series_2d.scaler, horizon=4)
    assert set(report.actions) == {0}


def test_rollout_default_span_and_soc(series_2d, cfg):
    params = init_params(16, hidden=(8,), rng_seed=1)
    report = rollout(params, series_2d, None, 'pf', cfg, series_2d.scaler, horizon=4)
    assert list(report.trace['t']) == list(range(4, 44))
    assert report.trace['soc'].iloc[0] == default_soc(cfg) == 500.0
    assert list(report.trace.columns) == TRACE_COLUMNS


def test_rollout_rejects_dimension_mismatch(series_2d, cfg):
    params = init_params(10, rng_seed=0)
    with pytest.raises(DimensionMismatch):
        rollout(params, series_2d, None, 'pf', cfg, series_2d.scaler, horizon=4)


def test_rollout_rejects_bad_span(series_2d, cfg):
    with pytest.raises(SeriesTooShortError):
        rollout_policy(constant_policy(2), series_2d, cfg, series_2d.scaler, span=(10, 100))


def test_pb_decides_on_predictions_and_pays_actuals(series_2d, cfg):
    params = init_params(16, hidden=(8,), rng_seed=2)
    predicted = series_2d.with_values(price=series_2d.price[::-1].copy())
    report = rollout(params, series_2d, predicted, 'pb', cfg, series_2d.scaler, horizon=4)

    builder = StateBuilder(predicted, 'pb', 4, series_2d.scaler, cfg)
    expected = rollout_policy(greedy_policy(params, builder), series_2d, cfg, series_2d.scaler, span=(4, 44))
    assert report.actions == expected.actions
    assert report.cumulative_reward == expected.cumulative_reward
    np.testing.assert_array_equal(report.trace['price'], series_2d.price[4:44])


def test_report_totals_and_views(series_28d, cfg, tmp_path):
    report = rollout_policy(myopic_policy(series_28d, series_28d.scaler, cfg), series_28d, cfg,
                            series_28d.scaler, meta={'scheme': 'common'})
    totals = report.component_totals
    assert report.cumulative_reward == pytest.approx(
        totals.market + totals.carbon + totals.peak_penalty - totals.degradation)

    monthly = report.monthly_totals()
    assert list(monthly.index) == ['2023-01']
    assert monthly['reward'].sum() == pytest.approx(report.cumulative_reward)

    week = report.window(24)
    assert len(week) == 168
    assert list(week.columns) == WINDOW_COLUMNS
    assert week['t'].iloc[0] == 24

    trace_path, summary_path = report.write(tmp_path, 'common_d3qn_soft_noise0.000_seed0')
    assert trace_path.read_text(encoding='utf-8').splitlines()[0] == ','.join(TRACE_COLUMNS)
    summary = json.loads(summary_path.read_text(encoding='utf-8'))
    assert summary['scheme'] == 'common'
    assert summary['steps'] == len(series_28d)
    assert summary['peak_violation_hours'] == report.peak_violation_hours


def test_report_name():
    assert report_name('pb', 'd3qn', 'soft', 0.1, 42) == 'pb_d3qn_soft_noise0.100_seed42'


# ==================== 收敛统计 ====================

def test_convergence_of_constant_trace():
    mean, var = convergence_stats([5.0] * 100, window=(50, 100))
    assert mean == pytest.approx(5.0)
    assert var == pytest.approx(0.0)


def test_convergence_of_alternating_trace():
    trace = [0.0, 10.0] * 50
    mean, var = convergence_stats(trace, window=(10, 100), smoothing=2)
    assert mean == pytest.approx(5.0)
    assert var == pytest.approx(0.0, abs=1e-12)


def test_smoothing_uses_available_episodes():
    np.testing.assert_allclose(smooth_trace([2.0, 4.0, 6.0], window=2), [2.0, 3.0, 5.0])
    np.testing.assert_allclose(smooth_trace([1000.0, 3000.0], window=5, scale=1000), [1.0, 2.0])


def test_convergence_window_out_of_range():
    with pytest.raises(DataValidationError):
        convergence_stats([1.0] * 100, window=(50, 200))


# ==================== 穷举预言机 ====================

def test_single_step_oracle_matches_myopic(series_2d, cfg):
    scaler = series_2d.scaler
    myopic = myopic_policy(series_2d, scaler, cfg)
    for start in (0, 7, 19, 40):
        result = exhaustive_oracle(series_2d, start, 1, cfg, scaler)
        assert result.actions == (myopic(start, 500.0),)
        step_report = rollout_policy(myopic, series_2d, cfg, scaler, span=(start, start + 1))
        assert result.value == pytest.approx(step_report.cumulative_reward)


def test_oracle_idles_when_nothing_to_gain(cfg):
    series = hand_series([0.0, 0.0, 0.0])
    result = exhaustive_oracle(series, 0, 3, cfg, UNIT_SCALER)
    assert result.actions == (2, 2, 2)
    assert result.value == 0.0


def test_oracle_charges_cheap_then_discharges_expensive(cfg):
    """空电池：前两小时零电价充电，第三小时按电价 1 放电"""
    series = hand_series([0.0, 0.0, 1.0])
    result = exhaustive_oracle(series, 0, 3, cfg, UNIT_SCALER, soc0=cfg.soc_min)
    assert sorted(result.actions[:2]) == [0, 1]
    assert result.actions[2] == Action.FULL_DISCHARGE
    assert result.value == pytest.approx(0.98 * 300.0 - 0.02 * 450.0)


def test_oracle_horizon_limit(series_2d, cfg):
    with pytest.raises(OracleLimitError):
        exhaustive_oracle(series_2d, 0, 9, cfg, series_2d.scaler)
    with pytest.raises(OracleLimitError):
        exhaustive_oracle(series_2d, 0, 0, cfg, series_2d.scaler)


# ==================== 动态规划 ====================

@pytest.mark.parametrize('horizon', [1, 2, 3, 4])
def test_dp_matches_exhaustive_on_reachable_grid(series_2d, cfg, horizon):
    scaler = series_2d.scaler
    grid = reachable_soc_grid(cfg, 500.0, horizon)
    for start in (0, 16, 30):
        exact = exhaustive_oracle(series_2d, start, horizon, cfg, scaler)
        dp = dp_oracle(series_2d, cfg, scaler, start=start, stop=start + horizon, grid=grid)
        assert dp.value_at(500.0) == pytest.approx(exact.value, rel=1e-12, abs=1e-9)
        assert dp.dispatch_reward == pytest.approx(exact.value, rel=1e-9, abs=1e-9)


def test_dp_beats_simple_policies(series_2d, cfg):
    scaler = series_2d.scaler
    dp = dp_oracle(series_2d, cfg, scaler)
    assert len(dp.actions) == len(series_2d)
    for policy in (myopic_policy(series_2d, scaler, cfg), constant_policy(Action.IDLE)):
        baseline = rollout_policy(policy, series_2d, cfg, scaler).cumulative_reward
        assert dp.dispatch_reward >= baseline - 0.01 * abs(baseline)


def test_dp_grid_refinement_is_stable(series_2d, cfg):
    coarse = dp_oracle(series_2d, cfg, series_2d.scaler, soc_bins=201)
    fine = dp_oracle(series_2d, cfg, series_2d.scaler, soc_bins=401)
    assert abs(fine.dispatch_reward - coarse.dispatch_reward) <= 0.01 * abs(fine.dispatch_reward)


def test_dp_rejects_degenerate_grid(series_2d, cfg):
    with pytest.raises(OracleLimitError):
        dp_oracle(series_2d, cfg, series_2d.scaler, soc_bins=1)


def test_reachable_grid_contains_start(cfg):
    grid = reachable_soc_grid(cfg, 500.0, 2)
    assert 500.0 in grid
    assert grid.min() >= cfg.soc_min and grid.max() <= cfg.soc_max
    assert np.all(np.diff(grid) > 0)


# ==================== 噪声扫描 ====================

def test_noise_sweep_rows(series_2d, cfg):
    agent_cfg = AgentConfig(**SMALL_AGENT)
    pb = train(series_2d, 'pb', cfg, agent_cfg, episodes=1, seed=0, horizon=4).to_checkpoint()
    pf = train(series_2d, 'pf', cfg, agent_cfg, episodes=1, seed=0, horizon=4).to_checkpoint()

    table = noise_sweep(pb, pf, series_2d, levels=(0.0, 0.1, 0.3), seeds=(0, 1))
    assert list(table.columns) == ['level', 'pb_reward', 'pb_min', 'pb_max', 'pf_reward']
    assert len(table) == 3
    assert table['pf_reward'].nunique() == 1
    assert (table['pb_min'] <= table['pb_reward']).all()
    assert (table['pb_reward'] <= table['pb_max']).all()

    perfect = rollout_checkpoint(pb, series_2d).cumulative_reward
    assert table['pb_reward'].iloc[0] == perfect
    assert table['pf_reward'].iloc[0] == rollout_checkpoint(pf, series_2d).cumulative_reward


def test_checkpoint_rollout_uses_training_scheme(series_2d, cfg):
    checkpoint = train(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), episodes=1, seed=0,
                       horizon=4).to_checkpoint()
    report = rollout_checkpoint(checkpoint, series_2d)
    assert report.meta['scheme'] == 'pf'
    assert report.meta['arch'] == 'd3qn'
    with pytest.raises(DimensionMismatch):
        rollout_checkpoint(checkpoint, series_2d, scheme='common')


def test_rollout_meters_with_given_config(series_2d):
    nominal = MicrogridConfig()
    report = rollout_policy(constant_policy(Action.FULL_DISCHARGE), series_2d, nominal.with_weights(alpha=0.0),
                            series_2d.scaler, span=(0, 4))
    assert report.component_totals.carbon == 0.0


# ==================== 消融与架构对比 ====================

def test_objective_ablation_meters_with_nominal_weights(series_2d, cfg):
    result = objective_ablation(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), 'carbon',
                                episodes=1, seed=0, horizon=4, scaler=series_2d.scaler, noise_level=None)
    assert result.full.meta['ablation'] == 'full'
    assert result.ablated.meta['ablation'] == 'carbon'
    assert result.full_predicted is None
    table = result.table()
    assert list(table.columns) == ['objective', 'full', 'without_carbon']
    assert 'peak_violation_hours' in list(table['objective'])


def test_objective_ablation_reports_predicted_data(series_2d, cfg):
    result = objective_ablation(series_2d, 'pb', cfg, AgentConfig(**SMALL_AGENT), 'peak',
                                episodes=1, seed=0, horizon=4, scaler=series_2d.scaler, noise_level=0.1)
    assert list(result.table().columns) == [
        'objective', 'full', 'without_peak', 'full_predicted', 'without_peak_predicted']
    assert result.ablated_predicted.meta['noise'] == 0.1
    # 预测数据只影响状态，评估区间与实际数据相同
    assert list(result.full_predicted.trace['t']) == list(result.full.trace['t'])
    assert list(result.full_predicted.trace['price']) == list(result.full.trace['price'])


def test_degradation_ablation_still_meters_degradation(series_2d, cfg):
    result = objective_ablation(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), 'degradation',
                                episodes=1, seed=0, horizon=4, scaler=series_2d.scaler, noise_level=None)
    trace = result.ablated.trace
    expected = cfg.lam * trace['p_b'].abs().sum() * cfg.dt
    assert result.ablated.component_totals.degradation == pytest.approx(expected)
    assert 'degradation' in list(result.table()['objective'])


def test_unknown_ablation_rejected(series_2d, cfg):
    with pytest.raises(ConfigError):
        objective_ablation(series_2d, 'pf', cfg, AgentConfig(**SMALL_AGENT), 'market',
                           episodes=1, seed=0, horizon=4)


def test_compare_architectures_rows(series_2d, cfg):
    table = compare_architectures(series_2d, 'common', cfg, AgentConfig(**SMALL_AGENT),
                                  archs=('dqn', 'd3qn'), seeds=(0, 1), episodes=1, horizon=4)
    assert list(table.columns) == ['arch', 'seed', 'actual_reward', 'noisy_reward']
    assert list(table['arch']) == ['dqn', 'dqn', 'd3qn', 'd3qn']
    # COMMON 方案不读预测数据
    np.testing.assert_array_equal(table['actual_reward'], table['noisy_reward'])


def test_random_policy_is_seeded(series_2d, cfg):
    a = rollout_policy(random_policy(np.random.default_rng(4)), series_2d, cfg, series_2d.scaler)
    b = rollout_policy(random_policy(np.random.default_rng(4)), series_2d, cfg, series_2d.scaler)
    assert a.actions == b.actions
    assert set(a.actions) <= {0, 1, 2, 3, 4}

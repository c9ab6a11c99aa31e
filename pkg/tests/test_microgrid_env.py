#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
微网环境测试

测试内容：
1. 动作 -> 功率及可行域裁剪
2. SOC 转移、往返效率与可行域校验
3. 电网功率与弃电
4. 四项奖励（与独立实现逐项对比）
5. 随机初始化与长时间随机动作下的 SOC 安全
"""

import time

import numpy as np
import pytest

from env.microgrid import (
    Action, MicrogridConfig, MicrogridEnv, RewardComponents, action_to_power, battery_step,
    grid_power, reset, reward, step,
)
from utils.errors import ConfigError, ContractViolation


def independent_reward(pr, ci, p_b, p_u, alpha=0.25, beta=1.5, lam=0.02, p_g_max=4450.0, dt=1.0):
    """按定义逐项手算的奖励"""
    market = pr * p_b * dt
    carbon = alpha * ci * p_b * dt
    peak = beta * min(0.0, p_b + p_g_max - p_u) * dt
    degradation = lam * abs(p_b) * dt
    return market + carbon + peak - degradation


# ==================== 动作 -> 功率 ====================

def test_half_discharge_without_clip(cfg):
    assert action_to_power(Action.HALF_DISCHARGE, 500.0, cfg) == pytest.approx(150.0)


def test_full_discharge_clipped_near_empty(cfg):
    assert action_to_power(Action.FULL_DISCHARGE, 150.0, cfg) == pytest.approx(47.5)


def test_full_charge_clipped_near_full(cfg):
    assert action_to_power(Action.FULL_CHARGE, 880.0, cfg) == pytest.approx(-21.0526315789, abs=1e-6)


def test_action_levels():
    assert [a.level for a in Action] == [-1.0, -0.5, 0.0, 0.5, 1.0]


def test_action_to_power_accepts_arrays(cfg):
    powers = action_to_power(np.arange(5), np.full(5, 500.0), cfg)
    np.testing.assert_allclose(powers, [-300.0, -150.0, 0.0, 150.0, 300.0])


# ==================== SOC 转移 ====================

def test_battery_step_discharge(cfg):
    assert battery_step(500.0, 300.0, cfg) == pytest.approx(184.2105263158, abs=1e-6)


def test_battery_step_charge(cfg):
    assert battery_step(500.0, -300.0, cfg) == pytest.approx(785.0)


def test_battery_step_idle(cfg):
    assert battery_step(500.0, 0.0, cfg) == 500.0


def test_standby_loss_floored_at_minimum():
    cfg = MicrogridConfig(standby_loss=5.0)
    assert battery_step(500.0, 0.0, cfg) == pytest.approx(495.0)
    assert battery_step(102.0, 0.0, cfg) == pytest.approx(100.0)


def test_battery_step_rejects_infeasible_power(cfg):
    with pytest.raises(ContractViolation):
        battery_step(150.0, 100.0, cfg)
    with pytest.raises(ContractViolation):
        battery_step(880.0, -100.0, cfg)


def test_round_trip_efficiency(cfg):
    """充电再全部放回，交付能量为输入的 η²"""
    imported = 100.0
    charged = battery_step(500.0, -imported, cfg)
    delivered = (charged - 500.0) * cfg.efficiency
    assert battery_step(charged, delivered, cfg) == pytest.approx(500.0, abs=1e-9)
    assert delivered / imported == pytest.approx(0.9025, abs=1e-9)


# ==================== 电网功率 ====================

@pytest.mark.parametrize('p_u, p_b, p_g, curtailed', [
    (1000.0, 150.0, 850.0, 0.0),
    (-200.0, 0.0, 0.0, 200.0),
    (500.0, -300.0, 800.0, 0.0),
])
def test_grid_power(p_u, p_b, p_g, curtailed):
    assert grid_power(p_u, p_b) == (p_g, curtailed)


# ==================== 奖励 ====================

def test_reward_worked_example(cfg):
    total, components = reward(0.8, 0.6, 150.0, 1000.0, cfg)
    assert total == pytest.approx(139.5)
    assert components == pytest.approx(RewardComponents(120.0, 22.5, 0.0, 3.0))


def test_reward_idle_without_peak(cfg):
    total, _ = reward(0.0, 0.0, 0.0, 4000.0, cfg)
    assert total == 0.0


def test_reward_peak_violation(cfg):
    total, components = reward(0.0, 0.0, 0.0, 5000.0, cfg)
    assert total == pytest.approx(-825.0)
    assert components.peak_penalty == pytest.approx(-825.0)


def test_reward_matches_independent_evaluator(cfg, rng):
    """1000 组随机 (状态, 动作, 外部变量)，含越限与裁剪情形"""
    for _ in range(1000):
        soc = rng.uniform(cfg.soc_min, cfg.soc_max)
        action = int(rng.integers(5))
        pr, ci = rng.uniform(0, 1, size=2)
        p_u = rng.uniform(-1000.0, 6000.0)
        p_b = float(action_to_power(action, soc, cfg))
        total, components = reward(pr, ci, p_b, p_u, cfg)
        expected = independent_reward(pr, ci, p_b, p_u)
        assert total == pytest.approx(expected, rel=1e-12, abs=1e-9)
        assert components.total == total


def test_reward_monotone_in_price(cfg, rng):
    """放电时电价越高奖励越高，充电时越低，待机不变"""
    for _ in range(500):
        soc = rng.uniform(cfg.soc_min, cfg.soc_max)
        p_b = float(action_to_power(int(rng.integers(5)), soc, cfg))
        ci = rng.uniform(0, 1)
        p_u = rng.uniform(-1000.0, 6000.0)
        low, high = np.sort(rng.uniform(0, 1, size=2))
        if high - low < 1e-6:
            continue
        r_low, _ = reward(low, ci, p_b, p_u, cfg)
        r_high, _ = reward(high, ci, p_b, p_u, cfg)
        if p_b > 0:
            assert r_high > r_low
        elif p_b < 0:
            assert r_high < r_low
        else:
            assert r_high == r_low


# ==================== 单步 ====================

def test_step_composition(cfg):
    outcome = step(500.0, Action.HALF_DISCHARGE, 0.8, 0.6, 1000.0, cfg)
    assert outcome.reward == pytest.approx(139.5)
    assert outcome.next_soc == pytest.approx(342.1052631579, abs=1e-6)
    assert outcome.p_g == pytest.approx(850.0)
    assert not outcome.clipped
    assert not outcome.peak_violated


def test_step_empty_battery_cannot_discharge(cfg):
    outcome = step(100.0, Action.FULL_DISCHARGE, 0.5, 0.5, 1000.0, cfg)
    assert outcome.p_b_realized == 0.0
    assert outcome.clipped


def test_step_full_battery_cannot_charge(cfg):
    outcome = step(900.0, Action.FULL_CHARGE, 0.5, 0.5, 1000.0, cfg)
    assert outcome.p_b_realized == 0.0
    assert outcome.clipped


def test_step_flags_peak_violation(cfg):
    outcome = step(500.0, Action.IDLE, 0.5, 0.5, 5000.0, cfg)
    assert outcome.peak_violated
    assert outcome.p_g == pytest.approx(5000.0)


# ==================== 初始化 ====================

def test_reset_range_and_determinism(cfg):
    value = reset(cfg, 11)
    assert cfg.soc_min <= value <= cfg.soc_max
    assert reset(cfg, 11) == value


def test_reset_mean(cfg):
    rng = np.random.default_rng(0)
    draws = [reset(cfg, rng) for _ in range(10000)]
    assert np.mean(draws) == pytest.approx(500.0, abs=10.0)


def test_soc_safety_under_random_actions(cfg):
    """10000 步随机动作，SOC 始终在上下限内"""
    rng = np.random.default_rng(5)
    env = MicrogridEnv(cfg)
    env.reset(rng)
    actions = rng.integers(5, size=10000)
    unmet = rng.uniform(-500.0, 5000.0, size=10000)
    started = time.perf_counter()
    for action, p_u in zip(actions, unmet):
        outcome = env.step(int(action), 0.5, 0.5, float(p_u))
        assert cfg.soc_min - 1e-9 <= outcome.next_soc <= cfg.soc_max + 1e-9
    assert time.perf_counter() - started < 1.0


# ==================== 配置校验 ====================

def test_config_rejects_bad_efficiency():
    with pytest.raises(ConfigError):
        MicrogridConfig(efficiency=1.0)


def test_config_rejects_inverted_soc_limits():
    with pytest.raises(ConfigError):
        MicrogridConfig(soc_min=900.0, soc_max=100.0)


def test_reward_weight_ordering():
    MicrogridConfig().check_reward_weights()
    with pytest.raises(ConfigError, match='β > 1 > α'):
        MicrogridConfig(alpha=2.0).check_reward_weights()
    with pytest.raises(ConfigError):
        MicrogridConfig(beta=0.5).check_reward_weights()
    with pytest.raises(ConfigError):
        MicrogridConfig(lam=0.1).check_reward_weights()


def test_zeroed_weight_allowed_for_ablation():
    cfg = MicrogridConfig().with_weights(beta=0.0)
    assert cfg.beta == 0.0
    assert MicrogridConfig.from_dict(cfg.to_dict()) == cfg

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
最优调度预言机

- exhaustive_oracle: 小规模穷举 5^H 个动作序列（H <= 8）
- dp_oracle: SOC 离散网格上的逆向动态规划，提取的调度在精确环境中重新计算奖励

两者优化的奖励与智能体所见一致（归一化电价/碳强度）。
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Tuple

import numpy as np

from config import DP_SOC_BINS, ORACLE_MAX_HORIZON
from data.processors.scaling import scaled_inputs
from data.scenario import MinMaxScaler, ScenarioSeries
from env.microgrid import (
    MicrogridConfig, N_ACTIONS, action_to_power, battery_step, reward_components, step,
)
from evaluation.rollout import default_soc
from utils.errors import OracleLimitError, SeriesTooShortError
from utils.logger import get_logger

logger = get_logger('evaluation.oracles')


@dataclass(frozen=True)
class ExhaustiveResult:
    actions: Tuple[int, ...]
    value: float


@dataclass(frozen=True)
class DPResult:
    """
    grid/values: 起始时刻各 SOC 网格点的最优值
    actions/dispatch_reward: 从 soc0 出发提取的调度及其精确奖励
    """

    grid: np.ndarray
    values: np.ndarray
    actions: Tuple[int, ...]
    dispatch_reward: float
    soc0: float

    def value_at(self, soc: float) -> float:
        return float(self.values[_nearest(self.grid, np.asarray(soc))])


def _nearest(grid: np.ndarray, socs: np.ndarray) -> np.ndarray:
    """最近网格点索引（并列取较小索引）"""
    return np.abs(np.asarray(socs)[..., None] - grid).argmin(axis=-1)


def _step_rewards(actions, socs, pr: float, ci: float, pu: float, cfg: MicrogridConfig):
    """批量执行一步，返回 (奖励, 下一SOC)"""
    p_b = action_to_power(actions, socs, cfg)
    market, carbon, peak, degradation = reward_components(pr, ci, p_b, pu, cfg)
    return market + carbon + peak - degradation, battery_step(socs, p_b, cfg)


def _discounted(rewards: Sequence, gamma: float):
    """从后往前累加 r + γ·total"""
    total = rewards[-1]
    for r in reversed(rewards[:-1]):
        total = r + gamma * total
    return total


def _window_inputs(series: ScenarioSeries, scaler: MinMaxScaler, start: int, stop: int):
    if not 0 <= start < stop <= len(series):
        raise SeriesTooShortError(f"窗口 [{start}, {stop}) 超出序列长度 {len(series)}")
    pr, ci = scaled_inputs(series, scaler, clamp=True)
    return pr[start:stop], ci[start:stop], series.unmet[start:stop]


def exhaustive_oracle(series: ScenarioSeries, start: int, horizon: int, cfg: MicrogridConfig,
                      scaler: MinMaxScaler, soc0: Optional[float] = None,
                      gamma: float = 1.0) -> ExhaustiveResult:
    """
    穷举全部动作序列（含功率裁剪），返回最优序列

    Args:
        series: 实际序列
        start: 窗口起点
        horizon: H（1..8）
        cfg: 微网配置
        scaler: 归一化参数
        soc0: 初始荷电量，默认上下限中点
        gamma: 折扣因子（默认不折扣）

    Returns:
        ExhaustiveResult，并列时取字典序最小的序列

    Raises:
        OracleLimitError: H 超过上限
    """
    if not 1 <= horizon <= ORACLE_MAX_HORIZON:
        raise OracleLimitError(f"穷举步数须在 [1, {ORACLE_MAX_HORIZON}] 内: {horizon}")
    pr, ci, pu = _window_inputs(series, scaler, start, start + horizon)
    soc0 = default_soc(cfg) if soc0 is None else float(soc0)

    # 字典序排列的全部序列，按列逐步批量推进
    sequences = np.array(list(product(range(N_ACTIONS), repeat=horizon)), dtype=int)
    socs = np.full(len(sequences), soc0)
    rewards = []
    for k in range(horizon):
        r, socs = _step_rewards(sequences[:, k], socs, pr[k], ci[k], pu[k], cfg)
        rewards.append(r)
    totals = _discounted(rewards, gamma)

    best = int(np.argmax(totals))
    logger.debug(f"穷举 {len(sequences)} 个序列, 最优值 {totals[best]:.6f}")
    return ExhaustiveResult(tuple(int(a) for a in sequences[best]), float(totals[best]))


def reachable_soc_grid(cfg: MicrogridConfig, soc0: float, horizon: int) -> np.ndarray:
    """从 soc0 出发 horizon 步内所有可达 SOC（含 soc0），排序去重"""
    actions = np.arange(N_ACTIONS)
    level = np.array([float(soc0)])
    reached = [level]
    for _ in range(horizon):
        socs = np.repeat(level, N_ACTIONS)
        acts = np.tile(actions, len(level))
        level = np.unique(battery_step(socs, action_to_power(acts, socs, cfg), cfg))
        reached.append(level)
    return np.unique(np.concatenate(reached))


def dp_oracle(series: ScenarioSeries, cfg: MicrogridConfig, scaler: MinMaxScaler,
              soc_bins: int = DP_SOC_BINS, soc0: Optional[float] = None,
              start: int = 0, stop: Optional[int] = None, gamma: float = 1.0,
              grid: Optional[np.ndarray] = None) -> DPResult:
    """
    SOC 网格上的逆向归纳

    下一时刻 SOC 就近吸附到网格点；提取的调度从 soc0 出发在精确（不离散）环境中执行，
    报告的 dispatch_reward 是精确奖励。

    Args:
        series: 实际序列（完整已知）
        cfg: 微网配置
        scaler: 归一化参数
        soc_bins: 网格点数（>= 2），在 [E_b^min, E_b^max] 上均匀分布
        soc0: 初始荷电量
        start, stop: 优化区间
        gamma: 折扣因子
        grid: 自定义网格（覆盖 soc_bins）

    Raises:
        OracleLimitError: 网格点数小于 2
    """
    stop = len(series) if stop is None else stop
    if grid is None:
        if soc_bins < 2:
            raise OracleLimitError(f"SOC 网格点数至少为 2: {soc_bins}")
        grid = np.linspace(cfg.soc_min, cfg.soc_max, soc_bins)
    else:
        grid = np.unique(np.asarray(grid, dtype=float))
        if len(grid) < 2:
            raise OracleLimitError(f"SOC 网格点数至少为 2: {len(grid)}")
    pr, ci, pu = _window_inputs(series, scaler, start, stop)
    n_steps = stop - start

    # 每个 (动作, 网格点) 的下一状态与奖励
    actions = np.repeat(np.arange(N_ACTIONS), len(grid))
    socs = np.tile(grid, N_ACTIONS)
    p_b = action_to_power(actions, socs, cfg)
    next_idx = _nearest(grid, battery_step(socs, p_b, cfg)).reshape(N_ACTIONS, len(grid))

    values = np.zeros(len(grid))
    policy = np.zeros((n_steps, len(grid)), dtype=int)
    for k in reversed(range(n_steps)):
        market, carbon, peak, degradation = reward_components(pr[k], ci[k], p_b, pu[k], cfg)
        r = (market + carbon + peak - degradation).reshape(N_ACTIONS, len(grid))
        q = r + gamma * values[next_idx] if k < n_steps - 1 else r
        policy[k] = q.argmax(axis=0)
        values = q.max(axis=0)

    soc0 = default_soc(cfg) if soc0 is None else float(soc0)
    soc, dispatch, rewards = soc0, [], []
    for k in range(n_steps):
        action = int(policy[k, _nearest(grid, np.asarray(soc))])
        outcome = step(soc, action, pr[k], ci[k], pu[k], cfg)
        dispatch.append(action)
        rewards.append(outcome.reward)
        soc = outcome.next_soc

    result = DPResult(grid=grid, values=values, actions=tuple(dispatch),
                      dispatch_reward=float(_discounted(rewards, gamma)), soc0=soc0)
    logger.info(f"动态规划: {n_steps} 步, {len(grid)} 个网格点, 调度奖励 {result.dispatch_reward:.4f}")
    return result

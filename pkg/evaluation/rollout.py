#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
策略滚动评估

策略统一为 policy(t, soc) -> 动作索引。决策可以基于预测序列（PB 方案），
奖励始终按实际序列计算。默认完全贪心（ε=0）保证结果可复现。
"""

from typing import Callable, Optional, Tuple

import numpy as np
import pandas as pd

from core.event_bus import EventBus, EventType, event_bus
from data.processors.scaling import scaled_inputs
from data.scenario import MinMaxScaler, ScenarioSeries
from env.microgrid import MicrogridConfig, N_ACTIONS, action_to_power, reward_components, step
from net.checkpoint import Checkpoint
from net.dueling_net import NetworkParams, forward
from schemes.state_builder import Scheme, StateBuilder, evaluation_span, state_dim
from agent.d3qn_agent import select_action
from evaluation.report import EvalReport, TRACE_COLUMNS
from utils.errors import ConfigError, DimensionMismatch, SeriesTooShortError
from utils.logger import get_logger

logger = get_logger('evaluation.rollout')

Policy = Callable[[int, float], int]

ALL_ACTIONS = np.arange(N_ACTIONS)


def default_soc(cfg: MicrogridConfig) -> float:
    """评估默认初始荷电量：上下限中点"""
    return 0.5 * (cfg.soc_min + cfg.soc_max)


def greedy_policy(params: NetworkParams, builder: StateBuilder, epsilon: float = 0.0,
                  rng: Optional[np.random.Generator] = None) -> Policy:
    """Q 网络策略；epsilon > 0 时按 ε-greedy 探索"""
    if epsilon > 0 and rng is None:
        raise ValueError("ε > 0 时需要随机数发生器")

    def policy(t: int, soc: float) -> int:
        state = builder.build(t, soc)
        if epsilon > 0:
            return select_action(params, state, epsilon, rng)
        return int(np.argmax(forward(params, state)))

    return policy


def random_policy(rng: np.random.Generator) -> Policy:
    """均匀随机策略"""
    return lambda t, soc: int(rng.integers(N_ACTIONS))


def constant_policy(action: int) -> Policy:
    """固定动作策略"""
    action = int(action)
    return lambda t, soc: action


def myopic_policy(series: ScenarioSeries, scaler: MinMaxScaler, cfg: MicrogridConfig) -> Policy:
    """单步奖励最大化（并列取最小索引）"""
    pr, ci = scaled_inputs(series, scaler, clamp=True)
    pu = series.unmet

    def policy(t: int, soc: float) -> int:
        p_b = action_to_power(ALL_ACTIONS, soc, cfg)
        market, carbon, peak, degradation = reward_components(pr[t], ci[t], p_b, pu[t], cfg)
        return int(np.argmax(market + carbon + peak - degradation))

    return policy


def _count_clamped(series: ScenarioSeries, scaler: MinMaxScaler, lo: int, hi: int) -> int:
    pr, ci = scaled_inputs(series, scaler, clamp=False)
    outside = lambda x: int(np.count_nonzero((x[lo:hi] < 0) | (x[lo:hi] > 1)))
    return outside(pr) + outside(ci)


def rollout_policy(policy: Policy, series: ScenarioSeries, cfg: MicrogridConfig,
                   scaler: MinMaxScaler, soc0: Optional[float] = None,
                   span: Optional[Tuple[int, int]] = None, meta: Optional[dict] = None,
                   bus: Optional[EventBus] = None) -> EvalReport:
    """
    按实际序列执行任意策略

    Args:
        policy: policy(t, soc) -> 动作索引
        series: 实际序列
        cfg: 微网配置（奖励按此配置计量）
        scaler: 归一化参数
        soc0: 初始荷电量，默认上下限中点
        span: 评估区间 [lo, hi)，默认整条序列
        meta: 写入报告汇总的附加信息
        bus: 事件总线

    Returns:
        EvalReport
    """
    lo, hi = span if span is not None else (0, len(series))
    if not 0 <= lo < hi <= len(series):
        raise SeriesTooShortError(f"评估区间 [{lo}, {hi}) 超出序列长度 {len(series)} 或为空")

    clamped = _count_clamped(series, scaler, lo, hi)
    if clamped:
        logger.warning(f"{clamped} 个电价/碳强度值超出训练归一化范围，已截断到 [0,1]")

    pr, ci = scaled_inputs(series, scaler, clamp=True)
    pu = series.unmet
    soc = default_soc(cfg) if soc0 is None else float(soc0)

    rows = []
    for t in range(lo, hi):
        action = policy(t, soc)
        outcome = step(soc, action, pr[t], ci[t], pu[t], cfg)
        c = outcome.components
        rows.append((
            t, series.timestamps[t], action, outcome.p_b_realized, outcome.p_g, outcome.curtailed, soc,
            series.price[t], series.carbon[t], pu[t],
            c.market, c.carbon, c.peak_penalty, c.degradation, outcome.reward,
            outcome.clipped, outcome.peak_violated,
        ))
        soc = outcome.next_soc

    report = EvalReport(pd.DataFrame(rows, columns=TRACE_COLUMNS), meta=dict(meta or {}))
    logger.info(f"滚动评估完成: {hi - lo} 步, 累计奖励 {report.cumulative_reward:.4f}, "
                f"越限 {report.peak_violation_hours} 小时")
    (bus or event_bus).publish(EventType.ROLLOUT_FINISHED, report.summary())
    return report


def rollout(params: NetworkParams, series: ScenarioSeries, prediction_series: Optional[ScenarioSeries],
            scheme, cfg: MicrogridConfig, scaler: MinMaxScaler, horizon: int,
            soc0: Optional[float] = None, epsilon: float = 0.0,
            rng: Optional[np.random.Generator] = None,
            span: Optional[Tuple[int, int]] = None, meta: Optional[dict] = None) -> EvalReport:
    """
    Q 网络策略的滚动评估

    Args:
        params: 在线网络参数
        series: 实际序列（计算奖励）
        prediction_series: 预测序列，仅 PB 方案用于构造状态；None 表示完美预测
        scheme: 状态方案
        cfg: 微网配置
        scaler: 训练时的归一化参数
        horizon: T（同时决定公共评估区间 [T, n−T)）
        soc0: 初始荷电量
        epsilon: 评估探索率（默认 0）
        rng: epsilon > 0 时的随机数发生器
        span: 覆盖默认评估区间

    Raises:
        DimensionMismatch: 网络输入维度与状态方案不一致
    """
    scheme = Scheme(scheme)
    expected = state_dim(scheme, horizon)
    if params.input_dim != expected:
        raise DimensionMismatch(params.input_dim, expected, what='网络输入维度与状态维度')

    source = prediction_series if (scheme is Scheme.PB and prediction_series is not None) else series
    builder = StateBuilder(source, scheme, horizon, scaler, cfg)
    span = span if span is not None else evaluation_span(len(series), horizon)
    if not (builder.lo <= span[0] and span[1] <= builder.hi):
        raise SeriesTooShortError(
            f"评估区间 {span} 超出 {scheme.value} 方案可构造状态的区间 [{builder.lo}, {builder.hi})"
        )

    meta = {'scheme': scheme.value, 'horizon': horizon, 'epsilon': epsilon, **(meta or {})}
    policy = greedy_policy(params, builder, epsilon, rng)
    return rollout_policy(policy, series, cfg, scaler, soc0=soc0, span=span, meta=meta)


def rollout_checkpoint(checkpoint: Checkpoint, series: ScenarioSeries,
                       prediction_series: Optional[ScenarioSeries] = None,
                       scheme=None, cfg: Optional[MicrogridConfig] = None,
                       soc0: Optional[float] = None, epsilon: float = 0.0,
                       rng: Optional[np.random.Generator] = None,
                       span: Optional[Tuple[int, int]] = None,
                       meta: Optional[dict] = None) -> EvalReport:
    """
    按检查点评估（方案默认取检查点记录的方案，显式指定时先校验维度）

    Args:
        cfg: 计量奖励用的微网配置，默认取检查点中的配置
    """
    scheme = Scheme(scheme) if scheme is not None else checkpoint.scheme
    checkpoint.check_scheme(scheme, checkpoint.horizon)
    if scheme is not checkpoint.scheme:
        raise ConfigError('scheme', f"检查点按 {checkpoint.scheme.value} 方案训练，不能按 {scheme.value} 方案评估")
    meta = {'arch': checkpoint.arch_name, 'update': checkpoint.update, **(meta or {})}
    return rollout(checkpoint.params, series, prediction_series, scheme,
                   cfg or checkpoint.microgrid, checkpoint.scaler, checkpoint.horizon,
                   soc0=soc0, epsilon=epsilon, rng=rng, span=span, meta=meta)

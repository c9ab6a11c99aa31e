#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
训练循环

每个回合：
1. 随机初始化荷电量
2. 采样长度为 K 的时间窗口
3. K 次迭代：构造状态 → ε-greedy 动作 → 环境一步 → 存经验 → 采样小批次 → 梯度更新
4. 全局迭代数是 M 的倍数时同步目标网络（软/硬）

训练循环单线程运行，独占环境、回放池与网络参数。
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd

from config import HORIZON
from core.event_bus import EventBus, EventType, event_bus
from data.processors.scaling import fit_scaler, scaled_inputs
from data.processors.windows import sample_episode_window, window_start_range
from data.scenario import MinMaxScaler, ScenarioSeries
from env.microgrid import MicrogridConfig, MicrogridEnv
from net.checkpoint import Checkpoint
from net.dueling_net import NetworkParams
from schemes.state_builder import Scheme, StateBuilder
from agent.d3qn_agent import AgentConfig, D3QNAgent
from agent.schedule import ExponentialSchedule
from utils.logger import get_logger

logger = get_logger('trainer')

TRACE_COLUMNS = ['episode', 'cumulative_reward', 'epsilon', 'loss_mean']


@dataclass(frozen=True)
class EpisodeStats:
    episode: int
    cumulative_reward: float
    epsilon: float
    loss_mean: float


@dataclass
class TrainingResult:
    """训练产物"""

    params: NetworkParams
    target: NetworkParams
    trace: List[EpisodeStats]
    scaler: MinMaxScaler
    scheme: Scheme
    horizon: int
    agent_cfg: AgentConfig
    env_cfg: MicrogridConfig
    global_steps: int = 0
    extra: dict = field(default_factory=dict)

    def rewards(self) -> np.ndarray:
        return np.array([s.cumulative_reward for s in self.trace])

    def trace_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(s) for s in self.trace], columns=TRACE_COLUMNS)

    def to_checkpoint(self) -> Checkpoint:
        return Checkpoint(
            params=self.params,
            scheme=self.scheme,
            horizon=self.horizon,
            scaler=self.scaler,
            microgrid=self.env_cfg,
            double=self.agent_cfg.double,
            update=self.agent_cfg.update,
            extra=dict(self.extra),
        )


def train(series: ScenarioSeries, scheme, env_cfg: MicrogridConfig, agent_cfg: AgentConfig,
          episodes: int, seed: int, horizon: int = HORIZON,
          prediction_series: Optional[ScenarioSeries] = None,
          scaler: Optional[MinMaxScaler] = None,
          bus: Optional[EventBus] = None) -> TrainingResult:
    """
    训练 D3QN（或由架构标志选择的变体）

    Args:
        series: 实际场景序列（奖励始终按实际值计算）
        scheme: 状态方案 pb/pf/common
        env_cfg: 微网配置（消融实验时为置零权重后的配置）
        agent_cfg: 智能体配置
        episodes: 回合数
        seed: 随机种子（唯一随机源）
        horizon: T
        prediction_series: PB 方案的预测序列，默认使用实际值（完美预测）
        scaler: 归一化参数，默认按 series 拟合
        bus: 事件总线

    Returns:
        TrainingResult
    """
    scheme = Scheme(scheme)
    bus = bus or event_bus
    scaler = scaler or series.scaler or fit_scaler(series)
    state_source = prediction_series if (scheme is Scheme.PB and prediction_series is not None) else series

    builder = StateBuilder(state_source, scheme, horizon, scaler, env_cfg)
    # 序列过短时提前报错
    window_start_range(len(series), agent_cfg.episode_len, builder.horizon, scheme)

    rng = np.random.default_rng(seed)
    agent = D3QNAgent(builder.dim, agent_cfg, rng)
    env = MicrogridEnv(env_cfg)
    schedule = ExponentialSchedule(agent_cfg.eps_start, agent_cfg.eps_decay, agent_cfg.eps_min)
    pr, ci = scaled_inputs(series, scaler, clamp=True)
    pu = series.unmet

    logger.info(f"开始训练: {agent_cfg.arch}-{scheme.value}-{agent_cfg.update}, "
                f"{episodes} 回合, seed={seed}, 状态维度={builder.dim}")
    bus.publish(EventType.TRAINING_STARTED, {'episodes': episodes, 'seed': seed, 'scheme': scheme.value})

    trace: List[EpisodeStats] = []
    global_step = 0
    epsilon = schedule.value(0)
    for episode in range(episodes):
        soc = env.reset(rng)
        start = sample_episode_window(len(series), agent_cfg.episode_len, builder.horizon, scheme, rng)
        state = builder.build(start, soc)

        total = 0.0
        losses = []
        for t in range(start, start + agent_cfg.episode_len):
            epsilon = schedule.value(global_step)
            action = agent.act(state, epsilon)
            outcome = env.step(action, pr[t], ci[t], pu[t])
            total += outcome.reward

            next_state = None
            if builder.can_build(t + 1):
                next_state = builder.build(t + 1, outcome.next_soc)
                agent.remember(state, action, outcome.reward, next_state)

            loss = agent.learn()
            if loss is not None:
                losses.append(loss)

            global_step += 1
            if global_step % agent_cfg.target_period == 0:
                agent.sync_target()
                logger.debug(f"目标网络同步 ({agent_cfg.update}) @ 步 {global_step}")
                bus.publish(EventType.TARGET_SYNCED, {'step': global_step})
            state = next_state

        stats = EpisodeStats(
            episode=episode,
            cumulative_reward=total,
            epsilon=epsilon,
            loss_mean=float(np.mean(losses)) if losses else float('nan'),
        )
        trace.append(stats)
        bus.publish(EventType.EPISODE_FINISHED, stats)

    result = TrainingResult(
        params=agent.online,
        target=agent.target,
        trace=trace,
        scaler=scaler,
        scheme=scheme,
        horizon=horizon,
        agent_cfg=agent_cfg,
        env_cfg=env_cfg,
        global_steps=global_step,
        extra={'seed': seed, 'episodes': episodes},
    )
    logger.debug(f"训练完成: 共 {global_step} 步")
    bus.publish(EventType.TRAINING_FINISHED, {'steps': global_step, 'episodes': episodes})
    return result

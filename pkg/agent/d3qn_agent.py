#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
D3QN 智能体 - ε-greedy 决策、TD 目标（普通/Double）、梯度更新与目标网络同步

架构标志组合：
    double=False, dueling=False, hard  -> 普通 DQN
    double=True,  dueling=False        -> Double DQN
    double=False, dueling=True         -> Dueling DQN
    double=True,  dueling=True         -> D3QN
"""

from dataclasses import dataclass, asdict, replace
from typing import Dict, Optional, Tuple

import numpy as np

from config import AGENT_DEFAULTS, ARCH_PRESETS
from env.microgrid import N_ACTIONS
from net.adam import AdamState, adam_step
from net.dueling_net import NetworkParams, forward, init_params, loss_and_grad, soft_update, hard_update
from agent.replay_memory import Batch, Experience, ReplayMemory
from utils.errors import ConfigError
from utils.logger import get_logger

logger = get_logger('agent')

UPDATE_MODES = ('soft', 'hard')


def arch_name(double: bool, dueling: bool) -> str:
    """架构标志 -> 简称（dqn/ddqn/dueling/d3qn）"""
    for name, flags in ARCH_PRESETS.items():
        if flags == (bool(double), bool(dueling)):
            return name
    raise ValueError(f"未知架构组合: double={double}, dueling={dueling}")


@dataclass(frozen=True)
class AgentConfig:
    """智能体超参数"""

    gamma: float = AGENT_DEFAULTS['gamma']
    lr: float = AGENT_DEFAULTS['lr']
    batch_size: int = AGENT_DEFAULTS['batch_size']
    tau: float = AGENT_DEFAULTS['tau']
    target_period: int = AGENT_DEFAULTS['target_period']
    episode_len: int = AGENT_DEFAULTS['episode_len']
    eps_start: float = AGENT_DEFAULTS['eps_start']
    eps_decay: float = AGENT_DEFAULTS['eps_decay']
    eps_min: float = AGENT_DEFAULTS['eps_min']
    eval_epsilon: float = AGENT_DEFAULTS['eval_epsilon']
    double: bool = AGENT_DEFAULTS['double']
    dueling: bool = AGENT_DEFAULTS['dueling']
    update: str = AGENT_DEFAULTS['update']
    replay_capacity: int = AGENT_DEFAULTS['replay_capacity']
    hidden: Tuple[int, ...] = AGENT_DEFAULTS['hidden']

    def __post_init__(self):
        object.__setattr__(self, 'hidden', tuple(int(h) for h in self.hidden))
        if not 0 <= self.gamma <= 1:
            raise ConfigError('agent.gamma', f"须在 [0,1] 内，当前 {self.gamma}")
        if not 0 < self.tau <= 1:
            raise ConfigError('agent.tau', f"须在 (0,1] 内，当前 {self.tau}")
        if self.lr <= 0:
            raise ConfigError('agent.lr', f"须为正，当前 {self.lr}")
        if self.target_period < 1:
            raise ConfigError('agent.target_period', f"至少为1，当前 {self.target_period}")
        if self.episode_len < 1:
            raise ConfigError('agent.episode_len', f"至少为1，当前 {self.episode_len}")
        if self.batch_size < 1:
            raise ConfigError('agent.batch_size', f"至少为1，当前 {self.batch_size}")
        if self.batch_size > self.replay_capacity:
            raise ConfigError('agent.batch_size',
                              f"批次大小 {self.batch_size} 超过回放池容量 {self.replay_capacity}")
        for name in ('eps_start', 'eps_min', 'eval_epsilon'):
            if not 0 <= getattr(self, name) <= 1:
                raise ConfigError(f'agent.{name}', f"须在 [0,1] 内，当前 {getattr(self, name)}")
        if not 0 < self.eps_decay <= 1:
            raise ConfigError('agent.eps_decay', f"须在 (0,1] 内，当前 {self.eps_decay}")
        if self.update not in UPDATE_MODES:
            raise ConfigError('agent.update', f"须为 soft 或 hard，当前 {self.update}")

    @property
    def arch(self) -> str:
        return arch_name(self.double, self.dueling)

    def with_arch(self, name: str) -> 'AgentConfig':
        if name not in ARCH_PRESETS:
            raise ConfigError('agent.arch', f"未知架构 {name}，可选 {', '.join(ARCH_PRESETS)}")
        double, dueling = ARCH_PRESETS[name]
        return replace(self, double=double, dueling=dueling)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['hidden'] = list(self.hidden)
        return data


def select_action(params: NetworkParams, state: np.ndarray, epsilon: float,
                  rng: np.random.Generator) -> int:
    """
    ε-greedy 选动作（并列时取最小索引）

    Args:
        params: 在线网络
        state: 状态特征
        epsilon: 探索率
        rng: 随机数发生器
    """
    if not 0 <= epsilon <= 1:
        raise ValueError(f"探索率须在 [0,1] 内: {epsilon}")
    if rng.random() < epsilon:
        return int(rng.integers(N_ACTIONS))
    return int(np.argmax(forward(params, state)))


def bootstrap_targets(rewards: np.ndarray, q_next_online: np.ndarray, q_next_target: np.ndarray,
                      gamma: float, double: bool) -> np.ndarray:
    """
    由下一状态的 Q 值计算 TD 目标（回合结束视为截断，始终自举）

    double: y = R + γ·Q_target(s′, argmax_a Q_online(s′,a))
    普通:   y = R + γ·max_a Q_target(s′,a)
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    if double:
        best = np.argmax(q_next_online, axis=1)
        next_value = q_next_target[np.arange(len(best)), best]
    else:
        next_value = q_next_target.max(axis=1)
    return rewards + gamma * next_value


def td_targets(online: NetworkParams, target: NetworkParams, batch: Batch,
               gamma: float, double: bool) -> np.ndarray:
    """小批次的 TD 目标"""
    if len(batch) == 0:
        raise ValueError("空批次")
    q_next_online = forward(online, batch.next_states) if double else None
    q_next_target = forward(target, batch.next_states)
    return bootstrap_targets(batch.rewards, q_next_online, q_next_target, gamma, double)


class D3QNAgent:
    """
    持有在线/目标网络、Adam 状态和回放池

    Args:
        input_dim: 状态维度
        cfg: 智能体配置
        rng: 单一随机数流（初始化、探索、采样共用，保证可复现）
    """

    def __init__(self, input_dim: int, cfg: AgentConfig, rng: np.random.Generator):
        self.cfg = cfg
        self.rng = rng
        self.online = init_params(input_dim, cfg.dueling, cfg.hidden, rng)
        self.target = self.online.clone()
        self.adam = AdamState.for_params(self.online)
        self.memory = ReplayMemory(cfg.replay_capacity, input_dim)

    def act(self, state: np.ndarray, epsilon: float) -> int:
        return select_action(self.online, state, epsilon, self.rng)

    def remember(self, state, action: int, reward: float, next_state):
        self.memory.push(Experience(state, action, reward, next_state))

    def learn(self) -> Optional[float]:
        """
        一次梯度更新；回放池不足一个批次时跳过

        Returns:
            损失值，跳过时为 None
        """
        if len(self.memory) < self.cfg.batch_size:
            return None
        batch = self.memory.sample(self.cfg.batch_size, self.rng)
        targets = td_targets(self.online, self.target, batch, self.cfg.gamma, self.cfg.double)
        loss, grads = loss_and_grad(self.online, batch.states, batch.actions, targets)
        adam_step(self.online, self.adam, grads, self.cfg.lr)
        return loss

    def sync_target(self):
        """按配置软/硬更新目标网络"""
        if self.cfg.update == 'soft':
            soft_update(self.target, self.online, self.cfg.tau)
        else:
            hard_update(self.target, self.online)

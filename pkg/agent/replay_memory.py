#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
经验回放池 - 定长 FIFO 环形缓冲，满时淘汰最早的经验
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np

from env.microgrid import N_ACTIONS
from utils.errors import DimensionMismatch


@dataclass(frozen=True)
class Experience:
    """(s, a, R, s′)，a 为下达的动作索引（即使环境做了裁剪）"""

    state: np.ndarray
    action: int
    reward: float
    next_state: np.ndarray


class Batch(NamedTuple):
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray

    def __len__(self) -> int:
        return len(self.actions)


class ReplayMemory:
    """
    经验回放池

    Args:
        capacity: 容量
        state_dim: 状态维度
    """

    def __init__(self, capacity: int, state_dim: int):
        if capacity < 1:
            raise ValueError(f"容量至少为1: {capacity}")
        self.capacity = int(capacity)
        self.state_dim = int(state_dim)
        self._states = np.zeros((self.capacity, self.state_dim))
        self._next_states = np.zeros((self.capacity, self.state_dim))
        self._actions = np.zeros(self.capacity, dtype=np.int64)
        self._rewards = np.zeros(self.capacity)
        self._next = 0      # 下一个写入位置
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def push(self, experience: Experience):
        """写入经验，满时覆盖最早的一条"""
        state = np.asarray(experience.state, dtype=np.float64)
        next_state = np.asarray(experience.next_state, dtype=np.float64)
        if state.shape != (self.state_dim,) or next_state.shape != (self.state_dim,):
            raise DimensionMismatch(self.state_dim, (state.shape, next_state.shape), what='经验状态维度')
        if not 0 <= int(experience.action) < N_ACTIONS:
            raise ValueError(f"动作索引越界: {experience.action}")

        i = self._next
        self._states[i] = state
        self._next_states[i] = next_state
        self._actions[i] = int(experience.action)
        self._rewards[i] = float(experience.reward)
        self._next = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        """
        均匀无放回采样一个小批次

        Raises:
            ValueError: 经验数不足一个批次
        """
        if batch_size > self._size:
            raise ValueError(f"经验数 {self._size} 不足批次大小 {batch_size}")
        idx = rng.choice(self._size, size=batch_size, replace=False)
        return Batch(self._states[idx], self._actions[idx], self._rewards[idx], self._next_states[idx])

    def items(self) -> List[Experience]:
        """按写入顺序（最早在前）列出全部经验"""
        start = self._next if self._size == self.capacity else 0
        order = [(start + k) % self.capacity for k in range(self._size)]
        return [Experience(self._states[i].copy(), int(self._actions[i]), float(self._rewards[i]),
                           self._next_states[i].copy()) for i in order]


def push_and_sample(memory: ReplayMemory, experience: Experience, batch_size: int,
                    rng: np.random.Generator) -> Optional[Batch]:
    """
    写入经验后采样；经验不足一个批次时返回 None（调用方跳过本次梯度更新）
    """
    memory.push(experience)
    if len(memory) < batch_size:
        return None
    return memory.sample(batch_size, rng)

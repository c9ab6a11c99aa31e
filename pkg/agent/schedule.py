#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
ε-greedy 探索率调度（按环境步指数衰减，带下限）
"""

from config import AGENT_DEFAULTS


class ExponentialSchedule:
    """
    ε(t) = max(ε_min, ε_start · decay^t)

    Args:
        start: 初始探索率
        decay: 每步衰减因子
        floor: 下限
    """

    def __init__(self, start: float = AGENT_DEFAULTS['eps_start'],
                 decay: float = AGENT_DEFAULTS['eps_decay'],
                 floor: float = AGENT_DEFAULTS['eps_min']):
        self.start = start
        self.decay = decay
        self.floor = floor

    def value(self, step: int) -> float:
        if step < 0:
            raise ValueError(f"步数不能为负: {step}")
        return max(self.floor, self.start * self.decay ** step)


def epsilon_at(step: int, start: float = AGENT_DEFAULTS['eps_start'],
               decay: float = AGENT_DEFAULTS['eps_decay'],
               floor: float = AGENT_DEFAULTS['eps_min']) -> float:
    """第 step 个环境步的探索率"""
    return ExponentialSchedule(start, decay, floor).value(step)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
强化学习智能体模块
"""

from .schedule import ExponentialSchedule, epsilon_at
from .replay_memory import Experience, Batch, ReplayMemory, push_and_sample
from .d3qn_agent import (
    AgentConfig, D3QNAgent, select_action, td_targets, bootstrap_targets, arch_name,
)
from .trainer import train, TrainingResult, EpisodeStats

__all__ = [
    'ExponentialSchedule', 'epsilon_at', 'Experience', 'Batch', 'ReplayMemory', 'push_and_sample',
    'AgentConfig', 'D3QNAgent', 'select_action', 'td_targets', 'bootstrap_targets', 'arch_name',
    'train', 'TrainingResult', 'EpisodeStats',
]

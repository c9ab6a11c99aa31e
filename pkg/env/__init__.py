#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
微网环境模块
"""

from .microgrid import (
    MicrogridConfig, Action, ACTION_LEVELS, N_ACTIONS, RewardComponents, StepOutcome,
    MicrogridEnv, action_to_power, battery_step, grid_power, reward, reward_components,
    step, reset, feasible_bounds,
)

__all__ = [
    'MicrogridConfig', 'Action', 'ACTION_LEVELS', 'N_ACTIONS', 'RewardComponents',
    'StepOutcome', 'MicrogridEnv', 'action_to_power', 'battery_step', 'grid_power',
    'reward', 'reward_components', 'step', 'reset', 'feasible_bounds',
]

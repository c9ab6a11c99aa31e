#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
数据处理模块
"""

from .scaling import fit_scaler, scaled_inputs
from .noise import simulate_predictions
from .windows import sample_episode_window, window_start_range

__all__ = ['fit_scaler', 'scaled_inputs', 'simulate_predictions',
           'sample_episode_window', 'window_start_range']

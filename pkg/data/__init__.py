#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
数据层模块
"""

from .scenario import ExogenousRecord, ScenarioSeries, MinMaxScaler, NoiseSpec
from .fetchers import load_csv, save_csv, generate_synthetic, SyntheticProfile
from .processors import (
    fit_scaler, scaled_inputs, simulate_predictions, sample_episode_window, window_start_range,
)

__all__ = [
    'ExogenousRecord', 'ScenarioSeries', 'MinMaxScaler', 'NoiseSpec',
    'load_csv', 'save_csv', 'generate_synthetic', 'SyntheticProfile',
    'fit_scaler', 'scaled_inputs', 'simulate_predictions',
    'sample_episode_window', 'window_start_range',
]

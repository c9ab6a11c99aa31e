#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
收敛统计 - 回合奖励的滑动平均及窗口内均值/方差
"""

from typing import Sequence, Tuple

import numpy as np
import pandas as pd

from config import CONVERGENCE_SMOOTHING, CONVERGENCE_WINDOW
from utils.errors import DataValidationError


def smooth_trace(trace: Sequence[float], window: int = CONVERGENCE_SMOOTHING,
                 scale: float = 1.0) -> np.ndarray:
    """
    回合奖励的尾随滑动平均（前 window-1 个回合按已有回合平均）

    Args:
        trace: 每回合累计奖励
        window: 平滑长度
        scale: 展示缩放（如 1000 表示以千为单位）
    """
    if window < 1:
        raise ValueError(f"平滑长度至少为1: {window}")
    smoothed = pd.Series(np.asarray(trace, dtype=float)).rolling(window, min_periods=1).mean()
    return smoothed.to_numpy() / scale


def convergence_stats(trace: Sequence[float], window: Tuple[int, int] = CONVERGENCE_WINDOW,
                      smoothing: int = CONVERGENCE_SMOOTHING) -> Tuple[float, float]:
    """
    收敛奖励：平滑后在 [start, stop) 回合内的均值与总体方差

    Raises:
        DataValidationError: 窗口超出轨迹长度
    """
    start, stop = window
    if not 0 <= start < stop <= len(trace):
        raise DataValidationError(f"统计窗口 [{start}, {stop}) 超出轨迹长度 {len(trace)}")
    segment = smooth_trace(trace, smoothing)[start:stop]
    return float(segment.mean()), float(segment.var())

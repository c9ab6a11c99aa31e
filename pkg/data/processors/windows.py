#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
回合窗口采样
"""

import numpy as np

from utils.errors import SeriesTooShortError


def window_start_range(length: int, episode_len: int, horizon: int, scheme) -> tuple:
    """
    可行的窗口起点区间 [lo, hi]（闭区间）

    PB 需在窗口后留 T 步预测余量，PF 需在窗口前留 T 步历史，COMMON 不需要余量。
    """
    from schemes.state_builder import Scheme

    scheme = Scheme(scheme)
    margin = 0 if scheme is Scheme.COMMON else horizon
    if length < episode_len + margin:
        raise SeriesTooShortError(
            f"序列长度 {length} 小于回合长度 {episode_len} + 余量 {margin}"
        )
    if scheme is Scheme.PF:
        return margin, length - episode_len
    return 0, length - episode_len - margin


def sample_episode_window(length: int, episode_len: int, horizon: int, scheme,
                          rng: np.random.Generator) -> int:
    """
    均匀采样回合窗口起点

    Args:
        length: 序列长度
        episode_len: 回合长度 K
        horizon: 预测/历史步数 T
        scheme: 状态方案
        rng: 随机数发生器

    Returns:
        起点索引
    """
    lo, hi = window_start_range(length, episode_len, horizon, scheme)
    return int(rng.integers(lo, hi + 1))

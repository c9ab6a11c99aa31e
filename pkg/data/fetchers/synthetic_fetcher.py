#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
合成场景数据生成器

用于桌面规模的测试与实验（替代全年真实数据）：
- 电价、碳强度：按日正弦波动，峰值时刻可配置
- 负荷：早晚双峰，晚峰可超过电网峰值限制
- 可再生发电：正午钟形曲线，每天随机晴朗系数

使用方法：
    series = generate_synthetic(days=28, seed=7)
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import SYNTHETIC_START
from data.scenario import ScenarioSeries
from utils.time_utils import hourly_index

HOURS_PER_DAY = 24


@dataclass(frozen=True)
class SyntheticProfile:
    """合成场景形状参数"""

    # 电价 ($/kWh)
    price_base: float = 0.15
    price_amp: float = 0.08
    price_peak_hour: float = 18.0
    # 碳强度 (gCO2/kWh)
    carbon_base: float = 400.0
    carbon_amp: float = 120.0
    carbon_peak_hour: float = 20.0
    # 负荷 (kW)
    demand_base: float = 2200.0
    morning_peak: float = 1200.0
    morning_hour: float = 8.0
    evening_peak: float = 2500.0
    evening_hour: float = 19.0
    peak_width: float = 2.0
    # 可再生发电 (kW)
    res_peak: float = 1200.0
    res_hour: float = 13.0
    res_width: float = 2.5
    sunny_min: float = 0.5
    # 相对噪声
    noise: float = 0.03


def _circular_bump(hours: np.ndarray, center: float, width: float) -> np.ndarray:
    """按日循环的高斯峰"""
    dist = np.abs(hours - center)
    dist = np.minimum(dist, HOURS_PER_DAY - dist)
    return np.exp(-dist ** 2 / (2 * width ** 2))


def generate_synthetic(days: int, seed: int = 0,
                       profile: Optional[SyntheticProfile] = None,
                       start: str = SYNTHETIC_START) -> ScenarioSeries:
    """
    生成合成场景

    Args:
        days: 天数（>=1）
        seed: 随机种子（同一种子结果完全相同）
        profile: 形状参数
        start: 起始时间

    Returns:
        ScenarioSeries，长度 days*24
    """
    if days < 1:
        raise ValueError(f"天数至少为1: {days}")
    profile = profile or SyntheticProfile()
    rng = np.random.default_rng(seed)

    n = days * HOURS_PER_DAY
    hours = np.arange(n) % HOURS_PER_DAY
    phase = 2 * np.pi / HOURS_PER_DAY

    def jitter():
        return 1.0 + profile.noise * rng.standard_normal(n)

    price = profile.price_base + profile.price_amp * np.cos(phase * (hours - profile.price_peak_hour))
    price = np.maximum(price * jitter(), 0.01)

    carbon = profile.carbon_base + profile.carbon_amp * np.cos(phase * (hours - profile.carbon_peak_hour))
    carbon = np.maximum(carbon * jitter(), 1.0)

    demand = (profile.demand_base
              + profile.morning_peak * _circular_bump(hours, profile.morning_hour, profile.peak_width)
              + profile.evening_peak * _circular_bump(hours, profile.evening_hour, profile.peak_width))
    demand = np.maximum(demand * jitter(), 0.0)

    # 每天一个晴朗系数
    sunny = rng.uniform(profile.sunny_min, 1.0, size=days).repeat(HOURS_PER_DAY)
    res = profile.res_peak * sunny * _circular_bump(hours, profile.res_hour, profile.res_width)
    res = np.maximum(res * jitter(), 0.0)

    return ScenarioSeries(
        timestamps=hourly_index(start, n),
        price=price,
        carbon=carbon,
        demand=demand,
        res=res,
    )

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
状态构造 - 预测型(PB) / 无预测型(PF) / 常规(COMMON) 三种状态方案

特征顺序固定：全部电价 → 全部碳强度 → 全部未满足功率 → 荷电量。
- 电价、碳强度：min-max 归一化并截断到 [0,1]
- 未满足功率：除以电网峰值限制 P_g^max
- 荷电量：除以电池容量 E_b^c
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from data.scenario import MinMaxScaler, ScenarioSeries
from data.processors.scaling import scaled_inputs
from env.microgrid import MicrogridConfig
from utils.errors import DataValidationError


class Scheme(str, Enum):
    """状态方案"""

    PB = 'pb'           # 当前 + 未来 T 步预测
    PF = 'pf'           # 当前 + 过去 T 步历史
    COMMON = 'common'   # 仅当前


@dataclass(frozen=True)
class StateVector:
    scheme: Scheme
    features: np.ndarray
    horizon: int

    def __len__(self) -> int:
        return len(self.features)


def state_dim(scheme, horizon: int) -> int:
    """状态维度：PB/PF 为 3(T+1)+1，COMMON 为 4"""
    if Scheme(scheme) is Scheme.COMMON:
        return 4
    return 3 * (horizon + 1) + 1


def valid_state_range(length: int, scheme, horizon: int) -> Tuple[int, int]:
    """可构造状态的时刻区间 [lo, hi)"""
    scheme = Scheme(scheme)
    if scheme is Scheme.PB:
        return 0, length - horizon
    if scheme is Scheme.PF:
        return horizon, length
    return 0, length


def evaluation_span(length: int, horizon: int) -> Tuple[int, int]:
    """三种方案都能构造状态的公共区间 [T, n−T)，保证评估结果可比"""
    return horizon, length - horizon


class StateBuilder:
    """
    预先归一化整条序列，按时刻切片构造状态

    Args:
        series: 状态数据来源（PB 为预测序列，PF/COMMON 为实际序列）
        scheme: 状态方案
        horizon: T
        scaler: 归一化参数（来自训练用的实际序列）
        cfg: 微网配置（提供 P_g^max 与 E_b^c）
    """

    def __init__(self, series: ScenarioSeries, scheme, horizon: int,
                 scaler: MinMaxScaler, cfg: MicrogridConfig):
        self.scheme = Scheme(scheme)
        self.horizon = 0 if self.scheme is Scheme.COMMON else int(horizon)
        self.length = len(series)
        self.capacity = cfg.capacity
        pr, ci = scaled_inputs(series, scaler, clamp=True)
        self._pr = pr
        self._ci = ci
        self._pu = series.unmet / cfg.peak_limit
        self.dim = state_dim(self.scheme, self.horizon)
        self.lo, self.hi = valid_state_range(self.length, self.scheme, self.horizon)

    def can_build(self, t: int) -> bool:
        return self.lo <= t < self.hi

    def _window(self, t: int) -> slice:
        if not self.can_build(t):
            raise DataValidationError(
                f"时刻 {t} 超出 {self.scheme.value} 方案可用区间 [{self.lo}, {self.hi})"
            )
        if self.scheme is Scheme.PB:
            return slice(t, t + self.horizon + 1)
        return slice(t - self.horizon, t + 1)

    def build(self, t: int, soc: float) -> np.ndarray:
        """构造 t 时刻状态特征"""
        window = self._window(t)
        return np.concatenate((self._pr[window], self._ci[window], self._pu[window],
                               [soc / self.capacity]))


def build_state(series: ScenarioSeries, t: int, soc: float, scheme, horizon: int,
                scaler: Optional[MinMaxScaler], cfg: MicrogridConfig) -> StateVector:
    """
    构造单个状态

    Args:
        series: PB 传预测序列，PF/COMMON 传实际序列
        t: 时刻索引
        soc: 荷电量 (kWh)
        scheme: 状态方案
        horizon: T
        scaler: 归一化参数（None 时使用 series.scaler）
        cfg: 微网配置
    """
    scaler = scaler or series.scaler
    if scaler is None:
        raise DataValidationError("缺少归一化参数")
    builder = StateBuilder(series, scheme, horizon, scaler, cfg)
    return StateVector(builder.scheme, builder.build(t, soc), builder.horizon)

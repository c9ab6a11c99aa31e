#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
场景数据结构 - 逐小时外部变量序列及其归一化参数
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
import pandas as pd

from utils.errors import DataValidationError

# CSV 列名
COLUMNS = ['timestamp', 'price', 'carbon_intensity', 'demand_kw', 'res_kw']
NUMERIC_COLUMNS = COLUMNS[1:]

# 可归一化变量
PRICE = 'price'
CARBON = 'carbon_intensity'
SCALED_VARIABLES = (PRICE, CARBON)


@dataclass(frozen=True)
class ExogenousRecord:
    """单小时外部变量"""

    t: int
    timestamp: pd.Timestamp
    price: float            # PR ($/kWh)
    carbon: float           # CI (gCO2/kWh)
    demand: float           # P_d (kW)
    res: float              # P_r (kW)

    @property
    def unmet(self) -> float:
        """未满足功率 P_u = P_d − P_r"""
        return self.demand - self.res


@dataclass(frozen=True)
class MinMaxScaler:
    """按变量的 min-max 归一化参数"""

    mins: Dict[str, float]
    maxs: Dict[str, float]

    def transform(self, variable: str, values, clamp: bool = False):
        """
        归一化

        Args:
            variable: 变量名（price / carbon_intensity）
            values: 标量或数组
            clamp: 是否截断到 [0,1]
        """
        lo, hi = self.mins[variable], self.maxs[variable]
        scaled = (np.asarray(values, dtype=float) - lo) / (hi - lo)
        if clamp:
            scaled = np.clip(scaled, 0.0, 1.0)
        if np.ndim(scaled) == 0:
            return float(scaled)
        return scaled

    def inverse(self, variable: str, scaled):
        """反归一化"""
        lo, hi = self.mins[variable], self.maxs[variable]
        values = np.asarray(scaled, dtype=float) * (hi - lo) + lo
        if np.ndim(values) == 0:
            return float(values)
        return values

    def to_dict(self) -> Dict[str, Dict[str, float]]:
        return {'mins': dict(self.mins), 'maxs': dict(self.maxs)}

    @classmethod
    def from_dict(cls, data: Dict) -> 'MinMaxScaler':
        return cls(mins={k: float(v) for k, v in data['mins'].items()},
                   maxs={k: float(v) for k, v in data['maxs'].items()})


@dataclass(frozen=True)
class NoiseSpec:
    """预测噪声：逐点标准差 = level·|实际值|"""

    level: float
    seed: int = 0

    def __post_init__(self):
        if self.level < 0:
            raise DataValidationError(f"噪声水平不能为负: {self.level}")


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ScenarioSeries:
    """
    逐小时场景序列（构造后不可变，可在线程/进程间共享读取）

    unmet 始终由 demand − res 计算得到。
    """

    timestamps: pd.DatetimeIndex
    price: np.ndarray
    carbon: np.ndarray
    demand: np.ndarray
    res: np.ndarray
    scaler: Optional[MinMaxScaler] = None
    dt: float = 1.0
    unmet: np.ndarray = field(init=False)

    def __post_init__(self):
        n = len(self.timestamps)
        for name in ('price', 'carbon', 'demand', 'res'):
            arr = _readonly(getattr(self, name))
            if arr.shape != (n,):
                raise DataValidationError(f"{name} 长度 {arr.shape} 与时间戳数 {n} 不一致")
            object.__setattr__(self, name, arr)
        object.__setattr__(self, 'timestamps', pd.DatetimeIndex(self.timestamps))
        object.__setattr__(self, 'unmet', _readonly(self.demand - self.res))

    def __len__(self) -> int:
        return len(self.timestamps)

    def record(self, t: int) -> ExogenousRecord:
        """取第 t 小时记录"""
        return ExogenousRecord(
            t=t,
            timestamp=self.timestamps[t],
            price=float(self.price[t]),
            carbon=float(self.carbon[t]),
            demand=float(self.demand[t]),
            res=float(self.res[t]),
        )

    def with_scaler(self, scaler: MinMaxScaler) -> 'ScenarioSeries':
        return ScenarioSeries(self.timestamps, self.price, self.carbon, self.demand,
                              self.res, scaler=scaler, dt=self.dt)

    def with_values(self, price=None, carbon=None, demand=None, res=None) -> 'ScenarioSeries':
        """替换部分变量，返回新序列（保留时间戳与归一化参数）"""
        return ScenarioSeries(
            self.timestamps,
            self.price if price is None else price,
            self.carbon if carbon is None else carbon,
            self.demand if demand is None else demand,
            self.res if res is None else res,
            scaler=self.scaler,
            dt=self.dt,
        )

    def slice(self, start: int, stop: Optional[int] = None) -> 'ScenarioSeries':
        """连续子序列"""
        sl = slice(start, stop)
        return ScenarioSeries(self.timestamps[sl], self.price[sl], self.carbon[sl],
                              self.demand[sl], self.res[sl], scaler=self.scaler, dt=self.dt)

    def scaled(self, variable: str, clamp: bool = True) -> np.ndarray:
        """按 scaler 归一化整列"""
        if self.scaler is None:
            raise DataValidationError("序列尚未拟合归一化参数")
        values = self.price if variable == PRICE else self.carbon
        return self.scaler.transform(variable, values, clamp=clamp)

    def to_frame(self) -> pd.DataFrame:
        """转为 DataFrame（含 unmet_kw）"""
        return pd.DataFrame({
            'timestamp': self.timestamps,
            'price': self.price,
            'carbon_intensity': self.carbon,
            'demand_kw': self.demand,
            'res_kw': self.res,
            'unmet_kw': self.unmet,
        })

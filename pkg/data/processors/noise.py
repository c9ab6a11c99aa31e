#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
预测模拟 - 在实际值上叠加高斯噪声

逐点标准差 = level·|x|，对电价、碳强度、未满足功率三个外部变量加噪。
"""

import numpy as np

from data.scenario import NoiseSpec, ScenarioSeries


def simulate_predictions(series: ScenarioSeries, spec: NoiseSpec) -> ScenarioSeries:
    """
    生成带噪声的预测序列

    Args:
        series: 实际序列
        spec: 噪声水平与种子

    Returns:
        预测序列；level=0 时原样返回输入
    """
    if spec.level == 0:
        return series

    rng = np.random.default_rng(spec.seed)

    def noisy(values: np.ndarray) -> np.ndarray:
        return values + rng.normal(0.0, 1.0, size=values.shape) * spec.level * np.abs(values)

    price = noisy(series.price)
    carbon = noisy(series.carbon)
    unmet = noisy(series.unmet)

    # 保持 P_u = P_d − P_r 且两者非负：噪声计入负荷，负荷为负时转为可再生发电
    demand = series.res + unmet
    res = np.where(demand < 0, -unmet, series.res)
    demand = np.maximum(demand, 0.0)

    return series.with_values(price=price, carbon=carbon, demand=demand, res=res)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
归一化 - 电价与碳强度按 min-max 缩放到 [0,1]
"""

from typing import Iterable

from data.scenario import MinMaxScaler, ScenarioSeries, SCALED_VARIABLES, PRICE
from utils.errors import DataValidationError


def fit_scaler(series: ScenarioSeries, variables: Iterable[str] = SCALED_VARIABLES) -> MinMaxScaler:
    """
    拟合 min-max 归一化参数

    Args:
        series: 场景序列（非空）
        variables: 需要归一化的变量

    Returns:
        MinMaxScaler

    Raises:
        DataValidationError: 序列为空或某列为常数
    """
    if len(series) == 0:
        raise DataValidationError("空序列无法拟合归一化参数")

    frame = series.to_frame()
    mins, maxs = {}, {}
    for variable in variables:
        column = frame[variable]
        lo, hi = float(column.min()), float(column.max())
        if not lo < hi:
            raise DataValidationError(f"常数列无法归一化 (min = max = {lo})", column=variable)
        mins[variable], maxs[variable] = lo, hi
    return MinMaxScaler(mins=mins, maxs=maxs)


def scaled_inputs(series: ScenarioSeries, scaler: MinMaxScaler, clamp: bool = True):
    """
    整列归一化后的 (电价, 碳强度)

    超出 [0,1] 的值（噪声或未见过的极值）默认截断。
    """
    pr = scaler.transform(PRICE, series.price, clamp=clamp)
    ci = scaler.transform('carbon_intensity', series.carbon, clamp=clamp)
    return pr, ci

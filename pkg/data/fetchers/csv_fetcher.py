#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CSV场景数据读取/写入

文件格式（UTF-8，逗号分隔，小数点数值）：
    timestamp,price,carbon_intensity,demand_kw,res_kw
    2023-01-01T00:00:00,0.12,410.5,2300.0,0.0

行号按文件行计算（表头为第1行）。
"""

from pathlib import Path

import numpy as np
import pandas as pd

from data.scenario import COLUMNS, NUMERIC_COLUMNS, ScenarioSeries
from utils.errors import DataValidationError, SchemaError
from utils.logger import get_logger
from utils.time_utils import parse_timestamps, find_hourly_break, format_timestamp

logger = get_logger('data.csv')

# 表头占一行，数据行号 = 位置 + 2
HEADER_OFFSET = 2


def load_csv(path, dt: float = 1.0) -> ScenarioSeries:
    """
    读取逐小时场景CSV

    Args:
        path: 文件路径
        dt: 时间步长 (h)

    Returns:
        ScenarioSeries（按时间排序，unmet = demand − res）

    Raises:
        SchemaError: 缺少列
        DataValidationError: 非数值、负需求/负发电、重复或缺失时间戳
    """
    path = Path(path)
    if not path.is_file():
        raise DataValidationError(f"数据文件不存在: {path}")

    df = pd.read_csv(path, dtype=str, encoding='utf-8', keep_default_na=False)
    df.columns = [c.strip() for c in df.columns]

    missing = [c for c in COLUMNS if c not in df.columns]
    if missing:
        raise SchemaError(f"缺少列: {', '.join(missing)}", column=missing[0])
    if df.empty:
        raise DataValidationError(f"文件没有数据行: {path}")

    timestamps = parse_timestamps(df['timestamp'].str.strip())
    bad_ts = np.flatnonzero(timestamps.isna().to_numpy())
    if bad_ts.size:
        pos = int(bad_ts[0])
        raise DataValidationError(f"无法解析时间戳 '{df['timestamp'].iloc[pos]}'",
                                  row=pos + HEADER_OFFSET, column='timestamp')

    values = {}
    for col in NUMERIC_COLUMNS:
        numeric = pd.to_numeric(df[col].str.strip(), errors='coerce').to_numpy(dtype=float)
        bad = np.flatnonzero(~np.isfinite(numeric))
        if bad.size:
            pos = int(bad[0])
            raise DataValidationError(f"非数值单元格 '{df[col].iloc[pos]}'",
                                      row=pos + HEADER_OFFSET, column=col)
        values[col] = numeric

    # 需求与可再生发电均不能为负
    for col in ('demand_kw', 'res_kw'):
        negative = np.flatnonzero(values[col] < 0)
        if negative.size:
            pos = int(negative[0])
            raise DataValidationError(f"数值不能为负: {values[col][pos]}",
                                      row=pos + HEADER_OFFSET, column=col)

    order = np.argsort(timestamps.to_numpy(), kind='stable')
    sorted_ts = timestamps.iloc[order].reset_index(drop=True)
    brk = find_hourly_break(sorted_ts)
    if brk is not None:
        pos, kind = brk
        row = int(order[pos]) + HEADER_OFFSET
        label = '重复时间戳' if kind == 'duplicate' else '时间戳不连续（缺少小时）'
        raise DataValidationError(f"{label}: {format_timestamp(sorted_ts.iloc[pos])}",
                                  row=row, column='timestamp')

    series = ScenarioSeries(
        timestamps=pd.DatetimeIndex(sorted_ts),
        price=values['price'][order],
        carbon=values['carbon_intensity'][order],
        demand=values['demand_kw'][order],
        res=values['res_kw'][order],
        dt=dt,
    )
    logger.info(f"读取场景数据 {path.name}: {len(series)} 小时")
    return series


def save_csv(series: ScenarioSeries, path) -> Path:
    """
    写出场景CSV（可被 load_csv 读回）

    Args:
        series: 场景序列
        path: 输出路径

    Returns:
        输出路径
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({
        'timestamp': [format_timestamp(ts) for ts in series.timestamps],
        'price': series.price,
        'carbon_intensity': series.carbon,
        'demand_kw': series.demand,
        'res_kw': series.res,
    })
    frame.to_csv(path, index=False, encoding='utf-8', lineterminator='\n')
    logger.info(f"写出场景数据 {path}: {len(series)} 小时")
    return path

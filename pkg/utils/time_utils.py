#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
时间工具 - 小时级时间戳校验
"""

from typing import Optional, Tuple

import pandas as pd

ONE_HOUR = pd.Timedelta(hours=1)


def parse_timestamps(values) -> pd.Series:
    """
    解析 ISO-8601 时间戳

    Args:
        values: 字符串序列

    Returns:
        datetime64 Series（无法解析的为 NaT）
    """
    return pd.to_datetime(pd.Series(values), errors='coerce', format='ISO8601')


def find_hourly_break(timestamps: pd.Series) -> Optional[Tuple[int, str]]:
    """
    检查时间戳是否严格逐小时连续

    Args:
        timestamps: 已排序的 datetime64 Series

    Returns:
        None 表示连续；否则 (位置, 'duplicate'/'gap')
    """
    diffs = timestamps.diff().iloc[1:]
    for pos, delta in zip(range(1, len(timestamps)), diffs):
        if delta == pd.Timedelta(0):
            return pos, 'duplicate'
        if delta != ONE_HOUR:
            return pos, 'gap'
    return None


def hourly_index(start: str, periods: int) -> pd.DatetimeIndex:
    """生成逐小时时间索引"""
    return pd.date_range(start=pd.Timestamp(start), periods=periods, freq='h')


def format_timestamp(ts) -> str:
    """统一输出格式 YYYY-MM-DDTHH:MM:SS"""
    return pd.Timestamp(ts).strftime('%Y-%m-%dT%H:%M:%S')

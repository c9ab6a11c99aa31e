#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
评估报告 - 逐步轨迹、四项奖励汇总、峰值越限小时数

输出文件（UTF-8）：
    <name>_trace.csv   逐步轨迹
    <name>_summary.json 汇总
文件名包含状态方案、架构、更新方式、噪声水平和种子。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Tuple

import pandas as pd

from env.microgrid import RewardComponents
from utils.time_utils import format_timestamp

TRACE_COLUMNS = [
    't', 'timestamp', 'action', 'p_b', 'p_g', 'curtailed', 'soc',
    'price', 'carbon_intensity', 'unmet_kw',
    'market', 'carbon', 'peak_penalty', 'degradation', 'reward',
    'clipped', 'peak_violated',
]
COMPONENT_COLUMNS = list(RewardComponents._fields)
WINDOW_COLUMNS = ['t', 'timestamp', 'soc', 'p_b', 'p_g', 'price', 'carbon_intensity', 'unmet_kw']


def report_name(scheme: str, arch: str, update: str, noise: float, seed: int) -> str:
    """报告文件名前缀"""
    return f"{scheme}_{arch}_{update}_noise{noise:.3f}_seed{seed}"


@dataclass
class EvalReport:
    """单次滚动评估结果"""

    trace: pd.DataFrame
    meta: Dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.trace)

    @property
    def cumulative_reward(self) -> float:
        return float(self.trace['reward'].sum())

    @property
    def component_totals(self) -> RewardComponents:
        return RewardComponents(*(float(self.trace[c].sum()) for c in COMPONENT_COLUMNS))

    @property
    def peak_violation_hours(self) -> int:
        return int(self.trace['peak_violated'].sum())

    @property
    def actions(self) -> Tuple[int, ...]:
        return tuple(int(a) for a in self.trace['action'])

    def summary(self) -> Dict:
        totals = self.component_totals
        return {
            **self.meta,
            'steps': len(self),
            'cumulative_reward': self.cumulative_reward,
            'market': totals.market,
            'carbon': totals.carbon,
            'peak_penalty': totals.peak_penalty,
            'degradation': totals.degradation,
            'peak_violation_hours': self.peak_violation_hours,
            'clipped_steps': int(self.trace['clipped'].sum()),
        }

    def monthly_totals(self) -> pd.DataFrame:
        """按月汇总各项奖励与越限小时数"""
        month = pd.to_datetime(self.trace['timestamp']).dt.to_period('M').astype(str)
        grouped = self.trace.groupby(month)
        frame = grouped[COMPONENT_COLUMNS + ['reward']].sum()
        frame['peak_violation_hours'] = grouped['peak_violated'].sum().astype(int)
        frame.index.name = 'month'
        return frame

    def window(self, start: int, hours: int = 168) -> pd.DataFrame:
        """
        截取一段电池运行曲线（默认一周）

        Args:
            start: 起始时刻 t
            hours: 小时数
        """
        rows = self.trace[(self.trace['t'] >= start) & (self.trace['t'] < start + hours)]
        return rows[WINDOW_COLUMNS].reset_index(drop=True)

    def write(self, out_dir, name: str) -> Tuple[Path, Path]:
        """
        写出轨迹 CSV 与汇总 JSON

        Returns:
            (trace_path, summary_path)
        """
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        trace_path = out_dir / f"{name}_trace.csv"
        summary_path = out_dir / f"{name}_summary.json"

        frame = self.trace.copy()
        frame['timestamp'] = [format_timestamp(ts) for ts in frame['timestamp']]
        frame.to_csv(trace_path, index=False, encoding='utf-8', lineterminator='\n')
        write_json(self.summary(), summary_path)
        return trace_path, summary_path


def write_json(data: Dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write('\n')
    return path


#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
运行配置 - 单个 JSON 文件，扁平点号键

    {
        "paths.data": "storage/data/scenario.csv",
        "microgrid.alpha": 0.25,
        "agent.batch_size": 64,
        "scheme": "pf",
        "seed": 42
    }

优先级：默认值 < 配置文件 < 命令行参数。未知键直接报错。
解析后的完整配置（snapshot）写在输出旁边，单凭它即可复现一次运行。
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from config import (
    AGENT_DEFAULTS, ARCH_PRESETS, DEFAULT_EPISODES, DEFAULT_SCHEME, DEFAULT_SEED, DP_SOC_BINS,
    EXPERIMENT_NOISE, HORIZON, MICROGRID_DEFAULTS, RUNS_DIR, SWEEP_MODES, SYNTHETIC_DAYS, SYNTHETIC_SEED,
)
from env.microgrid import MicrogridConfig
from schemes.state_builder import Scheme
from agent.d3qn_agent import AgentConfig
from utils.errors import ConfigError

ORACLE_MODES = ('exhaustive', 'dp')


def _defaults() -> Dict[str, Any]:
    defaults = {
        'paths.data': '',
        'paths.out': str(RUNS_DIR),
        'paths.checkpoint': '',
        'scheme': DEFAULT_SCHEME,
        'horizon': HORIZON,
        'episodes': DEFAULT_EPISODES,
        'seed': DEFAULT_SEED,
        'noise': 0.0,
        'synthetic.days': SYNTHETIC_DAYS,
        'synthetic.seed': SYNTHETIC_SEED,
        'sweep.schemes': [],
        'sweep.updates': [],
        'sweep.archs': [],
        'sweep.noise': [],
        'sweep.mode': 'grid',
        'sweep.seeds': [DEFAULT_SEED],
        'sweep.ablations': ['carbon', 'peak', 'degradation'],
        'sweep.eval_noise': EXPERIMENT_NOISE,
        'eval.explore': False,
        'oracle.mode': 'exhaustive',
        'oracle.start': 0,
        'oracle.horizon': 4,
        'oracle.bins': DP_SOC_BINS,
    }
    defaults.update({f'microgrid.{k}': v for k, v in MICROGRID_DEFAULTS.items()})
    defaults.update({f'agent.{k}': (list(v) if isinstance(v, tuple) else v)
                     for k, v in AGENT_DEFAULTS.items()})
    return defaults


DEFAULTS = _defaults()


def _coerce(key: str, value: Any) -> Any:
    """按默认值类型转换并校验"""
    default = DEFAULTS[key]
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(key, f"需要布尔值，当前 {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
            raise ConfigError(key, f"需要整数，当前 {value!r}")
        return int(value)
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"需要数值，当前 {value!r}")
        return float(value)
    if isinstance(default, list):
        if not isinstance(value, (list, tuple)):
            raise ConfigError(key, f"需要列表，当前 {value!r}")
        return list(value)
    if not isinstance(value, str):
        raise ConfigError(key, f"需要字符串，当前 {value!r}")
    return value


def read_config_file(path) -> Dict[str, Any]:
    """读取 JSON 配置文件（扁平键）"""
    path = Path(path)
    if not path.is_file():
        raise ConfigError('--config', f"配置文件不存在: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError('--config', f"JSON 解析失败: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError('--config', "顶层必须是对象")
    return data


@dataclass(frozen=True)
class RunConfig:
    """解析并校验后的运行配置"""

    values: Dict[str, Any]
    microgrid: MicrogridConfig
    agent: AgentConfig
    scheme: Scheme

    @classmethod
    def from_sources(cls, path=None, overrides: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        """
        合并默认值、配置文件与命令行覆盖

        Args:
            path: JSON 配置文件路径（可选）
            overrides: 命令行覆盖（值为 None 的键忽略）

        Raises:
            ConfigError: 未知键、类型错误或取值非法（消息包含字段名）
        """
        merged = dict(DEFAULTS)
        sources = [read_config_file(path) if path else {}]
        sources.append({k: v for k, v in (overrides or {}).items() if v is not None})
        for source in sources:
            for key, value in source.items():
                if key not in DEFAULTS:
                    raise ConfigError(key, "未知配置项")
                merged[key] = _coerce(key, value)
        return cls.from_values(merged)

    @classmethod
    def from_values(cls, values: Dict[str, Any]) -> 'RunConfig':
        unknown = set(values) - set(DEFAULTS)
        if unknown:
            raise ConfigError(sorted(unknown)[0], "未知配置项")
        values = {**DEFAULTS, **values}

        microgrid = MicrogridConfig(**_block(values, 'microgrid'))
        microgrid.check_reward_weights()
        agent = AgentConfig(**_block(values, 'agent'))
        try:
            scheme = Scheme(values['scheme'])
        except ValueError:
            raise ConfigError('scheme', f"须为 pb/pf/common，当前 {values['scheme']!r}")

        if values['horizon'] < 0:
            raise ConfigError('horizon', f"不能为负，当前 {values['horizon']}")
        if values['episodes'] < 1:
            raise ConfigError('episodes', f"至少为1，当前 {values['episodes']}")
        if values['noise'] < 0:
            raise ConfigError('noise', f"噪声水平不能为负，当前 {values['noise']}")
        if values['synthetic.days'] < 1:
            raise ConfigError('synthetic.days', f"至少为1，当前 {values['synthetic.days']}")
        if values['sweep.mode'] not in SWEEP_MODES:
            raise ConfigError('sweep.mode', f"须为 {'/'.join(SWEEP_MODES)}，当前 {values['sweep.mode']!r}")
        if values['sweep.eval_noise'] < 0:
            raise ConfigError('sweep.eval_noise', f"噪声水平不能为负，当前 {values['sweep.eval_noise']}")
        if values['oracle.mode'] not in ORACLE_MODES:
            raise ConfigError('oracle.mode', f"须为 exhaustive 或 dp，当前 {values['oracle.mode']!r}")
        if values['paths.data'] and not Path(values['paths.data']).is_file():
            raise ConfigError('paths.data', f"数据文件不存在: {values['paths.data']}")
        return cls(values=values, microgrid=microgrid, agent=agent, scheme=scheme)

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def with_values(self, updates: Dict[str, Any]) -> 'RunConfig':
        """覆盖部分扁平键，返回新配置"""
        values = dict(self.values)
        for key, value in updates.items():
            if key not in DEFAULTS:
                raise ConfigError(key, "未知配置项")
            values[key] = _coerce(key, value)
        return RunConfig.from_values(values)

    @property
    def out_dir(self) -> Path:
        return Path(self.values['paths.out'])

    def sweep_axes(self) -> Dict[str, List]:
        """非空的扫描维度"""
        axes = {
            'scheme': self.values['sweep.schemes'],
            'agent.update': self.values['sweep.updates'],
            'arch': self.values['sweep.archs'],
            'noise': self.values['sweep.noise'],
        }
        return {name: list(v) for name, v in axes.items() if v}

    def snapshot(self) -> str:
        """解析后的完整配置（键排序的 JSON）"""
        return json.dumps(self.values, ensure_ascii=False, indent=2, sort_keys=True) + '\n'

    def write_snapshot(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.snapshot())
        return path


def _block(values: Dict[str, Any], prefix: str) -> Dict[str, Any]:
    head = prefix + '.'
    return {k[len(head):]: v for k, v in values.items() if k.startswith(head)}



def arch_overrides(name: str) -> Dict[str, bool]:
    """架构简称 -> agent.double / agent.dueling 覆盖项"""
    if name not in ARCH_PRESETS:
        raise ConfigError('arch', f"未知架构 {name}，可选 {', '.join(ARCH_PRESETS)}")
    double, dueling = ARCH_PRESETS[name]
    return {'agent.double': double, 'agent.dueling': dueling}

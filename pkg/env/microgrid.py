#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
微网环境 - 电池动态、功率平衡与四项奖励

符号约定：电池功率 p_b > 0 为放电，p_b < 0 为充电（kW）。
各物理函数同时接受标量和 numpy 数组，动态规划预言机按 SOC 网格批量调用。
"""

from dataclasses import dataclass, asdict, replace
from enum import IntEnum
from typing import Dict, NamedTuple, Optional, Tuple, Union

import numpy as np

from config import MICROGRID_DEFAULTS
from utils.errors import ConfigError, ContractViolation

ArrayLike = Union[float, np.ndarray]

# 电池荷电量 E_b (kWh)
BatteryState = float

# battery_step 可行域校验容差
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class MicrogridConfig:
    """微网物理参数与奖励权重"""

    capacity: float = MICROGRID_DEFAULTS['capacity']
    soc_max: float = MICROGRID_DEFAULTS['soc_max']
    soc_min: float = MICROGRID_DEFAULTS['soc_min']
    transfer_cap: float = MICROGRID_DEFAULTS['transfer_cap']
    efficiency: float = MICROGRID_DEFAULTS['efficiency']
    peak_limit: float = MICROGRID_DEFAULTS['peak_limit']
    dt: float = MICROGRID_DEFAULTS['dt']
    standby_loss: float = MICROGRID_DEFAULTS['standby_loss']
    alpha: float = MICROGRID_DEFAULTS['alpha']
    beta: float = MICROGRID_DEFAULTS['beta']
    lam: float = MICROGRID_DEFAULTS['lam']

    def __post_init__(self):
        if not 0 < self.soc_min < self.soc_max <= self.capacity:
            raise ConfigError('microgrid.soc_min/soc_max',
                              f"需满足 0 < soc_min < soc_max <= capacity "
                              f"(当前 {self.soc_min}, {self.soc_max}, {self.capacity})")
        if not 0 < self.efficiency < 1:
            raise ConfigError('microgrid.efficiency', f"效率须在 (0,1) 内，当前 {self.efficiency}")
        if self.transfer_cap < 0:
            raise ConfigError('microgrid.transfer_cap', f"不能为负，当前 {self.transfer_cap}")
        if self.standby_loss < 0:
            raise ConfigError('microgrid.standby_loss', f"不能为负，当前 {self.standby_loss}")
        if self.dt <= 0:
            raise ConfigError('microgrid.dt', f"时间步长须为正，当前 {self.dt}")
        if self.peak_limit < 0:
            raise ConfigError('microgrid.peak_limit', f"不能为负，当前 {self.peak_limit}")
        for name in ('alpha', 'beta', 'lam'):
            if getattr(self, name) < 0:
                raise ConfigError(f'microgrid.{name}', f"奖励权重不能为负，当前 {getattr(self, name)}")

    def check_reward_weights(self):
        """
        校验奖励权重次序 β > 1 > α ≫ λ（按 β > 1、α < 1、λ <= α/10 判定）

        消融实验会把某一权重置零，因此该检查只在解析运行配置时执行。
        """
        if not self.beta > 1:
            raise ConfigError('microgrid.beta', f"奖励权重须满足 β > 1 > α ≫ λ，β={self.beta} 不大于 1")
        if not self.alpha < 1:
            raise ConfigError('microgrid.alpha', f"奖励权重须满足 β > 1 > α ≫ λ，α={self.alpha} 不小于 1")
        if not self.lam <= self.alpha / 10:
            raise ConfigError('microgrid.lam',
                              f"奖励权重须满足 β > 1 > α ≫ λ，λ={self.lam} 超过 α/10={self.alpha / 10}")

    def with_weights(self, **weights) -> 'MicrogridConfig':
        """替换奖励权重（消融实验用）"""
        return replace(self, **weights)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'MicrogridConfig':
        return cls(**{k: float(v) for k, v in data.items()})


class Action(IntEnum):
    """离散动作：索引 0..4 对应 −1（满充）到 +1（满放）"""

    FULL_CHARGE = 0
    HALF_CHARGE = 1
    IDLE = 2
    HALF_DISCHARGE = 3
    FULL_DISCHARGE = 4

    @property
    def level(self) -> float:
        return ACTION_LEVELS[self.value]


ACTION_LEVELS = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
N_ACTIONS = len(ACTION_LEVELS)


class RewardComponents(NamedTuple):
    """四项奖励分量（peak_penalty <= 0，degradation >= 0 以正数记录）"""

    market: float
    carbon: float
    peak_penalty: float
    degradation: float

    @property
    def total(self) -> float:
        return self.market + self.carbon + self.peak_penalty - self.degradation


@dataclass(frozen=True)
class StepOutcome:
    """单步结果"""

    p_b_realized: float
    p_g: float
    curtailed: float
    reward: float
    components: RewardComponents
    next_soc: float
    clipped: bool
    peak_violated: bool


def _level_of(action) -> ArrayLike:
    if isinstance(action, (int, np.integer)):
        return ACTION_LEVELS[int(action)]
    return ACTION_LEVELS[np.asarray(action, dtype=int)]


def feasible_bounds(soc: ArrayLike, cfg: MicrogridConfig) -> Tuple[ArrayLike, ArrayLike]:
    """
    电池功率可行区间

    Returns:
        (最大充电功率（负值）, 最大放电功率)
    """
    discharge_max = (soc - cfg.soc_min) * cfg.efficiency / cfg.dt
    charge_min = (soc - cfg.soc_max) / cfg.efficiency / cfg.dt
    return charge_min, discharge_max


def action_to_power(action, soc: ArrayLike, cfg: MicrogridConfig) -> ArrayLike:
    """
    将动作转换为可执行的电池功率

    Args:
        action: 动作索引（Action 或 int，可为数组）
        soc: 当前荷电量 (kWh)
        cfg: 微网配置

    Returns:
        a·E_max/Δt 按可行区间裁剪后的功率 (kW)
    """
    commanded = _level_of(action) * cfg.transfer_cap / cfg.dt
    charge_min, discharge_max = feasible_bounds(soc, cfg)
    return np.minimum(np.maximum(commanded, charge_min), discharge_max)


def battery_step(soc: ArrayLike, p_b: ArrayLike, cfg: MicrogridConfig) -> ArrayLike:
    """
    电池状态转移

    Args:
        soc: 当前荷电量 (kWh)
        p_b: 已裁剪的电池功率 (kW)
        cfg: 微网配置

    Returns:
        下一时刻荷电量 (kWh)

    Raises:
        ContractViolation: p_b 超出可行区间（容差 1e-9）
    """
    charge_min, discharge_max = feasible_bounds(soc, cfg)
    if np.any(p_b > discharge_max + FEASIBILITY_TOL) or np.any(p_b < charge_min - FEASIBILITY_TOL):
        raise ContractViolation(
            f"电池功率 {p_b} 超出可行区间 [{charge_min}, {discharge_max}] (soc={soc})"
        )

    discharged = soc - cfg.dt * p_b / cfg.efficiency
    charged = soc - cfg.dt * p_b * cfg.efficiency
    idle = np.maximum(cfg.soc_min, soc - cfg.dt * cfg.standby_loss)
    next_soc = np.where(p_b > 0, discharged, np.where(p_b < 0, charged, idle))
    next_soc = np.clip(next_soc, cfg.soc_min, cfg.soc_max)
    if np.ndim(next_soc) == 0:
        return float(next_soc)
    return next_soc


def grid_power(p_u: ArrayLike, p_b: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    电网购电功率（不允许向电网送电，多余功率弃掉）

    Returns:
        (p_g, curtailed)
    """
    net = p_u - p_b
    return np.maximum(0.0, net), np.maximum(0.0, -net)


def reward_components(pr_scaled: ArrayLike, ci_scaled: ArrayLike, p_b: ArrayLike,
                      p_u: ArrayLike, cfg: MicrogridConfig):
    """
    计算四项奖励分量（数组版，预言机批量使用）

    Returns:
        (market, carbon, peak_penalty, degradation)
    """
    energy = p_b * cfg.dt
    market = pr_scaled * energy
    carbon = cfg.alpha * ci_scaled * energy
    peak_penalty = cfg.beta * np.minimum(0.0, p_b + cfg.peak_limit - p_u) * cfg.dt
    degradation = cfg.lam * np.abs(p_b) * cfg.dt
    return market, carbon, peak_penalty, degradation


def reward(pr_scaled: float, ci_scaled: float, p_b: float, p_u: float,
           cfg: MicrogridConfig) -> Tuple[float, RewardComponents]:
    """
    单步奖励：市场收益 + 碳收益 + 峰值惩罚 − 电池损耗

    Args:
        pr_scaled: 归一化电价 [0,1]
        ci_scaled: 归一化碳强度 [0,1]
        p_b: 实际（裁剪后）电池功率 (kW)
        p_u: 未满足功率 (kW)
        cfg: 微网配置

    Returns:
        (总奖励, 分量)
    """
    market, carbon, peak_penalty, degradation = reward_components(pr_scaled, ci_scaled, p_b, p_u, cfg)
    components = RewardComponents(float(market), float(carbon), float(peak_penalty), float(degradation))
    return components.total, components


def step(soc: float, action, pr_scaled: float, ci_scaled: float, p_u: float,
         cfg: MicrogridConfig) -> StepOutcome:
    """
    环境单步：动作 → 功率 → 奖励 → SOC → 电网功率

    Args:
        soc: 当前荷电量 (kWh)
        action: 动作索引
        pr_scaled: 归一化电价
        ci_scaled: 归一化碳强度
        p_u: 未满足功率 (kW)
        cfg: 微网配置
    """
    p_b = float(action_to_power(action, soc, cfg))
    commanded = float(_level_of(action)) * cfg.transfer_cap / cfg.dt
    total, components = reward(pr_scaled, ci_scaled, p_b, p_u, cfg)
    next_soc = battery_step(soc, p_b, cfg)
    p_g, curtailed = grid_power(p_u, p_b)
    return StepOutcome(
        p_b_realized=p_b,
        p_g=float(p_g),
        curtailed=float(curtailed),
        reward=total,
        components=components,
        next_soc=next_soc,
        clipped=abs(p_b - commanded) > 1e-12,
        peak_violated=components.peak_penalty < 0,
    )


def reset(cfg: MicrogridConfig, rng_seed=None) -> BatteryState:
    """
    随机初始化荷电量 E_b ~ U[E_b^min, E_b^max]

    Args:
        cfg: 微网配置
        rng_seed: 整数种子或 numpy Generator
    """
    rng = np.random.default_rng(rng_seed)
    return float(rng.uniform(cfg.soc_min, cfg.soc_max))


class MicrogridEnv:
    """
    有状态的微网环境（reset/step 接口）

    单个实例严格顺序使用；不同实例之间没有共享状态。
    """

    def __init__(self, cfg: Optional[MicrogridConfig] = None):
        self.cfg = cfg or MicrogridConfig()
        self.soc: BatteryState = 0.5 * (self.cfg.soc_min + self.cfg.soc_max)

    def reset(self, rng_seed=None, soc: Optional[float] = None) -> BatteryState:
        """随机（或指定）初始荷电量"""
        self.soc = reset(self.cfg, rng_seed) if soc is None else float(soc)
        return self.soc

    def step(self, action, pr_scaled: float, ci_scaled: float, p_u: float) -> StepOutcome:
        outcome = step(self.soc, action, pr_scaled, ci_scaled, p_u, self.cfg)
        self.soc = outcome.next_soc
        return outcome

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
实验组合：噪声扫描、目标消融、架构对比

每个实验由若干相互独立的单线程训练/评估组成，全部完成后再汇总。
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from config import EXPERIMENT_NOISE, HORIZON, NOISE_LEVELS
from data.processors.noise import simulate_predictions
from data.processors.scaling import fit_scaler
from data.scenario import MinMaxScaler, NoiseSpec, ScenarioSeries
from env.microgrid import MicrogridConfig
from net.checkpoint import Checkpoint
from agent.d3qn_agent import AgentConfig
from agent.trainer import TrainingResult, train
from evaluation.report import COMPONENT_COLUMNS, EvalReport
from evaluation.rollout import rollout, rollout_checkpoint
from utils.errors import ConfigError
from utils.logger import get_logger

logger = get_logger('evaluation.experiments')

# 消融目标 -> 置零的奖励权重
ABLATION_WEIGHTS = {
    'carbon': 'alpha',
    'peak': 'beta',
    'degradation': 'lam',
}


def evaluate_training(result: TrainingResult, series: ScenarioSeries,
                      prediction_series: Optional[ScenarioSeries] = None,
                      cfg: Optional[MicrogridConfig] = None, meta: Optional[dict] = None) -> EvalReport:
    """用训练结果的在线网络做贪心滚动评估"""
    meta = {'arch': result.agent_cfg.arch, 'update': result.agent_cfg.update, **(meta or {})}
    return rollout(result.params, series, prediction_series, result.scheme, cfg or result.env_cfg,
                   result.scaler, result.horizon, meta=meta)


def noise_sweep(pb_checkpoint: Checkpoint, pf_checkpoint: Checkpoint, series: ScenarioSeries,
                levels: Sequence[float] = NOISE_LEVELS, seeds: Sequence[int] = (0,)) -> pd.DataFrame:
    """
    PB 检查点在不同预测噪声下的累计奖励，与 PF 对照

    每个噪声水平按各种子重新生成预测序列；PF 只在实际数据上评估一次并逐行重复。

    Returns:
        每个噪声水平一行：level, pb_reward（各种子中位数）, pb_min, pb_max, pf_reward
    """
    pf_reward = rollout_checkpoint(pf_checkpoint, series).cumulative_reward

    rows = []
    for level in levels:
        rewards = [
            rollout_checkpoint(pb_checkpoint, series,
                               simulate_predictions(series, NoiseSpec(level, seed))).cumulative_reward
            for seed in seeds
        ]
        rows.append({
            'level': float(level),
            'pb_reward': float(np.median(rewards)),
            'pb_min': float(np.min(rewards)),
            'pb_max': float(np.max(rewards)),
            'pf_reward': pf_reward,
        })
        logger.info(f"噪声 {level:.3f}: PB {rows[-1]['pb_reward']:.2f} / PF {pf_reward:.2f}")
    return pd.DataFrame(rows)


@dataclass
class AblationResult:
    """
    完整奖励与去掉某一目标的训练结果，均按完整配置计量

    每个策略评估两次：实际数据，以及带噪声的预测数据（只有 PB 方案读取预测）。
    """

    which: str
    full: EvalReport
    ablated: EvalReport
    full_predicted: Optional[EvalReport] = None
    ablated_predicted: Optional[EvalReport] = None

    def table(self) -> pd.DataFrame:
        """各目标分量并排对比"""
        columns = COMPONENT_COLUMNS + ['cumulative_reward', 'peak_violation_hours']
        reports = {'full': self.full, f'without_{self.which}': self.ablated}
        if self.full_predicted is not None:
            reports['full_predicted'] = self.full_predicted
            reports[f'without_{self.which}_predicted'] = self.ablated_predicted
        table = {'objective': columns}
        for label, report in reports.items():
            summary = report.summary()
            table[label] = [summary[c] for c in columns]
        return pd.DataFrame(table)


def objective_ablation(series: ScenarioSeries, scheme, env_cfg: MicrogridConfig,
                       agent_cfg: AgentConfig, which: str, episodes: int, seed: int,
                       horizon: int = HORIZON, scaler: Optional[MinMaxScaler] = None,
                       noise_level: Optional[float] = EXPERIMENT_NOISE) -> AblationResult:
    """
    目标消融：将 α/β/λ 之一置零后重新训练

    两个策略都按名义配置计量奖励，因此被消融的分量仍会出现在报告中。

    Args:
        which: carbon / peak / degradation
        noise_level: 预测数据的噪声水平（按 seed 生成）；None 表示只在实际数据上评估
    """
    if which not in ABLATION_WEIGHTS:
        raise ConfigError('ablation', f"未知消融目标 {which}，可选 {', '.join(ABLATION_WEIGHTS)}")
    scaler = scaler or fit_scaler(series)
    ablated_cfg = env_cfg.with_weights(**{ABLATION_WEIGHTS[which]: 0.0})
    predicted = None if noise_level is None else simulate_predictions(series, NoiseSpec(noise_level, seed))

    reports = {}
    for label, train_cfg in (('full', env_cfg), (which, ablated_cfg)):
        result = train(series, scheme, train_cfg, agent_cfg, episodes, seed, horizon=horizon, scaler=scaler)
        meta = {'ablation': label, 'seed': seed}
        reports[label] = evaluate_training(result, series, cfg=env_cfg, meta=meta)
        if predicted is not None:
            reports[f'{label}_predicted'] = evaluate_training(
                result, series, predicted, cfg=env_cfg, meta={**meta, 'noise': noise_level})
        logger.info(f"消融 {label}: 累计奖励 {reports[label].cumulative_reward:.2f}")
    return AblationResult(
        which=which,
        full=reports['full'],
        ablated=reports[which],
        full_predicted=reports.get('full_predicted'),
        ablated_predicted=reports.get(f'{which}_predicted'),
    )


def compare_architectures(series: ScenarioSeries, scheme, env_cfg: MicrogridConfig,
                          agent_cfg: AgentConfig, archs: Iterable[str], seeds: Iterable[int],
                          episodes: int, horizon: int = HORIZON,
                          noise_level: float = EXPERIMENT_NOISE) -> pd.DataFrame:
    """
    DQN / DDQN / Dueling DQN / D3QN 对比

    每个 (架构, 种子) 训练一次，分别在实际数据和带噪声预测数据上评估。

    Returns:
        列 arch, seed, actual_reward, noisy_reward
    """
    scaler = fit_scaler(series)
    rows = []
    for arch in archs:
        cfg = agent_cfg.with_arch(arch)
        for seed in seeds:
            result = train(series, scheme, env_cfg, cfg, episodes, seed, horizon=horizon, scaler=scaler)
            noisy = simulate_predictions(series, NoiseSpec(noise_level, seed))
            rows.append({
                'arch': arch,
                'seed': seed,
                'actual_reward': evaluate_training(result, series).cumulative_reward,
                'noisy_reward': evaluate_training(result, series, noisy).cumulative_reward,
            })
    return pd.DataFrame(rows)

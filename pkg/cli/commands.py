#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
命令实现：train / eval / sweep / oracle / gendata

每个命令只依赖 RunConfig，输出旁边写出解析后的配置快照。
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import ARCH_PRESETS, NOISE_LEVELS, SWEEP_POOL_CONFIG
from core.event_bus import EventType, event_bus
from data.fetchers import generate_synthetic, load_csv, save_csv
from data.processors.noise import simulate_predictions
from data.processors.scaling import fit_scaler
from data.scenario import NoiseSpec, ScenarioSeries
from env.microgrid import Action
from net.checkpoint import file_digest, load_checkpoint, save_checkpoint
from schemes.state_builder import Scheme
from agent.trainer import train
from evaluation.experiments import compare_architectures, noise_sweep, objective_ablation
from evaluation.oracles import dp_oracle, exhaustive_oracle
from evaluation.report import EvalReport, report_name, write_json
from evaluation.rollout import constant_policy, rollout_checkpoint, rollout_policy
from cli.progress import SweepProgress, TrainingProgress
from cli.run_config import RunConfig, arch_overrides
from utils.errors import ConfigError, DataValidationError
from utils.logger import get_logger

logger = get_logger('cli')

CHECKPOINT_FILE = 'model.ckpt'
TRAIN_TRACE_FILE = 'train_trace.csv'
CONFIG_FILE = 'config.json'
SWEEP_FILE = 'sweep_results.csv'

SWEEP_COLUMNS = [
    'cell', 'scheme', 'update', 'arch', 'noise', 'seed', 'status', 'error',
    'cumulative_reward', 'market', 'carbon', 'peak_penalty', 'degradation',
    'peak_violation_hours', 'checkpoint_digest', 'report_digest',
]
SUMMARY_COLUMNS = SWEEP_COLUMNS[8:14]


def load_series(cfg: RunConfig) -> ScenarioSeries:
    """paths.data 为空时使用合成场景"""
    if cfg['paths.data']:
        series = load_csv(cfg['paths.data'], dt=cfg.microgrid.dt)
    else:
        series = generate_synthetic(cfg['synthetic.days'], cfg['synthetic.seed'])
        logger.info(f"使用合成场景: {cfg['synthetic.days']} 天, seed={cfg['synthetic.seed']}")
    return series.with_scaler(fit_scaler(series))


def run_name(cfg: RunConfig) -> str:
    return f"{cfg.scheme.value}_{cfg.agent.arch}_{cfg.agent.update}_seed{cfg['seed']}"


@dataclass(frozen=True)
class TrainOutputs:
    run_dir: Path
    checkpoint: Path
    trace: Path
    snapshot: Path


def cmd_train(cfg: RunConfig) -> TrainOutputs:
    """训练并写出检查点、回合奖励轨迹与配置快照"""
    series = load_series(cfg)
    with event_bus.subscribed(TrainingProgress().handlers()):
        result = train(series, cfg.scheme, cfg.microgrid, cfg.agent, cfg['episodes'], cfg['seed'],
                       horizon=cfg['horizon'], scaler=series.scaler)

    run_dir = cfg.out_dir / run_name(cfg)
    checkpoint = save_checkpoint(result.to_checkpoint(), run_dir / CHECKPOINT_FILE)
    trace = run_dir / TRAIN_TRACE_FILE
    result.trace_frame().to_csv(trace, index=False, encoding='utf-8', lineterminator='\n')
    snapshot = cfg.write_snapshot(run_dir / CONFIG_FILE)
    logger.info(f"训练产物已写出: {run_dir}")
    return TrainOutputs(run_dir, checkpoint, trace, snapshot)


@dataclass(frozen=True)
class EvalOutputs:
    report: EvalReport
    trace: Path
    summary: Path


def cmd_eval(cfg: RunConfig, scheme: Optional[str] = None) -> EvalOutputs:
    """
    加载检查点做滚动评估

    Args:
        cfg: 运行配置（paths.checkpoint 必填）
        scheme: 显式指定的方案；None 表示使用检查点记录的方案
    """
    if not cfg['paths.checkpoint']:
        raise ConfigError('paths.checkpoint', "评估需要指定检查点")
    checkpoint = load_checkpoint(cfg['paths.checkpoint'])
    scheme = Scheme(scheme) if scheme else checkpoint.scheme
    series = load_series(cfg)

    noise = cfg['noise']
    prediction = None
    if scheme is Scheme.PB:
        prediction = simulate_predictions(series, NoiseSpec(noise, cfg['seed']))
    elif noise > 0:
        logger.warning(f"{scheme.value} 方案不使用预测数据，忽略噪声水平 {noise}")
        noise = 0.0

    # 应用模式保留少量探索（agent.eval_epsilon），默认完全贪心
    epsilon = cfg.agent.eval_epsilon if cfg['eval.explore'] else 0.0
    meta = {'noise': noise, 'seed': cfg['seed']}
    report = rollout_checkpoint(checkpoint, series, prediction, scheme=scheme, cfg=cfg.microgrid,
                                epsilon=epsilon, rng=np.random.default_rng(cfg['seed']), meta=meta)

    name = report_name(scheme.value, checkpoint.arch_name, checkpoint.update, noise, cfg['seed'])
    trace, summary = report.write(cfg.out_dir, name)
    cfg.write_snapshot(cfg.out_dir / f"{name}_{CONFIG_FILE}")
    logger.info(f"评估完成: 累计奖励 {report.cumulative_reward:.4f} -> {summary}")
    return EvalOutputs(report, trace, summary)


def sweep_cells(cfg: RunConfig) -> List[Dict]:
    """
    训练单元：除噪声外各扫描维度的笛卡尔积 × 种子

    噪声维度只影响评估，由同一个检查点依次评估（见 noise_levels）。
    """
    axes = cfg.sweep_axes()
    if not axes:
        raise ConfigError('sweep', "至少需要一个非空扫描维度 (sweep.schemes/updates/archs/noise)")
    seeds = cfg['sweep.seeds']
    if not seeds:
        raise ConfigError('sweep.seeds', "种子列表不能为空")

    axes.pop('noise', None)
    names = list(axes)
    cells = []
    index = 0
    for combo in product(*(axes[n] for n in names)):
        for seed in seeds:
            overrides = {'seed': seed, 'paths.out': str(cfg.out_dir / f"cell{index:03d}")}
            index += 1
            for name, value in zip(names, combo):
                if name == 'arch':
                    overrides.update(arch_overrides(value))
                else:
                    overrides[name] = value
            cells.append(overrides)
    return cells


def noise_levels(cfg: RunConfig) -> List[float]:
    return [float(x) for x in cfg['sweep.noise']] or [cfg['noise']]


def _failed_rows(base: Dict, levels: List[float], error: Exception) -> List[Dict]:
    message = f"{type(error).__name__}: {error}"
    return [{**base, 'noise': level, 'status': 'failed', 'error': message} for level in levels]


def run_cell(values: Dict, overrides: Dict, levels: List[float]) -> List[Dict]:
    """
    单个训练单元：训练一次，按各噪声水平评估（进程池中独立执行）

    每个噪声水平一行；失败只记录在返回行中，不向上抛出。
    PF/COMMON 不读预测数据，只评估一次。
    """
    base = {'status': 'ok', 'error': '', 'seed': overrides.get('seed'),
            'scheme': overrides.get('scheme'), 'update': overrides.get('agent.update')}
    try:
        cfg = RunConfig.from_values(values).with_values(overrides)
        base.update(scheme=cfg.scheme.value, update=cfg.agent.update, arch=cfg.agent.arch, seed=cfg['seed'])
        trained = cmd_train(cfg)
    except Exception as e:
        return _failed_rows(base, levels, e)

    base['checkpoint_digest'] = file_digest(trained.checkpoint)
    rows = []
    evaluated = None
    for level in levels:
        row = {**base, 'noise': level}
        try:
            if evaluated is None or cfg.scheme is Scheme.PB:
                evaluated = cmd_eval(cfg.with_values({'paths.checkpoint': str(trained.checkpoint),
                                                      'paths.out': str(trained.run_dir), 'noise': level}))
            summary = evaluated.report.summary()
            for key in SUMMARY_COLUMNS:
                row[key] = summary[key]
            row['report_digest'] = file_digest(evaluated.trace)
        except Exception as e:
            row.update(status='failed', error=f"{type(e).__name__}: {e}")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class SweepOutputs:
    path: Path
    results: pd.DataFrame
    failed: int


def cmd_sweep(cfg: RunConfig) -> SweepOutputs:
    """
    执行扫描并写出汇总 CSV

    sweep.mode 为 grid 时每个 (训练单元, 噪声水平) 一行；
    noise / ablation / arch 模式分别运行噪声扫描、目标消融与架构对比。

    Returns:
        SweepOutputs（汇总路径、结果表、失败行数）
    """
    mode = cfg['sweep.mode']
    if mode != 'grid':
        with event_bus.subscribed(TrainingProgress().handlers()):
            return EXPERIMENTS[mode](cfg)

    cells = sweep_cells(cfg)
    levels = noise_levels(cfg)
    max_workers = max(1, SWEEP_POOL_CONFIG['max_workers'])
    logger.info(f"扫描 {len(cells)} 个训练单元 × {len(levels)} 个噪声水平, 进程数 {max_workers}")

    values = dict(cfg.values)
    if max_workers == 1:
        results = [run_cell(values, cell, levels) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(run_cell, values, cell, levels) for cell in cells]
            results = []
            for cell, future in zip(cells, futures):
                try:
                    results.append(future.result())
                except Exception as e:
                    results.append(_failed_rows({'seed': cell['seed']}, levels, e))

    progress = SweepProgress(sum(len(r) for r in results))
    rows = []
    with event_bus.subscribed(progress.handlers()):
        for index, cell_rows in enumerate(results):
            for row in cell_rows:
                row['cell'] = index
                rows.append(row)
                kind = EventType.SWEEP_CELL_FINISHED if row['status'] == 'ok' else EventType.SWEEP_CELL_FAILED
                event_bus.publish(kind, row)

    path = cfg.out_dir / SWEEP_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    results = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    results.to_csv(path, index=False, encoding='utf-8', lineterminator='\n')
    failed = len(progress.failed)
    logger.info(f"扫描完成: {progress.finished} 成功, {failed} 失败 -> {path}")
    if progress.summary():
        logger.warning(progress.summary())
    cfg.write_snapshot(cfg.out_dir / f"sweep_{CONFIG_FILE}")
    return SweepOutputs(path, results, failed)


def _write_experiment(cfg: RunConfig, table: pd.DataFrame, name: str) -> SweepOutputs:
    path = cfg.out_dir / f"{name}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, encoding='utf-8', lineterminator='\n')
    cfg.write_snapshot(cfg.out_dir / f"{name}_{CONFIG_FILE}")
    logger.info(f"实验结果已写出: {path}")
    return SweepOutputs(path, table, 0)


def run_noise_experiment(cfg: RunConfig) -> SweepOutputs:
    """PB 与 PF 各训练一次，PB 在各噪声水平（sweep.noise，缺省为默认噪声表）下评估"""
    series = load_series(cfg)
    checkpoints = {}
    for scheme in (Scheme.PB, Scheme.PF):
        result = train(series, scheme, cfg.microgrid, cfg.agent, cfg['episodes'], cfg['seed'],
                       horizon=cfg['horizon'], scaler=series.scaler)
        checkpoints[scheme] = result.to_checkpoint()
    table = noise_sweep(checkpoints[Scheme.PB], checkpoints[Scheme.PF], series,
                        levels=cfg['sweep.noise'] or NOISE_LEVELS, seeds=cfg['sweep.seeds'])
    return _write_experiment(cfg, table, 'noise_sweep')


def run_ablation_experiment(cfg: RunConfig) -> SweepOutputs:
    """sweep.ablations 中每个目标各做一次消融，实际数据与预测数据（sweep.eval_noise）并列"""
    series = load_series(cfg)
    tables = []
    for which in cfg['sweep.ablations']:
        result = objective_ablation(series, cfg.scheme, cfg.microgrid, cfg.agent, which,
                                    cfg['episodes'], cfg['seed'], horizon=cfg['horizon'],
                                    scaler=series.scaler, noise_level=cfg['sweep.eval_noise'])
        table = result.table()
        table.columns = [c.replace(f'without_{which}', 'without') for c in table.columns]
        table.insert(0, 'ablation', which)
        tables.append(table)
    return _write_experiment(cfg, pd.concat(tables, ignore_index=True), 'objective_ablation')


def run_arch_experiment(cfg: RunConfig) -> SweepOutputs:
    """sweep.archs（缺省为全部架构）× sweep.seeds"""
    series = load_series(cfg)
    table = compare_architectures(series, cfg.scheme, cfg.microgrid, cfg.agent,
                                  archs=cfg['sweep.archs'] or list(ARCH_PRESETS), seeds=cfg['sweep.seeds'],
                                  episodes=cfg['episodes'], horizon=cfg['horizon'],
                                  noise_level=cfg['sweep.eval_noise'])
    return _write_experiment(cfg, table, 'arch_comparison')


EXPERIMENTS = {
    'noise': run_noise_experiment,
    'ablation': run_ablation_experiment,
    'arch': run_arch_experiment,
}


def cmd_oracle(cfg: RunConfig) -> Dict:
    """
    最优调度预言机（穷举或动态规划），结果写 JSON

    同时给出同一窗口内全程待机的奖励作为对照。
    """
    series = load_series(cfg)
    start, horizon = cfg['oracle.start'], cfg['oracle.horizon']
    mode = cfg['oracle.mode']
    if start < 0 or start + horizon > len(series):
        raise DataValidationError(f"窗口 [{start}, {start + horizon}) 超出数据长度 {len(series)}")

    if mode == 'exhaustive':
        found = exhaustive_oracle(series, start, horizon, cfg.microgrid, series.scaler)
        actions, value = found.actions, found.value
    else:
        found = dp_oracle(series, cfg.microgrid, series.scaler, soc_bins=cfg['oracle.bins'],
                          start=start, stop=start + horizon)
        actions, value = found.actions, found.dispatch_reward

    idle = rollout_policy(constant_policy(Action.IDLE), series, cfg.microgrid, series.scaler,
                          span=(start, start + horizon))
    result = {
        'mode': mode,
        'start': start,
        'horizon': horizon,
        'actions': list(actions),
        'value': value,
        'idle_reward': idle.cumulative_reward,
    }
    path = write_json(result, cfg.out_dir / f"oracle_{mode}_start{start}_h{horizon}.json")
    print(f"最优动作序列: {list(actions)}")
    print(f"最优累计奖励: {value:.6f} (全程待机 {idle.cumulative_reward:.6f})")
    logger.info(f"预言机结果已写出: {path}")
    return result


def cmd_gendata(days: int, seed: int, out) -> Path:
    """
    生成合成场景 CSV

    Args:
        days: 天数
        seed: 随机种子
        out: 输出文件（.csv）或目录
    """
    out = Path(out)
    if out.suffix.lower() != '.csv':
        out = out / f"synthetic_{days}d_seed{seed}.csv"
    return save_csv(generate_synthetic(days, seed), out)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
全局配置文件

微网储能调度（D3QN）的默认参数。默认值与微网配置表、网络参数表保持一致，
运行时可被 JSON 配置文件和命令行参数覆盖（见 cli/run_config.py）。
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# .env 中的环境变量（如 MICROGRID_WORKERS）
load_dotenv()

# ==================== 路径配置 ====================
BASE_DIR = Path(__file__).parent.absolute()
STORAGE_DIR = BASE_DIR / 'storage'
LOGS_DIR = STORAGE_DIR / 'logs'
RUNS_DIR = STORAGE_DIR / 'runs'
DATA_DIR = STORAGE_DIR / 'data'

# ==================== 微网配置 ====================
# 电池容量 1000 kWh，SOC 上下限取容量的 90% / 10%
BATTERY_CAPACITY = 1000.0

MICROGRID_DEFAULTS = {
    'capacity': BATTERY_CAPACITY,           # E_b^c (kWh)
    'soc_max': 0.9 * BATTERY_CAPACITY,      # E_b^max (kWh)
    'soc_min': 0.1 * BATTERY_CAPACITY,      # E_b^min (kWh)
    'transfer_cap': 300.0,                  # E_max 单步最大充放电量 (kWh)
    'efficiency': 0.95,                     # η_b
    'peak_limit': 4450.0,                   # P_g^max (kW)
    'dt': 1.0,                              # Δt (h)
    'standby_loss': 0.0,                    # P_b,sb (kW)，配置表未给出
    'alpha': 0.25,                          # 碳收益权重
    'beta': 1.5,                            # 峰值惩罚权重
    'lam': 0.02,                            # 电池损耗权重
}

# ==================== 智能体配置 ====================
AGENT_DEFAULTS = {
    'gamma': 0.99,
    'lr': 0.0003,
    'batch_size': 64,
    'tau': 0.01,
    'target_period': 24,        # M：目标网络更新间隔（一天）
    'episode_len': 168,         # K：每回合时间序列长度（一周）
    'eps_start': 0.3,
    'eps_decay': 0.999,
    'eps_min': 0.01,
    'eval_epsilon': 0.01,
    'double': True,
    'dueling': True,
    'update': 'soft',           # soft / hard
    'replay_capacity': 10000,
    'hidden': (64, 64, 64),     # 每个流 3 层全连接 × 64
}

# 架构简称 -> (double, dueling)
ARCH_PRESETS = {
    'dqn': (False, False),
    'ddqn': (True, False),
    'dueling': (False, True),
    'd3qn': (True, True),
}

# ==================== 实验配置 ====================
DEFAULT_SCHEME = 'pf'           # pb / pf / common
HORIZON = 24                    # T
DEFAULT_EPISODES = 2000
DEFAULT_SEED = 42

# 预测噪声水平
NOISE_LEVELS = [0.0, 0.05, 0.10, 0.125, 0.15]

# 消融与架构对比中"预测数据"的噪声水平
EXPERIMENT_NOISE = 0.10

# sweep 模式：grid 为笛卡尔积扫描，其余为成组实验
SWEEP_MODES = ('grid', 'noise', 'ablation', 'arch')

# 收敛统计窗口（回合）与平滑长度
CONVERGENCE_WINDOW = (10000, 12000)
CONVERGENCE_SMOOTHING = 50

# 训练日志间隔（回合）
TRAIN_LOG_EVERY = 100

# ==================== 合成数据配置 ====================
SYNTHETIC_DAYS = 28
SYNTHETIC_SEED = 7
SYNTHETIC_START = '2023-01-01T00:00:00'

# ==================== 预言机配置 ====================
ORACLE_MAX_HORIZON = 8
DP_SOC_BINS = 201

# ==================== 并行配置 ====================
# 扫描实验进程池（单元之间完全隔离）
SWEEP_POOL_CONFIG = {
    'max_workers': int(os.getenv('MICROGRID_WORKERS', '1')),
}

# ==================== 日志配置 ====================
LOG_LEVEL = os.getenv('MICROGRID_LOG_LEVEL', 'INFO')  # DEBUG / INFO / WARNING / ERROR
LOG_FILE = str(LOGS_DIR / 'microgrid.log')
LOG_MAX_SIZE = 10 * 1024 * 1024  # 10MB
LOG_BACKUP_COUNT = 5

# ==================== 版本信息 ====================
VERSION = '1.0.0'
APP_NAME = 'Microgrid Dispatch'

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
评估与实验模块
"""

from .report import EvalReport, report_name, write_json
from .rollout import (
    rollout, rollout_policy, rollout_checkpoint, greedy_policy, random_policy,
    constant_policy, myopic_policy, default_soc,
)
from .convergence import convergence_stats, smooth_trace
from .oracles import exhaustive_oracle, dp_oracle, reachable_soc_grid, ExhaustiveResult, DPResult
from .experiments import (
    noise_sweep, objective_ablation, compare_architectures, evaluate_training, AblationResult,
)

__all__ = [
    'EvalReport', 'report_name', 'write_json',
    'rollout', 'rollout_policy', 'rollout_checkpoint', 'greedy_policy', 'random_policy',
    'constant_policy', 'myopic_policy', 'default_soc',
    'convergence_stats', 'smooth_trace',
    'exhaustive_oracle', 'dp_oracle', 'reachable_soc_grid', 'ExhaustiveResult', 'DPResult',
    'noise_sweep', 'objective_ablation', 'compare_architectures', 'evaluate_training', 'AblationResult',
]

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Adam 优化器（带偏差修正）
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from net.dueling_net import NetworkParams
from utils.errors import DimensionMismatch

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class AdamState:
    """一阶/二阶矩累积量与步数"""

    m: Dict[str, np.ndarray]
    v: Dict[str, np.ndarray]
    step: int = 0

    @classmethod
    def for_params(cls, params: NetworkParams) -> 'AdamState':
        return cls(m=params.zeros_like(), v=params.zeros_like(), step=0)

    def clone(self) -> 'AdamState':
        return AdamState({k: x.copy() for k, x in self.m.items()},
                         {k: x.copy() for k, x in self.v.items()}, self.step)


def adam_step(params: NetworkParams, state: AdamState, grads: Dict[str, np.ndarray],
              lr: float, beta1: float = BETA1, beta2: float = BETA2, eps: float = EPSILON) -> NetworkParams:
    """
    Adam 更新一步（原地修改 params 与 state）

    Args:
        params: 网络参数
        state: Adam 状态
        grads: 梯度（与参数同键同形）
        lr: 学习率

    Returns:
        更新后的 params
    """
    for name, w in params.weights.items():
        g = grads.get(name)
        if g is None or g.shape != w.shape or state.m[name].shape != w.shape:
            raise DimensionMismatch(w.shape, None if g is None else g.shape, what=f'{name} 梯度形状')

    state.step += 1
    correction1 = 1 - beta1 ** state.step
    correction2 = 1 - beta2 ** state.step
    for name, w in params.weights.items():
        g = grads[name]
        m = state.m[name] = beta1 * state.m[name] + (1 - beta1) * g
        v = state.v[name] = beta2 * state.v[name] + (1 - beta2) * g * g
        params.weights[name] = w - lr * (m / correction1) / (np.sqrt(v / correction2) + eps)
    return params

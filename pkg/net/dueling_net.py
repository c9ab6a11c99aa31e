#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
全连接 Q 网络（可选 Dueling 结构），numpy 双精度实现

Dueling：价值流与优势流从输入层起完全并行（不共享前置层），
    Q(s,a) = V(s) + A(s,a) − mean_a' A(s,a')
非 Dueling：单个流直接输出 5 个 Q 值。
每个流：3 层 × 64 单元 ReLU + 线性输出头。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from config import AGENT_DEFAULTS
from env.microgrid import N_ACTIONS
from utils.errors import DimensionMismatch

VALUE_STREAM = 'value'
ADVANTAGE_STREAM = 'advantage'
Q_STREAM = 'q'


@dataclass
class NetworkParams:
    """网络参数（在线网络与目标网络各持有一份）"""

    input_dim: int
    hidden: Tuple[int, ...]
    dueling: bool
    weights: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def streams(self) -> Tuple[str, ...]:
        return (VALUE_STREAM, ADVANTAGE_STREAM) if self.dueling else (Q_STREAM,)

    @property
    def n_layers(self) -> int:
        return len(self.hidden) + 1

    def head_size(self, stream: str) -> int:
        return 1 if stream == VALUE_STREAM else N_ACTIONS

    def layer_sizes(self, stream: str) -> List[int]:
        return [self.input_dim, *self.hidden, self.head_size(stream)]

    def shapes(self) -> Dict[str, Tuple[int, ...]]:
        return {name: arr.shape for name, arr in self.weights.items()}

    def clone(self) -> 'NetworkParams':
        return NetworkParams(self.input_dim, tuple(self.hidden), self.dueling,
                             {k: v.copy() for k, v in self.weights.items()})

    def zeros_like(self) -> Dict[str, np.ndarray]:
        return {k: np.zeros_like(v) for k, v in self.weights.items()}


def _key(stream: str, kind: str, layer: int) -> str:
    return f'{stream}.{kind}{layer}'


def check_same_shapes(a: NetworkParams, b: NetworkParams):
    if a.shapes() != b.shapes():
        raise DimensionMismatch(a.shapes(), b.shapes(), what='网络参数形状')


def init_params(input_dim: int, dueling: bool = True,
                hidden: Tuple[int, ...] = AGENT_DEFAULTS['hidden'], rng_seed=None) -> NetworkParams:
    """
    初始化网络参数（He 正态初始化，偏置为零）

    Args:
        input_dim: 输入维度
        dueling: 是否使用 Dueling 结构
        hidden: 每个流的隐层宽度
        rng_seed: 整数种子或 numpy Generator
    """
    if input_dim < 1:
        raise ValueError(f"输入维度至少为1: {input_dim}")
    rng = np.random.default_rng(rng_seed)
    params = NetworkParams(int(input_dim), tuple(int(h) for h in hidden), bool(dueling))
    for stream in params.streams:
        sizes = params.layer_sizes(stream)
        for layer, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            # 输出头不经过 ReLU，方差减半
            gain = 2.0 if layer < params.n_layers - 1 else 1.0
            params.weights[_key(stream, 'W', layer)] = rng.normal(0.0, np.sqrt(gain / fan_in),
                                                                  size=(fan_in, fan_out))
            params.weights[_key(stream, 'b', layer)] = np.zeros(fan_out)
    return params


def _as_batch(params: NetworkParams, states) -> Tuple[np.ndarray, bool]:
    x = np.asarray(states, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != params.input_dim:
        raise DimensionMismatch(params.input_dim, x.shape[-1] if x.ndim else 0, what='输入维度')
    return x, single


def _stream_forward(params: NetworkParams, stream: str, x: np.ndarray, cache: list = None) -> np.ndarray:
    h = x
    last = params.n_layers - 1
    for layer in range(params.n_layers):
        z = h @ params.weights[_key(stream, 'W', layer)] + params.weights[_key(stream, 'b', layer)]
        if cache is not None:
            cache.append((h, z))
        h = z if layer == last else np.maximum(z, 0.0)
    return h


def value_and_advantage(params: NetworkParams, states) -> Tuple[np.ndarray, np.ndarray]:
    """Dueling 网络的 V(s) 与 A(s,·)"""
    if not params.dueling:
        raise ValueError("非 Dueling 网络没有价值流")
    x, single = _as_batch(params, states)
    v = _stream_forward(params, VALUE_STREAM, x)[:, 0]
    a = _stream_forward(params, ADVANTAGE_STREAM, x)
    return (v[0], a[0]) if single else (v, a)


def _combine(v: np.ndarray, a: np.ndarray) -> np.ndarray:
    return v + (a - a.mean(axis=1, keepdims=True))


def forward(params: NetworkParams, states) -> np.ndarray:
    """
    前向计算 Q 值

    Args:
        params: 网络参数
        states: 单个状态 (d,) 或批量 (B, d)

    Returns:
        (5,) 或 (B, 5)
    """
    x, single = _as_batch(params, states)
    if params.dueling:
        q = _combine(_stream_forward(params, VALUE_STREAM, x), _stream_forward(params, ADVANTAGE_STREAM, x))
    else:
        q = _stream_forward(params, Q_STREAM, x)
    return q[0] if single else q


def _stream_backward(params: NetworkParams, stream: str, cache: list, g_out: np.ndarray,
                     grads: Dict[str, np.ndarray]):
    g = g_out
    for layer in reversed(range(params.n_layers)):
        h_in, _ = cache[layer]
        grads[_key(stream, 'W', layer)] = h_in.T @ g
        grads[_key(stream, 'b', layer)] = g.sum(axis=0)
        if layer > 0:
            g = g @ params.weights[_key(stream, 'W', layer)].T
            g = g * (cache[layer - 1][1] > 0)


def loss_and_grad(params: NetworkParams, states, actions, targets) -> Tuple[float, Dict[str, np.ndarray]]:
    """
    均方误差损失及其梯度

    TD 目标视为常数，梯度只经过所选动作的 Q 输出。

    Args:
        params: 在线网络参数
        states: (B, d)
        actions: (B,) 动作索引
        targets: (B,) TD 目标

    Returns:
        (loss, 与 params.weights 同键的梯度)
    """
    x, _ = _as_batch(params, states)
    actions = np.asarray(actions, dtype=int)
    targets = np.asarray(targets, dtype=np.float64)
    batch = x.shape[0]
    if batch == 0:
        raise ValueError("空批次无法计算损失")
    if actions.shape != (batch,) or targets.shape != (batch,):
        raise DimensionMismatch((batch,), (actions.shape, targets.shape), what='批次长度')

    caches = {stream: [] for stream in params.streams}
    if params.dueling:
        v = _stream_forward(params, VALUE_STREAM, x, caches[VALUE_STREAM])
        a = _stream_forward(params, ADVANTAGE_STREAM, x, caches[ADVANTAGE_STREAM])
        q = _combine(v, a)
    else:
        q = _stream_forward(params, Q_STREAM, x, caches[Q_STREAM])

    rows = np.arange(batch)
    diff = q[rows, actions] - targets
    loss = float(np.mean(diff ** 2))

    g_q = np.zeros_like(q)
    g_q[rows, actions] = 2.0 * diff / batch

    grads: Dict[str, np.ndarray] = {}
    if params.dueling:
        g_v = g_q.sum(axis=1, keepdims=True)
        g_a = g_q - g_q.mean(axis=1, keepdims=True)
        _stream_backward(params, VALUE_STREAM, caches[VALUE_STREAM], g_v, grads)
        _stream_backward(params, ADVANTAGE_STREAM, caches[ADVANTAGE_STREAM], g_a, grads)
    else:
        _stream_backward(params, Q_STREAM, caches[Q_STREAM], g_q, grads)
    return loss, grads


def soft_update(target: NetworkParams, online: NetworkParams, tau: float) -> NetworkParams:
    """
    目标网络软更新 w⁻ ← (1−τ)·w⁻ + τ·w（原地修改 target）
    """
    if not 0 < tau <= 1:
        raise ValueError(f"τ 须在 (0,1] 内: {tau}")
    check_same_shapes(target, online)
    for name, w_target in target.weights.items():
        target.weights[name] = (1 - tau) * w_target + tau * online.weights[name]
    return target


def hard_update(target: NetworkParams, online: NetworkParams) -> NetworkParams:
    """目标网络硬更新：逐元素复制在线网络参数"""
    check_same_shapes(target, online)
    for name, w_online in online.weights.items():
        target.weights[name] = w_online.copy()
    return target

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
模型检查点

文件结构（自描述，可脱离训练配置直接加载并执行策略）：
    8 字节魔数 | 4 字节小端头长度 | UTF-8 JSON 头 | 小端 float64 参数块
JSON 头包含架构标志、输入维度、隐层宽度、各参数块形状与偏移、状态方案、
T、归一化参数及微网配置。相同内容写出的文件逐字节一致。
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict

import numpy as np

from data.scenario import MinMaxScaler
from env.microgrid import MicrogridConfig
from net.dueling_net import NetworkParams
from schemes.state_builder import Scheme, state_dim
from utils.errors import DataValidationError, DimensionMismatch

MAGIC = b'MGD3QN\x00\x01'
DTYPE = '<f8'


@dataclass
class Checkpoint:
    """训练产物：在线网络参数 + 构造状态所需的全部信息"""

    params: NetworkParams
    scheme: Scheme
    horizon: int
    scaler: MinMaxScaler
    microgrid: MicrogridConfig
    double: bool = True
    update: str = 'soft'
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def arch_name(self) -> str:
        from agent.d3qn_agent import arch_name
        return arch_name(self.double, self.params.dueling)

    def check_scheme(self, scheme, horizon: int):
        """校验检查点与所请求的状态方案维度一致"""
        expected = state_dim(scheme, horizon)
        if expected != self.params.input_dim:
            raise DimensionMismatch(self.params.input_dim, expected, what='检查点输入维度与状态维度')


def save_checkpoint(checkpoint: Checkpoint, path) -> Path:
    """写出检查点"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    params = checkpoint.params
    blocks, chunks, offset = [], [], 0
    for name, arr in params.weights.items():
        data = np.ascontiguousarray(arr, dtype=DTYPE).tobytes()
        blocks.append({'name': name, 'shape': list(arr.shape), 'offset': offset, 'nbytes': len(data)})
        chunks.append(data)
        offset += len(data)

    header = {
        'format': 1,
        'dtype': DTYPE,
        'input_dim': params.input_dim,
        'hidden': list(params.hidden),
        'dueling': params.dueling,
        'double': checkpoint.double,
        'update': checkpoint.update,
        'scheme': Scheme(checkpoint.scheme).value,
        'horizon': checkpoint.horizon,
        'scaler': checkpoint.scaler.to_dict(),
        'microgrid': checkpoint.microgrid.to_dict(),
        'extra': checkpoint.extra,
        'blocks': blocks,
    }
    header_bytes = json.dumps(header, sort_keys=True, ensure_ascii=False).encode('utf-8')

    with open(path, 'wb') as f:
        f.write(MAGIC)
        f.write(np.array([len(header_bytes)], dtype='<u4').tobytes())
        f.write(header_bytes)
        for chunk in chunks:
            f.write(chunk)
    return path


def load_checkpoint(path) -> Checkpoint:
    """读取检查点"""
    path = Path(path)
    if not path.is_file():
        raise DataValidationError(f"检查点文件不存在: {path}")
    raw = path.read_bytes()
    if raw[:len(MAGIC)] != MAGIC:
        raise DataValidationError(f"不是有效的检查点文件: {path}")

    pos = len(MAGIC)
    header_len = int(np.frombuffer(raw, dtype='<u4', count=1, offset=pos)[0])
    pos += 4
    header = json.loads(raw[pos:pos + header_len].decode('utf-8'))
    pos += header_len

    weights = {}
    for block in header['blocks']:
        count = block['nbytes'] // 8
        arr = np.frombuffer(raw, dtype=DTYPE, count=count, offset=pos + block['offset'])
        weights[block['name']] = arr.astype(np.float64).reshape(block['shape'])

    params = NetworkParams(header['input_dim'], tuple(header['hidden']), header['dueling'], weights)
    return Checkpoint(
        params=params,
        scheme=Scheme(header['scheme']),
        horizon=int(header['horizon']),
        scaler=MinMaxScaler.from_dict(header['scaler']),
        microgrid=MicrogridConfig.from_dict(header['microgrid']),
        double=bool(header['double']),
        update=header['update'],
        extra=header.get('extra', {}),
    )


def file_digest(path) -> str:
    """文件 SHA-256 摘要（复现性检查）"""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Q 网络模块
"""

from .dueling_net import (
    NetworkParams, init_params, forward, value_and_advantage, loss_and_grad,
    soft_update, hard_update,
)
from .adam import AdamState, adam_step
from .checkpoint import Checkpoint, save_checkpoint, load_checkpoint, file_digest

__all__ = [
    'NetworkParams', 'init_params', 'forward', 'value_and_advantage', 'loss_and_grad',
    'soft_update', 'hard_update', 'AdamState', 'adam_step',
    'Checkpoint', 'save_checkpoint', 'load_checkpoint', 'file_digest',
]

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
命令行模块
"""

from .run_config import RunConfig, arch_overrides, read_config_file
from .commands import cmd_train, cmd_eval, cmd_sweep, cmd_oracle, cmd_gendata, load_series, sweep_cells

__all__ = [
    'RunConfig', 'arch_overrides', 'read_config_file',
    'cmd_train', 'cmd_eval', 'cmd_sweep', 'cmd_oracle', 'cmd_gendata', 'load_series', 'sweep_cells',
]

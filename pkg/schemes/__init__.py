#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
状态方案模块
"""

from .state_builder import (
    Scheme, StateVector, StateBuilder, build_state, state_dim, valid_state_range, evaluation_span,
)

__all__ = ['Scheme', 'StateVector', 'StateBuilder', 'build_state', 'state_dim',
           'valid_state_range', 'evaluation_span']

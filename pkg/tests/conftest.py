#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
测试公共夹具
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from core.event_bus import event_bus
from data.fetchers import generate_synthetic
from data.processors.scaling import fit_scaler
from env.microgrid import MicrogridConfig


@pytest.fixture
def cfg():
    """默认微网配置"""
    return MicrogridConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope='session')
def series_2d():
    """2 天合成场景（已拟合归一化参数）"""
    series = generate_synthetic(days=2, seed=3)
    return series.with_scaler(fit_scaler(series))


@pytest.fixture(scope='session')
def series_28d():
    """28 天合成场景（已拟合归一化参数）"""
    series = generate_synthetic(days=28, seed=7)
    return series.with_scaler(fit_scaler(series))


@pytest.fixture(autouse=True)
def clean_event_bus():
    yield
    event_bus.clear()

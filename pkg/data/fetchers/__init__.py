#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
数据获取器模块
"""

from .csv_fetcher import load_csv, save_csv
from .synthetic_fetcher import generate_synthetic, SyntheticProfile

__all__ = ['load_csv', 'save_csv', 'generate_synthetic', 'SyntheticProfile']

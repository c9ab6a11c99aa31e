#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
核心模块
"""

from .event_bus import EventBus, EventType, event_bus

__all__ = ['EventBus', 'EventType', 'event_bus']

# -*- coding: utf-8 -*-
"""
调度服务

solver（单时段子问题）、coordinator（内外层乘子）、dispatch（执行与结算）、
scenario（运行配置）、simulation（对比情形与指标）
"""

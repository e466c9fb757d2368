# -*- coding: utf-8 -*-
"""
核心层

domain：园区参数、设备与经济模型；services：求解、协调、执行与仿真
"""

# -*- coding: utf-8 -*-
"""
基础设施层

traces：外生时序的读取与合成；data：产物文件写入
"""

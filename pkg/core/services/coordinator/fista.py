# -*- coding: utf-8 -*-
"""
τ 的更新步

普通对偶梯度上升与带动量组合的快速方案。
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FistaState:
    """
    快速方案状态

    theta_prev, theta: 相邻两次的权重 θ(n−1), θ(n)
    tau_prev, tau: 相邻两次的乘子 τ(n−1), τ(n)
    n: 微时段序号
    """

    theta_prev: float
    theta: float
    tau_prev: np.ndarray
    tau: np.ndarray
    n: int = 0

    @classmethod
    def start(cls, tau0: np.ndarray) -> "FistaState":
        """θ(0) = 1，τ(0) = τ(1) = tau0，第一步退化为普通梯度步"""
        tau0 = np.asarray(tau0, dtype=float)
        return cls(theta_prev=1.0, theta=fista_weight(1.0), tau_prev=tau0.copy(), tau=tau0.copy(), n=0)


def plain_tau_step(tau, sigma: float, gradient):
    """τ' = τ + σ·g（等式约束的乘子，不做投影）"""
    return np.asarray(tau, dtype=float) + sigma * np.asarray(gradient, dtype=float)


def fista_weight(theta_prev: float) -> float:
    """θ = (1 + √(1 + 4θ_prev²)) / 2"""
    return (1.0 + np.sqrt(1.0 + 4.0 * theta_prev * theta_prev)) / 2.0


def fista_combine(tau, tau_prev, theta_prev: float, theta: float):
    """
    组合最近两次迭代

    ε = (1 − θ_prev)/θ，τ̄ = (1 − ε)·τ + ε·τ_prev
    """
    eps = (1.0 - theta_prev) / theta
    return (1.0 - eps) * np.asarray(tau, dtype=float) + eps * np.asarray(tau_prev, dtype=float)


def fast_tau_step(state: FistaState, sigma: float, gradient) -> FistaState:
    """
    快速方案的一步

    gradient 必须在 τ̄ 处取得；τ(n+1) = τ̄(n) + σ·g(τ̄(n))，随后推进权重并移位历史。
    """
    tau_bar = fista_combine(state.tau, state.tau_prev, state.theta_prev, state.theta)
    tau_next = tau_bar + sigma * np.asarray(gradient, dtype=float)
    return FistaState(
        theta_prev=state.theta,
        theta=fista_weight(state.theta),
        tau_prev=np.asarray(state.tau, dtype=float),
        tau=tau_next,
        n=state.n + 1,
    )

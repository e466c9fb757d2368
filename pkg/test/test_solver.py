# -*- coding: utf-8 -*-
"""
分配求解测试：MEGP 背包、用户与弹性负荷驻点、整体子问题
"""

import numpy as np
import pytest

from common.exceptions import InfeasibleError
from core.domain import (
    ElasticLoadParams,
    MegpDecision,
    MegpParams,
    TradeCaps,
    UserParams,
    balance_residual,
    carrier_supply,
)
from core.services.solver import (
    MarginalCostTable,
    MultiplierView,
    augmented_objective,
    cheapest_supplier,
    megp_costs,
    solve_augmented_megp,
    solve_elastic,
    solve_megp,
    solve_subproblem,
    solve_user,
    standalone_caps,
)
from core.services.solver.knapsack import Lever, solve_prox
from core.services.solver.pricing import blend_decisions
from conftest import make_exo


def _mult(tau_e=0.0, tau_h=0.0, tau_g=0.0, lam_e=0.0, lam_h=0.0):
    return MultiplierView(np.array([lam_e]), np.array([lam_h]), np.array([[tau_e, tau_h, tau_g]]))


def _random_instance(park, seed):
    rng = np.random.default_rng(seed)
    p_e = rng.uniform(0.2, 1.0)
    exo = make_exo(
        p_e=p_e,
        p_g=rng.uniform(0.2, 0.6),
        p_o=p_e * rng.uniform(0.0, 1.0),
        renewables=rng.uniform(0.0, 1.5, park.n_megp),
        il_loads=rng.uniform(0.5, 2.0, park.n_user),
    )
    mult = MultiplierView(
        rng.uniform(-1.0, 1.0, park.n_megp),
        rng.uniform(-1.0, 1.0, park.n_megp),
        rng.uniform(-1.0, 1.0, (park.n_megp, 3)),
    )
    return exo, mult


class TestMegp:
    def test_negative_import_coefficient(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3)
        md = solve_megp(megp, exo, _mult(tau_e=0.9), 0, TradeCaps(1.0, 1.0, 1.0))
        assert md.e_import == pytest.approx(1.0, abs=1e-12)
        assert md.e_export == 0.0

    def test_complementary_storage_coefficients(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3)
        md = solve_megp(megp, exo, _mult(tau_e=0.7, lam_e=-0.7, tau_h=0.5, lam_h=-0.5), 0, TradeCaps(1.0, 1.0, 1.0))
        assert md.c_ke == 0.0 and md.d_ke == 0.0
        assert md.c_kh == 0.0 and md.d_kh == 0.0

    def test_chp_at_cap_when_coefficient_negative(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3)
        md = solve_megp(megp, exo, _mult(tau_e=1.0, tau_h=1.0, lam_e=-1.0, lam_h=-1.0), 0)
        assert md.g_chp == pytest.approx(megp.chp_gas_max, abs=1e-12)

    def test_expensive_gas_idles_converters(self, megp):
        exo = make_exo(p_e=0.6, p_g=5.0, p_o=0.3)
        md = solve_megp(megp, exo, _mult(tau_e=0.5, tau_h=0.5), 0)
        assert md.g_chp == 0.0
        assert md.g_b == 0.0

    def test_supply_within_caps(self, megp):
        exo = make_exo(p_e=0.1, p_g=0.1, p_o=0.05, renewables=[1.5])
        md = solve_megp(megp, exo, _mult(tau_e=3.0, tau_h=3.0, tau_g=3.0, lam_e=-3.0, lam_h=-3.0), 0)
        supply = md.supply.as_array()
        assert np.all(supply >= -1e-9)
        assert np.all(supply <= megp.x_max.as_array() + 1e-9)

    def test_non_finite_multiplier(self, megp):
        with pytest.raises(InfeasibleError):
            solve_megp(megp, make_exo(), _mult(tau_e=float("nan")), 0)

    def test_supply_monotone_in_price(self):
        params = MegpParams()
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=[0.8])
        supplies = [
            solve_megp(params, exo, _mult(tau_e=tau, tau_h=0.5, tau_g=0.4, lam_e=-0.6, lam_h=-0.5), 0).supply.electricity
            for tau in np.linspace(0.0, 1.5, 16)
        ]
        assert all(b >= a - 1e-9 for a, b in zip(supplies, supplies[1:]))


class TestGasBudget:
    def _exo_mult(self):
        return make_exo(p_e=0.6, p_g=0.4, p_o=0.3), _mult(tau_e=0.5, tau_h=1.0, tau_g=1.0)

    def test_budget_binds_on_cheapest_use(self, megp):
        # 气负荷 −0.6 最优，锅炉 −0.4 次之
        exo, mult = self._exo_mult()
        md = solve_megp(megp, exo, mult, 0, TradeCaps(5.0, 5.0, 2.0))
        assert md.g_import == pytest.approx(2.0, abs=1e-9)
        assert md.g_load == pytest.approx(2.0, abs=1e-9)
        assert md.g_b == pytest.approx(0.0, abs=1e-9)
        assert md.g_chp == pytest.approx(0.0, abs=1e-9)

    def test_zero_budget(self, megp):
        exo, mult = self._exo_mult()
        md = solve_megp(megp, exo, mult, 0, TradeCaps(5.0, 5.0, 0.0))
        assert md.g_import == pytest.approx(0.0, abs=1e-9)
        assert md.supply.gas == pytest.approx(0.0, abs=1e-9)

    def test_slack_budget_unchanged(self, megp):
        exo, mult = self._exo_mult()
        free = solve_megp(megp, exo, mult, 0)
        caps = standalone_caps(megp, 0.0)
        capped = solve_megp(megp, exo, mult, 0, TradeCaps(caps.e_import, caps.e_export, free.g_import + 1.0))
        assert capped.to_dict() == pytest.approx(free.to_dict(), abs=1e-12)

    def test_negative_budget(self, megp):
        exo, mult = self._exo_mult()
        with pytest.raises(InfeasibleError):
            solve_megp(megp, exo, mult, 0, TradeCaps(1.0, 1.0, -1.0))


class TestMarginalTable:
    def test_storage_coefficients_opposite(self, park):
        rng = np.random.default_rng(11)
        exo = make_exo(renewables=[0.5, 0.2], il_loads=[1.0, 1.0, 1.0])
        mult = MultiplierView(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), rng.uniform(-1, 1, (2, 3)))
        table = MarginalCostTable.build(park, exo, mult)
        assert len(table) == park.n_megp
        for k, params in enumerate(park.megps):
            row = table[k]
            assert row.charge_e == -row.discharge_e
            assert row.charge_h == -row.discharge_h
            assert row == megp_costs(params, exo, mult, k)

    def test_blend_keeps_supply_and_cost(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=[0.3])
        costs = megp_costs(megp, exo, _mult(tau_e=0.7, tau_h=0.5, tau_g=0.2, lam_e=-0.2, lam_h=0.1), 0)
        a = MegpDecision(c_ke=0.4, g_chp=1.0, e_import=0.5, g_import=1.0)
        b = MegpDecision(d_ke=0.6, g_b=0.5, e_export=0.2, g_import=0.8)
        blended = blend_decisions(megp, 0.3, a, b, 0.5)

        assert blended.c_ke == 0.0
        assert blended.d_ke == pytest.approx(0.1, abs=1e-12)
        expected = 0.5 * carrier_supply(megp, 0.3, a) + 0.5 * carrier_supply(megp, 0.3, b)
        assert blended.supply.as_array() == pytest.approx(expected, abs=1e-12)
        zero = np.zeros(3)
        linear = [augmented_objective(megp, 0.3, costs, md, zero, 0.0) for md in (a, b, blended)]
        assert linear[2] == pytest.approx(0.5 * linear[0] + 0.5 * linear[1], abs=1e-12)


class TestProx:
    def test_single_lever(self):
        levers = [Lever("e_import", +1, 1.0, 0.2, 2.0, 3)]
        res = solve_prox(0.0, levers, 5.0, 1.0, 1.0)
        assert res.supply == pytest.approx(0.8, abs=1e-12)
        assert res.values["e_import"] == pytest.approx(0.8, abs=1e-12)
        assert res.cost == pytest.approx(0.16, abs=1e-12)

    def test_negative_coefficient_overshoots_target(self):
        levers = [Lever("e_import", +1, 1.0, -0.5, 2.0, 3)]
        assert solve_prox(0.0, levers, 5.0, 1.0, 1.0).supply == pytest.approx(1.5, abs=1e-12)

    def test_clipped_to_cap(self):
        levers = [Lever("e_import", +1, 1.0, -0.5, 2.0, 3)]
        res = solve_prox(0.0, levers, 0.5, 1.0, 1.0)
        assert res.supply == pytest.approx(0.5, abs=1e-12)
        assert res.feasible

    def test_supply_reducing_lever(self):
        # 售电收益 0.3，目标 0.5：售电 0.8、供给 0.2
        levers = [Lever("e_export", -1, 1.0, -0.3, 1.0, 6)]
        res = solve_prox(1.0, levers, 5.0, 0.5, 1.0)
        assert res.supply == pytest.approx(0.2, abs=1e-12)
        assert res.values["e_export"] == pytest.approx(0.8, abs=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_grid_search(self, seed):
        rng = np.random.default_rng(seed)
        coeffs = rng.uniform(-1.0, 1.0, 3)
        uppers = rng.uniform(0.2, 1.0, 3)
        base, cap = rng.uniform(0.0, 1.0), 2.5
        target, penalty = rng.uniform(0.0, 2.0), rng.uniform(0.2, 2.0)
        levers = [
            Lever("d_ke", +1, 1.0, coeffs[0], uppers[0], 2),
            Lever("c_ke", -1, 1.0, coeffs[1], uppers[1], 5),
            Lever("e_import", +1, 1.0, coeffs[2], uppers[2], 3),
        ]
        res = solve_prox(base, levers, cap, target, penalty)

        def objective(d, c, imp):
            supply = base + d - c + imp
            value = coeffs[0] * d + coeffs[1] * c + coeffs[2] * imp + 0.5 * penalty * (target - supply) ** 2
            return np.where((supply >= 0.0) & (supply <= cap), value, np.inf)

        axes = [np.linspace(0.0, u, 41) for u in uppers]
        grid_best = float(np.min(objective(*np.meshgrid(*axes, indexing="ij"))))
        exact = float(objective(res.values["d_ke"], res.values["c_ke"], res.values["e_import"]))
        assert res.feasible
        assert exact <= grid_best + 1e-9


class TestAugmentedMegp:
    def _instance(self, megp, seed):
        rng = np.random.default_rng(seed)
        exo = make_exo(p_e=rng.uniform(0.3, 1.0), p_g=rng.uniform(0.2, 0.6), p_o=0.2, renewables=[0.0])
        mult = _mult(*rng.uniform(-1.0, 1.5, 5))
        costs = megp_costs(megp, exo, mult, 0)
        return exo, mult, costs, rng.uniform(0.0, 3.0, 3), rng.uniform(0.1, 1.0)

    @pytest.mark.parametrize("seed", range(6))
    def test_not_worse_than_sampled_decisions(self, megp, seed):
        exo, mult, costs, target, penalty = self._instance(megp, seed)
        md = solve_augmented_megp(megp, exo, costs, 0, target, penalty)
        best = augmented_objective(megp, 0.0, costs, md, target, penalty)

        supply = md.supply.as_array()
        assert np.all(supply >= -1e-9)
        assert np.all(supply <= megp.x_max.as_array() + 1e-9)
        lp = solve_megp(megp, exo, mult, 0)
        assert best <= augmented_objective(megp, 0.0, costs, lp, target, penalty) + 1e-9

        rng = np.random.default_rng(100 + seed)
        caps = standalone_caps(megp, 0.0)
        checked = 0
        for _ in range(3000):
            g_chp = rng.uniform(0.0, megp.chp_gas_max)
            g_b = rng.uniform(0.0, megp.boiler_gas_max)
            sample = MegpDecision(
                c_ke=rng.uniform(0.0, megp.c_ke_max),
                d_ke=rng.uniform(0.0, megp.d_ke_max),
                c_kh=rng.uniform(0.0, megp.c_kh_max),
                d_kh=rng.uniform(0.0, megp.d_kh_max),
                g_chp=g_chp,
                g_b=g_b,
                e_import=rng.uniform(0.0, caps.e_import),
                e_export=rng.uniform(0.0, 2.0),
                g_import=g_chp + g_b + rng.uniform(0.0, 3.0),
            )
            s = carrier_supply(megp, 0.0, sample)
            if np.any(s < 0.0) or np.any(s > megp.x_max.as_array()):
                continue
            checked += 1
            assert best <= augmented_objective(megp, 0.0, costs, sample, target, penalty) + 1e-9
        assert checked > 0

    def test_large_penalty_tracks_target(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=[0.0])
        costs = megp_costs(megp, exo, _mult(), 0)
        target = np.array([1.0, 0.5, 0.2])
        md = solve_augmented_megp(megp, exo, costs, 0, target, 1e4)
        assert md.supply.as_array() == pytest.approx(target, abs=1e-3)

    def test_gas_budget(self, megp):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=[0.0])
        costs = megp_costs(megp, exo, _mult(tau_e=0.5, tau_h=1.0, tau_g=1.0), 0)
        md = solve_augmented_megp(megp, exo, costs, 0, np.array([0.0, 3.0, 3.0]), 1.0, TradeCaps(5.0, 5.0, 1.5))
        assert md.g_import <= 1.5 + 1e-9

    def test_requires_positive_penalty(self, megp):
        exo = make_exo(renewables=[0.0])
        costs = megp_costs(megp, exo, _mult(), 0)
        with pytest.raises(InfeasibleError):
            solve_augmented_megp(megp, exo, costs, 0, np.zeros(3), 0.0)


class TestUser:
    user = UserParams(a=1.0, eta_curtail=0.15, w=0.5, suppliers=[0, 1])

    def test_cheapest_supplier(self):
        decision = solve_user(self.user, 10.0, [0.5, 0.3])
        assert decision.allocation[0] == 0.0
        assert decision.allocation[1] == pytest.approx(10.0 - decision.curtailed, abs=1e-12)

    def test_tie_goes_to_lower_index(self):
        assert cheapest_supplier(self.user, [0.3, 0.3]) == 0

    def test_stationary_curtailment(self):
        decision = solve_user(UserParams(a=1.0, eta_curtail=0.15, w=0.5), 10.0, [1.3])
        assert decision.curtailed == pytest.approx(0.2, abs=1e-12)
        assert decision.served == pytest.approx(9.8, abs=1e-12)

    def test_curtailment_clipped(self):
        low = solve_user(UserParams(a=1.0, eta_curtail=0.15, w=0.5), 10.0, [0.1])
        high = solve_user(UserParams(a=1.0, eta_curtail=0.15, w=0.5), 10.0, [50.0])
        assert low.curtailed == 0.0
        assert high.curtailed == pytest.approx(1.5, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_grid_search(self, seed):
        rng = np.random.default_rng(seed)
        user = UserParams(a=rng.uniform(0.2, 2.0), eta_curtail=rng.uniform(0.0, 0.5), w=rng.uniform(0.0, 1.0))
        x_load = rng.uniform(0.5, 5.0)
        tau = rng.uniform(-1.0, 3.0)

        def objective(x):
            return tau * (x_load - x) + 2 * user.a * x**2 - user.w * (x_load - x)

        grid = np.linspace(0.0, user.eta_curtail * x_load, 10_000)
        decision = solve_user(user, x_load, [tau])
        assert objective(decision.curtailed) <= objective(grid).min() + 1e-12

    def test_allocation_non_increasing_in_multiplier(self):
        allocations = [solve_user(self.user, 4.0, [tau, 0.8]).allocation[0] for tau in np.linspace(0.2, 2.0, 19)]
        assert all(b <= a + 1e-12 for a, b in zip(allocations, allocations[1:]))


class TestElastic:
    load = ElasticLoadParams(alpha=1.0, beta=0.5, x_max=2.0)

    def test_stationary(self):
        assert solve_elastic(self.load, 0.2) == pytest.approx(0.8, abs=1e-12)

    def test_price_above_utility(self):
        assert solve_elastic(self.load, 1.0) == 0.0
        assert solve_elastic(self.load, 3.0) == 0.0

    def test_clipped_to_max(self):
        assert solve_elastic(self.load, -5.0) == pytest.approx(2.0, abs=1e-12)

    def test_alpha_override(self):
        assert solve_elastic(self.load, 0.2, alpha=2.0) == pytest.approx(1.8, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_grid_search(self, seed):
        rng = np.random.default_rng(100 + seed)
        load = ElasticLoadParams(alpha=rng.uniform(0.0, 2.0), beta=rng.uniform(0.1, 1.0), x_max=rng.uniform(0.5, 3.0))
        tau = rng.uniform(-1.0, 2.0)
        grid = np.linspace(0.0, load.x_max, 10_000)
        x = solve_elastic(load, tau)
        value = tau * x - load.utility(x)
        assert value <= (tau * grid - load.utility(grid)).min() + 1e-12


class TestSubproblem:
    def test_zero_instance(self, small_park):
        small_park.users[0].w = 0.0
        small_park.elastic_loads[0].alpha = 0.0
        exo = make_exo(p_e=0.0, p_g=0.0, p_o=0.0, renewables=[0.0], il_loads=[0.0])
        d = solve_subproblem(small_park, exo, MultiplierView.zeros(1))
        assert all(v == 0.0 for v in d.megps[0].to_dict().values())
        assert d.users[0].curtailed == 0.0
        assert d.elastic[0].x == 0.0

    @pytest.mark.parametrize("seed", range(8))
    def test_random_instance_feasible(self, park, seed):
        exo, mult = _random_instance(park, seed)
        d = solve_subproblem(park, exo, mult)

        assert np.max(np.abs(balance_residual(park, exo, d))) <= 1e-9
        assert sum(m.e_import for m in d.megps) <= park.e_max + 1e-9
        assert sum(m.e_export for m in d.megps) <= park.e_o_max + 1e-9
        assert sum(m.g_import for m in d.megps) <= park.g_max + 1e-9
        for params, md in zip(park.megps, d.megps):
            assert md.c_ke == 0.0 or md.d_ke == 0.0
            assert md.c_kh == 0.0 or md.d_kh == 0.0
            assert 0.0 <= md.c_ke <= params.c_ke_max + 1e-9
            assert 0.0 <= md.d_kh <= params.d_kh_max + 1e-9
            assert md.g_chp <= params.chp_gas_max + 1e-9
            assert md.g_b <= params.boiler_gas_max + 1e-9
            supply = md.supply.as_array()
            assert np.all(supply >= -1e-9)
            assert np.all(supply <= params.x_max.as_array() + 1e-9)
        for user, ud, x_load in zip(park.users, d.users, exo.il_loads):
            assert 0.0 <= ud.curtailed <= user.eta_curtail * x_load + 1e-12
            assert ud.served + ud.curtailed == pytest.approx(x_load, abs=1e-12)

    def test_tight_park_caps_respected(self, park):
        park.e_max = 0.5
        park.g_max = 1.0
        exo = make_exo(p_e=0.2, p_g=0.1, p_o=0.1, renewables=[0.0, 0.0], il_loads=[1.0, 1.0, 1.0])
        mult = MultiplierView(np.full(2, -1.0), np.full(2, -1.0), np.full((2, 3), 1.0))
        d = solve_subproblem(park, exo, mult)
        assert sum(m.e_import for m in d.megps) <= 0.5 + 1e-9
        assert sum(m.g_import for m in d.megps) <= 1.0 + 1e-9

    def test_deterministic(self, park):
        exo, mult = _random_instance(park, 3)
        first = solve_subproblem(park, exo, mult).to_dict()
        second = solve_subproblem(park, exo, mult).to_dict()
        assert first == second

    @pytest.mark.parametrize("seed", range(4))
    def test_penalized_instance_feasible(self, park, seed):
        exo, mult = _random_instance(park, seed)
        d = solve_subproblem(park, exo, mult, penalty=0.5)

        assert np.max(np.abs(balance_residual(park, exo, d))) <= 1e-9
        assert sum(m.e_import for m in d.megps) <= park.e_max + 1e-9
        assert sum(m.e_export for m in d.megps) <= park.e_o_max + 1e-9
        assert sum(m.g_import for m in d.megps) <= park.g_max + 1e-9
        for params, md in zip(park.megps, d.megps):
            assert md.c_ke == 0.0 or md.d_ke == 0.0
            assert md.c_kh == 0.0 or md.d_kh == 0.0
            supply = md.supply.as_array()
            assert np.all(supply >= -1e-9)
            assert np.all(supply <= params.x_max.as_array() + 1e-9)

    def test_penalty_pulls_supply_to_demand(self, park):
        exo = make_exo(p_e=0.6, p_g=0.4, p_o=0.3, renewables=[0.5, 0.2], il_loads=[1.5, 1.2, 0.9])
        mult = MultiplierView(np.full(2, -0.5), np.full(2, -0.4), np.tile([0.5, 0.4, 0.3], (2, 1)))
        linear = solve_subproblem(park, exo, mult)
        gaps = []
        for penalty in (0.1, 1.0, 10.0):
            d = solve_subproblem(park, exo, mult, penalty=penalty)
            gaps.append(float(np.sum((d.demand_matrix() - d.supply_matrix()) ** 2)))
        linear_gap = float(np.sum((linear.demand_matrix() - linear.supply_matrix()) ** 2))
        assert gaps[-1] <= gaps[0] + 1e-9
        assert gaps[-1] <= linear_gap + 1e-9

    def test_penalized_tight_caps(self, park):
        park.e_max = 0.5
        park.g_max = 1.0
        exo = make_exo(p_e=0.2, p_g=0.1, p_o=0.1, renewables=[0.0, 0.0], il_loads=[1.0, 1.0, 1.0])
        mult = MultiplierView(np.full(2, -1.0), np.full(2, -1.0), np.full((2, 3), 1.0))
        d = solve_subproblem(park, exo, mult, penalty=0.2)
        assert sum(m.e_import for m in d.megps) <= 0.5 + 1e-9
        assert sum(m.g_import for m in d.megps) <= 1.0 + 1e-9

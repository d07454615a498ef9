"""Delay model: repair race trajectories, stealth detection, and its optimizer."""

import math

import numpy as np
import pytest

from depth_planner import (
    DelayCostModel,
    DelayTimescales,
    DetectionModel,
    DomainError,
    InfeasibleTarget,
    InvalidRange,
    SpendClass,
    ThreatModel,
    broken_defenses_at,
    detection_probability,
    min_defenses_whackamole,
    optimize_delay,
    solve_stealth_defense_count,
    stealth_indifference,
    stealth_likelihood,
    stealth_sensitivity,
    stealth_surface,
    trajectory,
)

# Frozen reference values, computed independently at 50-digit precision.
BROKEN_AT_TEN = 6.3212055882855768   # 10 * (1 - e**-1), ratio-10 race at t = 10
ENDPOINT_T50 = 9.9326205300091453    # 10 * (1 - e**-5)
HALF_STAGE = 0.63212055882855768     # 1 - e**-1, one stage at lambda*tau_a = 1
SURVIVE_TEN = 0.36787944117144232    # e**-1, ten stages at lambda*tau_a = 0.1
TWO_ATTACKERS = 0.60042359910627195  # 1 - (1 - e**-1)**2
SENSITIVITY_TEN = 0.036787944117144232  # 0.1 * e**-1
STAGES_SQRT = 1.2279471772995157     # -ln(1 - sqrt(0.5)): L = 0.5, N = 2
STAGES_G105 = 1.1713944856178934     # same with g = 1.05
LN2 = 0.69314718055994531
HYPERBOLA = {0.5: 1.3862943611198906, 1.0: LN2, 2.0: 0.34657359027997265}
DELAY_COST_N1 = 0.76519710951725117  # 1 / (2 - ln 2)
DELAY_COST_N2 = 1.2096093229445014   # 2 / (2 - ln(2)/2 * ... ), n = 2 branch

RATIO_TEN = DelayTimescales(0.5, 0.5, 5.0, 5.0)


def _rk4_broken(timescales, attackers, t_grid):
    """Independent fourth-order integration of the broken-defense rate law."""
    rate_in = attackers / (timescales.find_time + timescales.break_time)
    decay = 1.0 / (timescales.detect_time + timescales.repair_time)
    values = [0.0]
    n = 0.0
    t = 0.0
    for t_next in t_grid[1:]:
        span = t_next - t
        steps = 128
        h = span / steps
        for _ in range(steps):
            k1 = rate_in - decay * n
            k2 = rate_in - decay * (n + 0.5 * h * k1)
            k3 = rate_in - decay * (n + 0.5 * h * k2)
            k4 = rate_in - decay * (n + h * k3)
            n += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t_next
        values.append(n)
    return values


class TestDelayTimescales:
    def test_periods(self):
        assert RATIO_TEN.attack_period == 1.0
        assert RATIO_TEN.defend_period == 10.0

    @pytest.mark.parametrize("field", ["find_time", "break_time", "detect_time", "repair_time"])
    def test_rejects_nonpositive(self, field):
        kwargs = {"find_time": 1.0, "break_time": 1.0, "detect_time": 1.0, "repair_time": 1.0}
        kwargs[field] = 0.0
        with pytest.raises(DomainError):
            DelayTimescales(**kwargs)


class TestBrokenDefenses:
    def test_starts_at_zero(self):
        assert broken_defenses_at(0.0, RATIO_TEN) == 0.0

    def test_ratio_ten_at_t_ten(self):
        assert broken_defenses_at(10.0, RATIO_TEN) == pytest.approx(
            BROKEN_AT_TEN, rel=1e-15
        )

    def test_linear_in_attackers(self):
        for t in (1.0, 5.0, 20.0):
            single = broken_defenses_at(t, RATIO_TEN, 1)
            double = broken_defenses_at(t, RATIO_TEN, 2)
            assert double == 2.0 * single

    def test_stays_below_saturation(self):
        for t in (1.0, 10.0, 100.0, 300.0):
            assert broken_defenses_at(t, RATIO_TEN) < 10.0
        # Far past every timescale the double rounds onto the asymptote.
        assert broken_defenses_at(1e6, RATIO_TEN) <= 10.0

    def test_nearly_saturated_past_five_decay_times(self):
        assert broken_defenses_at(5.0 * 10.0 + 0.1, RATIO_TEN) > 0.99 * 10.0

    def test_rejects_negative_time(self):
        with pytest.raises(DomainError):
            broken_defenses_at(-1.0, RATIO_TEN)

    def test_rejects_fractional_attackers(self):
        with pytest.raises(DomainError):
            broken_defenses_at(1.0, RATIO_TEN, 1.5)

    def test_matches_rate_equation_integration(self):
        # Ten random timescale sets; 50 grid points out to five decay times.
        rng = np.random.default_rng(20240817)
        for _ in range(10):
            tf, tb, td, tr = rng.uniform(0.2, 5.0, size=4)
            ts = DelayTimescales(tf, tb, td, tr)
            attackers = int(rng.integers(1, 4))
            t_grid = np.linspace(0.0, 5.0 * ts.defend_period, 50)
            integrated = _rk4_broken(ts, attackers, t_grid)
            for t, expected in zip(t_grid[1:], integrated[1:]):
                closed = broken_defenses_at(float(t), ts, attackers)
                assert closed == pytest.approx(expected, rel=1e-6)


class TestTrajectory:
    def test_grid_and_labels(self):
        curve = trajectory(RATIO_TEN, 1, 50.0, 6)
        assert curve.t_label == "t" and curve.y_label == "n_broken"
        assert [t for t, _ in curve.points] == pytest.approx(
            [0.0, 10.0, 20.0, 30.0, 40.0, 50.0], rel=1e-15
        )

    def test_endpoint_near_saturation(self):
        curve = trajectory(RATIO_TEN, 1, 50.0, 6)
        assert curve.points[-1][1] == pytest.approx(ENDPOINT_T50, rel=1e-15)
        assert abs(curve.points[-1][1] - 10.0) < 0.01 * 10.0

    def test_doubling_attackers_doubles_every_sample(self):
        single = trajectory(RATIO_TEN, 1, 30.0, 7)
        double = trajectory(RATIO_TEN, 2, 30.0, 7)
        for (_, a), (_, b) in zip(single.points, double.points):
            assert b == 2.0 * a

    def test_strictly_increasing(self):
        curve = trajectory(RATIO_TEN, 1, 40.0, 9)
        ys = [y for _, y in curve.points]
        assert all(a < b for a, b in zip(ys, ys[1:]))


class TestMinDefenses:
    def test_ratio_ten_needs_eleven(self):
        assert min_defenses_whackamole(RATIO_TEN) == 11

    def test_fast_defenders_need_one(self):
        assert min_defenses_whackamole(DelayTimescales(5.0, 5.0, 0.5, 0.5)) == 1

    def test_scales_with_attackers(self):
        assert min_defenses_whackamole(RATIO_TEN, 5) == 51

    def test_integer_saturation_resolves_upward(self):
        # Saturation exactly 2: "strictly more" means 3, not 2.
        ts = DelayTimescales(0.5, 0.5, 1.0, 1.0)
        assert min_defenses_whackamole(ts) == 3


class TestDetectionModel:
    def test_capability_is_the_product(self):
        assert DetectionModel(0.25, 4.0).capability == 1.0

    def test_allows_blind_defender(self):
        assert DetectionModel(0.0, 1.0).capability == 0.0

    @pytest.mark.parametrize("args", [(-0.1, 1.0), (1.0, 0.0), (1.0, -2.0)])
    def test_rejects_bad_fields(self, args):
        with pytest.raises(DomainError):
            DetectionModel(*args)


class TestDetectionProbability:
    def test_one_unit_exposure(self):
        assert float(detection_probability(DetectionModel(0.5, 2.0))) == pytest.approx(
            HALF_STAGE, rel=1e-15
        )

    def test_half_life_identity(self):
        result = detection_probability(DetectionModel(math.log(2.0), 1.0))
        assert float(result) == pytest.approx(0.5, rel=1e-15)

    def test_blind_defender_never_detects(self):
        assert float(detection_probability(DetectionModel(0.0, 3.0))) == 0.0


class TestStealthLikelihood:
    def test_ten_stages_frozen(self):
        result = stealth_likelihood(DetectionModel(0.1, 1.0), 10.0, ThreatModel(1))
        assert float(result) == pytest.approx(SURVIVE_TEN, rel=1e-15)

    def test_two_attackers_frozen(self):
        result = stealth_likelihood(DetectionModel(1.0, 1.0), 1.0, ThreatModel(2))
        assert float(result) == pytest.approx(TWO_ATTACKERS, rel=1e-15)

    def test_no_defenses_means_certain_breach(self):
        assert float(stealth_likelihood(DetectionModel(9.0, 9.0), 0.0, ThreatModel(1))) == 1.0

    def test_lever_equivalence(self):
        # Only the product lambda * tau_a * n matters: 100 random reshuffles
        # of the three levers at a fixed product leave L unchanged.
        rng = np.random.default_rng(7)
        for _ in range(100):
            lam, tau, n = rng.uniform(0.05, 3.0, size=3)
            product = lam * tau * n
            lam2, tau2 = rng.uniform(0.05, 3.0, size=2)
            n2 = product / (lam2 * tau2)
            threat = ThreatModel(int(rng.integers(1, 4)), 1.0)
            a = float(stealth_likelihood(DetectionModel(lam, tau), n, threat))
            b = float(stealth_likelihood(DetectionModel(lam2, tau2), n2, threat))
            assert a == pytest.approx(b, rel=1e-9)


class TestStealthSensitivity:
    def test_frozen_value(self):
        assert stealth_sensitivity(DetectionModel(0.1, 1.0), 10.0) == pytest.approx(
            SENSITIVITY_TEN, rel=1e-15
        )

    def test_at_zero_stages_equals_capability(self):
        assert stealth_sensitivity(DetectionModel(0.3, 2.0), 0.0) == pytest.approx(
            0.6, rel=1e-15
        )

    def test_symmetric_in_rate_and_window(self):
        a = stealth_sensitivity(DetectionModel(0.2, 1.7), 3.0)
        b = stealth_sensitivity(DetectionModel(1.7, 0.2), 3.0)
        assert a == b

    def test_matches_central_difference(self):
        detection = DetectionModel(0.3, 1.2)
        threat = ThreatModel(1)
        h = 1e-4 / detection.capability
        for n in (0.5, 2.0, 6.0):
            lo = 1.0 - float(stealth_likelihood(detection, n - h, threat))
            hi = 1.0 - float(stealth_likelihood(detection, n + h, threat))
            finite_diff = (hi - lo) / (2.0 * h)
            assert stealth_sensitivity(detection, n) == pytest.approx(
                finite_diff, rel=1e-6
            )


class TestSolveStealthDefenseCount:
    def test_two_attacker_frozen(self):
        n = solve_stealth_defense_count(0.5, DetectionModel(1.0, 1.0), ThreatModel(2))
        assert n == pytest.approx(STAGES_SQRT, rel=1e-14)

    def test_single_attacker_unit_case(self):
        n = solve_stealth_defense_count(
            math.exp(-1.0), DetectionModel(1.0, 1.0), ThreatModel(1)
        )
        assert n == pytest.approx(1.0, rel=1e-14)

    def test_attacker_dependence_lowers_count(self):
        n = solve_stealth_defense_count(0.5, DetectionModel(1.0, 1.0), ThreatModel(2, 1.05))
        assert n == pytest.approx(STAGES_G105, rel=1e-14)
        assert n < STAGES_SQRT

    def test_round_trips(self):
        for target in (0.01, 0.3, 0.7, 0.95):
            for attackers, g in [(1, 1.0), (2, 1.0), (5, 1.02)]:
                detection = DetectionModel(0.4, 1.5)
                threat = ThreatModel(attackers, g)
                n = solve_stealth_defense_count(target, detection, threat)
                back = float(stealth_likelihood(detection, n, threat))
                assert back == pytest.approx(target, rel=1e-9)

    def test_rejects_blind_defender(self):
        with pytest.raises(DomainError):
            solve_stealth_defense_count(0.5, DetectionModel(0.0, 1.0), ThreatModel(1))

    def test_infeasible_dependence_target(self):
        with pytest.raises(InfeasibleTarget):
            solve_stealth_defense_count(0.01, DetectionModel(1.0, 1.0), ThreatModel(10, 0.9))


class TestStealthIndifference:
    def test_hyperbola_frozen(self):
        curve = stealth_indifference(0.5, ThreatModel(1), (0.5, 2.0), 4)
        assert curve.x_label == "x" and curve.y_label == "n"
        lookup = dict(curve.points)
        for x, expected in HYPERBOLA.items():
            assert lookup[x] == pytest.approx(expected, rel=1e-14)

    def test_product_constant_along_curve(self):
        curve = stealth_indifference(0.25, ThreatModel(2), (0.2, 3.0), 15)
        products = [x * n for x, n in curve.points]
        for value in products[1:]:
            assert value == pytest.approx(products[0], rel=1e-12)

    def test_more_attackers_need_more_but_sublinearly(self):
        single = stealth_indifference(0.5, ThreatModel(1), (1.0, 2.0), 3)
        crowd = stealth_indifference(0.5, ThreatModel(10), (1.0, 2.0), 3)
        for (_, n1), (_, n10) in zip(single.points, crowd.points):
            assert n1 < n10 < 10.0 * n1

    def test_required_count_monotone_in_attackers_with_damping(self):
        detection = DetectionModel(1.0, 1.0)
        counts = [
            solve_stealth_defense_count(0.5, detection, ThreatModel(k))
            for k in range(1, 7)
        ]
        increments = [b - a for a, b in zip(counts, counts[1:])]
        assert all(d > 0 for d in increments)
        assert all(a > b for a, b in zip(increments, increments[1:]))

    def test_rejects_nonpositive_range(self):
        with pytest.raises(InvalidRange):
            stealth_indifference(0.5, ThreatModel(1), (0.0, 1.0), 3)


class TestStealthSurface:
    def test_values_and_major_order(self):
        surface = stealth_surface(0.5, ThreatModel(1), (0.5, 1.0), 2, (1.0, 2.0), 2)
        assert (surface.a_label, surface.b_label, surface.y_label) == ("lambda", "tau_a", "n")
        grid = [(lam, tau) for lam, tau, _ in surface.points]
        assert grid == [(0.5, 1.0), (0.5, 2.0), (1.0, 1.0), (1.0, 2.0)]
        for lam, tau, n in surface.points:
            assert n == pytest.approx(LN2 / (lam * tau), rel=1e-14)

    def test_rejects_nonpositive_grid(self):
        with pytest.raises(InvalidRange):
            stealth_surface(0.5, ThreatModel(1), (-1.0, 1.0), 2, (1.0, 2.0), 2)


class TestOptimizeDelay:
    MODEL = DelayCostModel(1.0, 2.0, 0.6931)

    def test_continuous_optimum_matches_calculus(self):
        # C(x) = K/(x*(x_best - x)) is minimized where x*(x_best - x) peaks,
        # at x = x_best/2.
        verdict = optimize_delay(0.5, ThreatModel(1), self.MODEL)
        assert verdict.classification is SpendClass.OPTIMAL
        assert verdict.capability == pytest.approx(1.0, abs=1e-6)
        assert verdict.defense_count == pytest.approx(LN2, rel=1e-6)
        assert verdict.minimal_cost == pytest.approx(LN2, rel=1e-9)

    def test_integer_mode_picks_one_stage(self):
        verdict = optimize_delay(0.5, ThreatModel(1), self.MODEL, integer_mode=True)
        assert verdict.defense_count == 1.0
        assert verdict.capability == pytest.approx(LN2, rel=1e-12)
        assert verdict.minimal_cost == pytest.approx(DELAY_COST_N1, rel=1e-12)
        assert DELAY_COST_N1 < DELAY_COST_N2

    def test_underspending_below_minimal_cost(self):
        verdict = optimize_delay(0.5, ThreatModel(1), DelayCostModel(1.0, 2.0, 0.5))
        assert verdict.classification is SpendClass.UNDERSPENDING
        assert verdict.surplus < 0.0

    def test_overspending_above_minimal_cost(self):
        verdict = optimize_delay(0.5, ThreatModel(1), DelayCostModel(1.0, 2.0, 1.0))
        assert verdict.classification is SpendClass.OVERSPENDING

    def test_custom_price_table(self):
        # Flat unit price: cost K/x falls with capability, so the optimum
        # runs to the technology ceiling.
        verdict = optimize_delay(0.5, ThreatModel(1), self.MODEL, price=lambda x: 1.0)
        assert verdict.capability == pytest.approx(2.0, rel=1e-6)
        assert verdict.minimal_cost == pytest.approx(LN2 / 2.0, rel=1e-6)

    def test_optimum_dominates_grid_scan(self):
        verdict = optimize_delay(0.3, ThreatModel(2, 1.01), DelayCostModel(1.5, 3.0, 5.0))
        k = verdict.defense_count * verdict.capability
        for i in range(1, 1000):
            x = 3.0 * i / 1001.0
            cost = (k / x) * 1.5 / (3.0 - x)
            assert verdict.minimal_cost <= cost * (1.0 + 1e-12)

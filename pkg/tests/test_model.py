import pytest
from hypothesis import given, strategies as st

from chargesched import (
    ChargerSpec,
    Scenario,
    SensorNode,
    StopRecord,
    effective_energy,
    integrate_energy,
    power_at_distance,
    utility,
)

SPEC = ChargerSpec(alpha=100.0, beta=10.0, range_d=6.0, speed_v=1.0)


class TestPowerAtDistance:
    def test_zero_distance(self):
        assert power_at_distance(0.0, SPEC) == 1.0  # alpha / beta^2

    def test_beyond_cutoff(self):
        assert power_at_distance(7.0, SPEC) == 0.0

    def test_hand_value(self):
        # alpha/(d+beta)^2 at d=5: 100/225
        assert power_at_distance(5.0, SPEC) == 100.0 / 225.0

    def test_cutoff_boundary_still_charges(self):
        assert power_at_distance(6.0, SPEC) == pytest.approx(100.0 / 256.0)

    def test_negative_distance_rejected(self):
        with pytest.raises(ValueError):
            power_at_distance(-0.1, SPEC)

    @given(
        st.floats(min_value=0.0, max_value=50.0),
        st.floats(min_value=0.0, max_value=50.0),
    )
    def test_nonincreasing(self, a, b):
        d1, d2 = min(a, b), max(a, b)
        assert power_at_distance(d1, SPEC) >= power_at_distance(d2, SPEC)


class TestUtility:
    def test_linear_region(self):
        assert utility(50.0, 100.0) == 0.5

    def test_saturation(self):
        assert utility(150.0, 100.0) == 1.0

    def test_empty_charge(self):
        assert utility(0.0, 100.0) == 0.0

    def test_boundary(self):
        assert utility(100.0, 100.0) == 1.0

    def test_nonpositive_demand_rejected(self):
        with pytest.raises(ValueError):
            utility(1.0, 0.0)
        with pytest.raises(ValueError):
            utility(1.0, -3.0)

    def test_negative_energy_rejected(self):
        with pytest.raises(ValueError):
            utility(-1.0, 10.0)

    @given(
        st.floats(min_value=0.0, max_value=1e6),
        st.floats(min_value=1e-3, max_value=1e6),
    )
    def test_clamped_and_monotone(self, q, demand):
        u = utility(q, demand)
        assert 0.0 <= u <= 1.0
        assert utility(q + 1.0, demand) >= u

    @given(
        st.floats(min_value=0.0, max_value=1e4),
        st.floats(min_value=0.0, max_value=1e4),
        st.floats(min_value=1.0, max_value=1e4),
    )
    def test_lipschitz_in_normalized_energy(self, q1, q2, demand):
        lhs = abs(utility(q1, demand) - utility(q2, demand))
        assert lhs <= abs(q1 - q2) / demand + 1e-12


class TestEffectiveEnergy:
    def test_single_stop_at_node(self):
        node = SensorNode(0, (3.0, 4.0), demand=50.0, deadline=100.0)
        stops = [StopRecord((3.0, 4.0), arrival=0.0, dwell=10.0)]
        # d=0 so power is exactly 1 W
        assert effective_energy(stops, node, SPEC) == 10.0

    def test_arrival_at_deadline_contributes_nothing(self):
        node = SensorNode(0, (0.0, 0.0), demand=50.0, deadline=100.0)
        stops = [StopRecord((0.0, 0.0), arrival=100.0, dwell=10.0)]
        assert effective_energy(stops, node, SPEC) == 0.0

    def test_deadline_clips_dwell(self):
        node = SensorNode(0, (0.0, 0.0), demand=50.0, deadline=100.0)
        stops = [StopRecord((0.0, 0.0), arrival=95.0, dwell=10.0)]
        # power 1 W, only 5 s count
        assert effective_energy(stops, node, SPEC) == 5.0

    def test_power_override(self):
        node = SensorNode(0, (0.0, 0.0), demand=50.0, deadline=100.0)
        stops = [StopRecord((50.0, 50.0), arrival=0.0, dwell=10.0)]
        assert effective_energy(stops, node, SPEC) == 0.0  # out of range
        assert effective_energy(stops, node, SPEC, powers=[0.25]) == 2.5

    def test_additive_over_disjoint_stop_lists(self):
        node = SensorNode(0, (2.0, 2.0), demand=50.0, deadline=60.0)
        first = [StopRecord((1.0, 2.0), 0.0, 20.0)]
        second = [StopRecord((2.5, 2.0), 25.0, 30.0), StopRecord((9.0, 2.0), 58.0, 10.0)]
        combined = effective_energy(first + second, node, SPEC)
        split = effective_energy(first, node, SPEC) + effective_energy(second, node, SPEC)
        assert combined == pytest.approx(split, rel=1e-12)

    def test_matches_numeric_integration(self):
        node = SensorNode(0, (1.0, 1.0), demand=50.0, deadline=7.25)
        stops = [
            StopRecord((0.0, 1.0), 0.0, 3.0),
            StopRecord((1.0, 3.0), 4.0, 2.5),
            StopRecord((2.0, 2.0), 7.0, 1.0),
        ]
        exact = effective_energy(stops, node, SPEC)
        numeric = integrate_energy(stops, node, SPEC, fine_dt=1e-3)
        assert numeric == pytest.approx(exact, rel=1e-9)


class TestDomainTypes:
    def test_charger_invariants(self):
        for bad in (
            dict(alpha=0.0),
            dict(beta=-1.0),
            dict(range_d=0.0),
            dict(speed_v=0.0),
        ):
            kwargs = dict(alpha=100.0, beta=10.0, range_d=6.0, speed_v=1.0)
            kwargs.update(bad)
            with pytest.raises(ValueError):
                ChargerSpec(**kwargs)

    def test_node_invariants(self):
        with pytest.raises(ValueError):
            SensorNode(0, (0.0, 0.0), demand=0.0, deadline=1.0)
        with pytest.raises(ValueError):
            SensorNode(0, (0.0, 0.0), demand=1.0, deadline=0.0)

    def test_scenario_budget_defaults_to_latest_deadline(self):
        nodes = (
            SensorNode(0, (1.0, 1.0), 10.0, 300.0),
            SensorNode(1, (2.0, 2.0), 10.0, 900.0),
        )
        sc = Scenario(10.0, nodes, SPEC)
        assert sc.budget_t == 900.0

    def test_scenario_rejects_out_of_plane_node(self):
        nodes = (SensorNode(0, (11.0, 1.0), 10.0, 300.0),)
        with pytest.raises(ValueError):
            Scenario(10.0, nodes, SPEC)

    def test_scenario_rejects_empty(self):
        with pytest.raises(ValueError):
            Scenario(10.0, (), SPEC)

    def test_stop_record_invariants(self):
        with pytest.raises(ValueError):
            StopRecord((0.0, 0.0), arrival=-1.0, dwell=1.0)
        with pytest.raises(ValueError):
            StopRecord((0.0, 0.0), arrival=0.0, dwell=-1.0)

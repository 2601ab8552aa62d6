"""Path functionals and the trajectory optimizer."""

import numpy as np
import pytest

from traitfront.errors import DomainError
from traitfront.regions import cap_region
from traitfront.trajectories import (
    Trajectory,
    action_cost,
    clamp_dip,
    dip_depth,
    geodesic_distance_via_path,
    geodesic_length,
    minimize_action,
    peak_bound,
)

from .oracles import FROZEN, exact_action_J, exact_geodesic_distance

IDENTITY = np.vectorize(lambda th: th)  # the linear motility law
REGION = cap_region(x_r=0.0, theta_bar=0.2)


def straight(t, x0, th0, x1, th1, m=64):
    return Trajectory(t, np.linspace(x0, x1, m + 1), np.linspace(th0, th1, m + 1))


def test_resting_path_costs_minus_the_duration():
    traj = straight(2.0, -1.0, 0.7, -1.0, 0.7)
    assert action_cost(traj, IDENTITY) == pytest.approx(-2.0, abs=1e-14)


def test_climbing_path_cost_is_quadratic_in_the_climb_rate():
    v, t = 1.8, 1.3
    traj = straight(t, 0.0, 0.5, 0.0, 0.5 + v * t)
    assert action_cost(traj, IDENTITY) == pytest.approx((v * v / 4.0 - 1.0) * t, rel=1e-13)


def test_lateral_path_cost_uses_the_local_motility():
    c, t = 2.4, 0.7  # lateral speed c at trait level 1, where the law equals 1
    traj = straight(t, 0.0, 1.0, c * t, 1.0)
    assert action_cost(traj, IDENTITY) == pytest.approx((c * c / 4.0 - 1.0) * t, rel=1e-13)


def test_lateral_motion_at_the_degenerate_level_is_infinitely_costly():
    traj = straight(1.0, 0.0, 0.0, 1.0, 0.0)
    assert action_cost(traj, IDENTITY) == np.inf
    assert geodesic_length(traj, IDENTITY) == np.inf


def test_degenerate_duration_or_negative_trait_is_rejected():
    with pytest.raises(DomainError):
        straight(0.0, 0.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        minimize_action(1.0, 0.5, 0.0, IDENTITY, REGION)
    with pytest.raises(DomainError):
        minimize_action(1.0, -0.5, 1.0, IDENTITY, REGION)
    bad = straight(1.0, 0.0, 1.0, 0.0, -1.0)
    with pytest.raises(DomainError):
        bad.check_admissible()


def test_vertical_geodesic_length_is_half_the_climb():
    traj = straight(1.0, 0.5, 0.3, 0.5, 1.1)
    assert geodesic_length(traj, IDENTITY) == pytest.approx(0.4, rel=1e-13)
    assert geodesic_length(straight(1.0, 0.5, 0.3, 0.5, 0.3), IDENTITY) == 0.0


def test_geodesic_length_is_reparameterization_and_reversal_invariant():
    rng = np.random.default_rng(3)
    g1 = np.cumsum(rng.uniform(0.0, 0.1, 33))
    g2 = 0.5 + np.abs(np.cumsum(rng.normal(0.0, 0.05, 33)))
    base = Trajectory(1.0, g1, g2)
    assert geodesic_length(base.reversed(), IDENTITY) == pytest.approx(
        geodesic_length(base, IDENTITY), rel=1e-13
    )
    # doubling the node count on the same polyline leaves the length unchanged
    fine = Trajectory(
        1.0,
        np.interp(np.linspace(0, 32, 65), np.arange(33), g1),
        np.interp(np.linspace(0, 32, 65), np.arange(33), g2),
    )
    assert geodesic_length(fine, IDENTITY) == pytest.approx(
        geodesic_length(base, IDENTITY), rel=1e-12
    )


def test_refining_the_time_grid_barely_moves_a_smooth_cost():
    s = np.linspace(0.0, 1.0, 65)
    s2 = np.linspace(0.0, 1.0, 129)
    coarse = Trajectory(1.0, np.sin(s), 0.5 + 0.3 * s)
    fine = Trajectory(1.0, np.sin(s2), 0.5 + 0.3 * s2)
    assert action_cost(fine, IDENTITY) == pytest.approx(
        action_cost(coarse, IDENTITY), abs=5e-4
    )


def test_optimizer_rests_when_starting_inside_the_region():
    cost, traj, info = minimize_action(-0.5, 0.1, 1.5, IDENTITY, REGION, seed=0)
    assert cost == pytest.approx(-1.5, abs=1e-9)
    assert np.ptp(traj.g1) < 1e-4 and np.ptp(traj.g2) < 1e-4
    assert not info["iteration_limit"]


@pytest.mark.parametrize(
    "x,theta,t",
    [(1.5, 1.0, 1.0), (0.3, 0.05, 0.5), (1.0, 2.0, 1.5)],
)
def test_optimizer_matches_the_closed_form_action(x, theta, t):
    cost, traj, _ = minimize_action(x, theta, t, IDENTITY, REGION, seed=1)
    exact = exact_action_J(x, theta, t, 0.2)
    assert cost == pytest.approx(exact, abs=0.02)
    assert cost >= exact - 1e-6  # a discretized minimum cannot beat the true one
    traj.check_admissible()
    assert REGION.contains(traj.g1[-1], traj.g2[-1])


def test_action_from_the_classical_front_point_is_near_zero():
    # the front at unit time sits where the action vanishes; at the
    # asymptotic abscissa 4/3 the computed action should be zero to
    # within the cross-validation tolerance
    cost, _, _ = minimize_action(4.0 / 3.0, 1e-6, 1.0, IDENTITY, REGION, seed=2)
    assert abs(cost) <= 0.07


def test_action_from_the_classical_front_point_matches_the_finite_cap_value():
    # companion pin: the source region caps the trait at 0.2, and the exact
    # finite-cap action at (4/3, 0+, t=1) is strictly positive — the front
    # sits at x ~ 1.0733, left of the asymptotic abscissa
    cost, _, _ = minimize_action(4.0 / 3.0, 1e-6, 1.0, IDENTITY, REGION, seed=2)
    exact = exact_action_J(4.0 / 3.0, 1e-6, 1.0, 0.2)
    assert exact == pytest.approx(FROZEN["J_4over3_row0_t1_thbar0.2"], rel=1e-9)
    assert cost == pytest.approx(exact, abs=0.02)
    front_cost = exact_action_J(FROZEN["front_t1_thbar0.2"], 0.0, 1.0, 0.2)
    assert front_cost == pytest.approx(0.0, abs=1e-9)


def test_reported_cost_is_insensitive_to_halving_the_positivity_floor():
    costs = [
        minimize_action(1.2, 0.8, 1.0, IDENTITY, REGION, seed=3, delta_floor=f)[0]
        for f in (2.5e-3, 1.25e-3)
    ]
    assert costs[0] == pytest.approx(costs[1], abs=1e-4)


def test_near_optimal_paths_respect_the_peak_bound():
    for x, theta, t in [(1.5, 1.0, 1.0), (2.0, 0.5, 2.0), (0.5, 1.7, 0.6)]:
        cost, traj, _ = minimize_action(x, theta, t, IDENTITY, REGION, seed=4)
        assert float(np.max(traj.g2)) <= peak_bound(traj, cost) + 1e-9


def test_optimal_paths_do_not_dip_below_their_endpoints():
    # for a monotone motility law, dipping in trait is never profitable:
    # the returned path has no dip, and clamping a dip never lowers the cost
    for x, theta, t in [(1.5, 1.0, 1.0), (1.0, 2.0, 1.5)]:
        cost, traj, _ = minimize_action(x, theta, t, IDENTITY, REGION, seed=5)
        assert dip_depth(traj) <= 1e-3
        clamped = clamp_dip(traj)
        assert action_cost(clamped, IDENTITY) >= cost - 1e-6


def test_path_distance_agrees_with_the_closed_form_distance():
    for x, theta in [(1.0, 0.5), (0.8, 1.2), (1.6, 0.1)]:
        dist, _, _ = geodesic_distance_via_path(x, theta, IDENTITY, REGION, seed=6)
        exact = exact_geodesic_distance(x, theta, 1.0, 0.2)
        assert dist == pytest.approx(exact, abs=0.02)


def test_multi_start_search_is_deterministic_per_seed():
    a = minimize_action(1.5, 1.0, 1.0, IDENTITY, REGION, seed=7)
    b = minimize_action(1.5, 1.0, 1.0, IDENTITY, REGION, seed=7)
    assert a[0] == b[0]
    np.testing.assert_array_equal(a[1].g1, b[1].g1)
    np.testing.assert_array_equal(a[1].g2, b[1].g2)

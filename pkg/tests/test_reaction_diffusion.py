"""Finite-epsilon solver: initial hump, CFL bound, stepping, diagnostics."""

import numpy as np
import pytest

from traitfront.config import default_config
from traitfront.errors import ConfigError
from traitfront.fronts import extract_front
from traitfront.grid import HalfPlaneGrid
from traitfront.reaction_diffusion import (
    U_FLOOR,
    cfl_dt,
    hopf_cole,
    init_state,
    initial_hump,
    interior_max_v,
    run_to,
    step,
)
from traitfront.regions import cap_region

from .oracles import FROZEN, explicit_cfl_dt, logistic_exact


def test_initial_hump_is_one_inside_zero_outside_ramp_in_between(rd_cfg):
    field = initial_hump(rd_cfg)
    grid = rd_cfg.grid
    X, TH = grid.mesh()
    sd = rd_cfg.region.signed_distance(X, TH)
    delta = rd_cfg.bump_width_cells * max(grid.h_x, grid.h_theta)
    assert np.all(field.values[sd <= -delta] == 1.0)
    assert np.all(field.values[sd >= 0.0] == 0.0)
    ramp = (sd > -delta) & (sd < 0.0)
    assert np.all((field.values[ramp] > 0.0) & (field.values[ramp] < 1.0))
    assert field.range_violation() == 0.0


def test_initial_hump_decays_monotonically_toward_the_boundary(rd_cfg):
    # walk right along a row that crosses the region edge: u must not increase
    field = initial_hump(rd_cfg)
    row = field.values[2, :]  # a low-theta row inside the cap's span
    assert np.all(np.diff(row) <= 1e-15)


def test_initial_hump_requires_an_interior_node():
    cfg = default_config(
        grid=HalfPlaneGrid(-1.0, 3.0, 2.5, 10, 10),
        region=cap_region(x_r=-1.5, theta_bar=0.2),  # entirely left of the grid
        epsilon=0.1,
        front_guard="off",
    )
    with pytest.raises(ConfigError):
        initial_hump(cfg)


def test_cfl_bound_matches_the_hand_computed_value():
    got = cfl_dt(eps=0.1, dbar_eps_max=4.0, h_x=0.05, h_theta=0.05)
    assert got == pytest.approx(0.9 / (320.0 + 80.0 + 10.0), rel=1e-15)
    assert got == pytest.approx(FROZEN["cfl_example"], rel=1e-15)
    assert got == pytest.approx(explicit_cfl_dt(0.1, 4.0, 0.05, 0.05), rel=1e-15)


def test_cfl_bound_monotonicity_and_limits():
    base = cfl_dt(0.1, 4.0, 0.05, 0.05)
    coarser = cfl_dt(0.1, 4.0, 0.1, 0.1)
    assert base < coarser < 4.0 * base  # reaction term caps the gain
    # stiff-reaction limit: dt scales like eps as eps -> 0 on a fixed grid
    small, smaller = cfl_dt(1e-4, 4.0, 0.05, 0.05), cfl_dt(1e-5, 4.0, 0.05, 0.05)
    assert smaller == pytest.approx(small / 10.0, rel=1e-3)


def test_zero_and_one_are_equilibria(rd_cfg):
    state = init_state(rd_cfg)
    for const in (0.0, 1.0):
        s = state
        s.u.values[...] = const
        for _ in range(3):
            s = step(s)
        assert np.all(s.u.values == const)


def test_constant_half_follows_the_exact_logistic_law(rd_cfg):
    state = init_state(rd_cfg)
    state.u.values[...] = 0.5
    stepped = step(state)
    expected = logistic_exact(0.5, state.dt / state.eps)
    assert np.all(stepped.u.values == stepped.u.values[0, 0])  # stays constant
    assert stepped.u.values[0, 0] == pytest.approx(expected, rel=1e-14)


def test_limit_mode_config_cannot_build_a_state(small_cfg):
    with pytest.raises(ConfigError):
        init_state(small_cfg)  # epsilon is None


def test_hopf_cole_inverts_the_exponential(rd_cfg):
    state = init_state(rd_cfg)
    state.u.values[...] = 1.0
    assert np.all(hopf_cole(state).values == 0.0)
    state.u.values[...] = np.exp(-5.0 / state.eps)
    np.testing.assert_allclose(hopf_cole(state).values, 5.0, rtol=1e-12)
    state.u.values[...] = 0.0
    cap = -state.eps * np.log(U_FLOOR)
    np.testing.assert_allclose(hopf_cole(state).values, cap, rtol=1e-12)
    assert hopf_cole(state).tag == "v"


def test_run_to_now_is_a_no_op(rd_cfg):
    state = init_state(rd_cfg)
    state = run_to(state, 0.2)
    again = run_to(state, state.time)
    assert again.step_count == state.step_count
    np.testing.assert_array_equal(again.u.values, state.u.values)


def test_run_to_composes_exactly(rd_cfg):
    one_shot = run_to(init_state(rd_cfg), 0.5)
    two_legs = run_to(run_to(init_state(rd_cfg), 0.25), 0.5)
    assert one_shot.step_count == two_legs.step_count
    np.testing.assert_array_equal(one_shot.u.values, two_legs.u.values)
    assert abs(one_shot.time - 0.5) <= one_shot.dt


def test_front_advances_by_time_half(rd_cfg):
    state0 = init_state(rd_cfg)
    state = run_to(state0, 0.5)
    x0 = extract_front(state0.u, theta_row=0)
    x1 = extract_front(state.u, theta_row=0)
    assert x1 > x0


def test_maximum_principle_along_a_run(rd_cfg):
    state = init_state(rd_cfg)
    for t in (0.1, 0.3, 0.5):
        state = run_to(state, t)
        assert state.u.range_violation() == 0.0


def test_interior_values_stay_order_one_under_hopf_cole(rd_cfg):
    # deep inside the source region u stays near 1, so v stays near 0,
    # uniformly over the sweep of epsilon values
    caps = []
    for eps in (0.2, 0.1, 0.05):
        state = run_to(init_state(rd_cfg.with_updates(epsilon=eps)), 0.5)
        caps.append(interior_max_v(state, rd_cfg.region, margin=0.1))
    assert max(caps) < 0.5

"""Diffusivity laws: point values, rescaling, and declared limits."""

import numpy as np
import pytest

from traitfront.errors import ConfigError, DomainError
from traitfront.profiles import (
    check_admissible,
    linear_profile,
    oscillating_log_profile,
    power_law_profile,
    tabulated_profile,
)

from .oracles import FROZEN, oscillating_log_D, oscillating_log_D_eps


def test_linear_profile_is_the_identity():
    assert linear_profile().D(3.0) == pytest.approx(3.0)
    assert linear_profile().D(0.0) == 0.0


def test_oscillating_log_vanishes_at_zero_and_matches_hand_evaluation_at_two():
    prof = oscillating_log_profile()
    assert prof.D(0.0) == 0.0
    assert prof.D(2.0) == pytest.approx(oscillating_log_D(2.0), rel=1e-14)
    assert prof.D(2.0) == pytest.approx(FROZEN["osclog_D_at_2"], rel=1e-14)
    assert prof.D(2.0) > 0.0


def test_negative_trait_is_a_domain_error():
    for prof in (linear_profile(), oscillating_log_profile(), power_law_profile(2.0)):
        with pytest.raises(DomainError):
            prof.D(-0.1)


def test_rescaled_linear_law_is_scale_invariant():
    assert linear_profile().D_eps(5.0, 0.01) == pytest.approx(5.0)


def test_rescaled_power_law_is_scale_invariant():
    assert power_law_profile(2.0).D_eps(3.0, 0.1) == pytest.approx(9.0)


def test_rescaled_oscillating_law_is_near_identity_at_small_epsilon():
    got = oscillating_log_profile().D_eps(2.0, 1e-6)
    assert got == pytest.approx(oscillating_log_D_eps(2.0, 1e-6), rel=1e-13)
    assert got == pytest.approx(FROZEN["osclog_Deps_theta2_eps1e-6"], rel=1e-13)
    assert abs(got - 2.0) <= 0.08


def test_rescaling_with_nonpositive_epsilon_is_a_domain_error():
    with pytest.raises(DomainError):
        linear_profile().D_eps(1.0, 0.0)
    with pytest.raises(DomainError):
        linear_profile().D_eps(1.0, -1.0)


@pytest.mark.parametrize("eps", [1.0, 0.1, 1e-3, 1e-6])
@pytest.mark.parametrize(
    "prof",
    [linear_profile(), power_law_profile(1.7), oscillating_log_profile()],
    ids=["linear", "power", "osclog"],
)
def test_rescaled_law_is_exactly_one_at_theta_one(prof, eps):
    assert prof.D_eps(1.0, eps) == 1.0


@pytest.mark.parametrize("eps", [0.5, 0.05, 1e-4])
def test_scale_invariant_laws_equal_their_limit_at_every_epsilon(eps):
    thetas = np.linspace(0.0, 5.0, 23)
    for prof in (linear_profile(), power_law_profile(2.0)):
        np.testing.assert_allclose(
            prof.D_eps(thetas, eps), prof.D_limit(thetas), rtol=1e-13, atol=1e-300
        )


def test_limit_law_values():
    assert linear_profile().D_limit(7.0) == pytest.approx(7.0)
    assert oscillating_log_profile().D_limit(7.0) == pytest.approx(7.0)
    for prof in (linear_profile(), power_law_profile(2.0), oscillating_log_profile()):
        assert prof.D_limit(0.0) == 0.0


def test_oscillating_rescaling_error_shrinks_as_epsilon_does():
    prof = oscillating_log_profile()
    thetas = np.linspace(0.1, 5.0, 2001)
    sups = [float(np.max(np.abs(prof.D_eps(thetas, eps) - thetas)))
            for eps in (1e-2, 1e-4, 1e-6)]
    assert sups[0] >= sups[1] >= sups[2]


def test_tabulated_profile_interpolates_and_has_no_declared_limit():
    prof = tabulated_profile([0.0, 1.0, 2.0], [0.0, 2.0, 6.0])
    assert prof.D(0.5) == pytest.approx(1.0)
    assert prof.D(1.5) == pytest.approx(4.0)
    with pytest.raises(ConfigError):
        prof.D_limit(1.0)


def test_tabulated_constructor_rejects_negative_samples():
    with pytest.raises(ConfigError):
        tabulated_profile([0.0, 1.0, 2.0], [0.0, -1.0, 2.0])


def test_admissibility_check_rejects_a_law_that_extrapolates_negative():
    prof = tabulated_profile([0.0, 1.0, 2.0], [0.0, 5.0, 1.0])  # slope -4 past theta=2
    with pytest.raises(ConfigError):
        check_admissible(prof, 4.0)


def test_admissibility_check_rejects_a_flat_envelope():
    prof = tabulated_profile([0.0, 0.1, 4.0], [0.0, 8.0, 8.0])
    with pytest.raises(ConfigError):
        check_admissible(prof, 4.0)


def test_dbar_row_honors_the_epsilon_mode():
    thetas = np.linspace(0.0, 2.0, 9)
    prof = oscillating_log_profile()
    np.testing.assert_allclose(prof.dbar_row(thetas, None), thetas)  # limit mode
    np.testing.assert_allclose(
        prof.dbar_row(thetas, 0.1), prof.D_eps(thetas, 0.1), rtol=1e-14
    )

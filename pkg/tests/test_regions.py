"""Source-region geometry: membership, projection, signed distance, masks."""

import numpy as np
import pytest

from traitfront.errors import ConfigError
from traitfront.grid import HalfPlaneGrid
from traitfront.regions import ConvexRegion, cap_region, polygon_region


@pytest.fixture
def cap():
    return cap_region(x_r=0.0, theta_bar=0.5)


def test_interior_point_is_contained_and_projects_to_itself(cap):
    assert cap.contains(-1.0, 0.2)
    assert cap.project(-1.0, 0.2) == pytest.approx((-1.0, 0.2))


def test_point_right_of_the_cap_projects_along_x(cap):
    assert not cap.contains(2.0, 0.2)
    assert cap.project(2.0, 0.2) == pytest.approx((0.0, 0.2))


def test_point_above_and_right_projects_to_the_cap_corner(cap):
    assert cap.project(1.0, 1.5) == pytest.approx((0.0, 0.5))


def test_boundary_points_count_as_inside(cap):
    assert cap.contains(0.0, 0.5)
    assert cap.contains(0.0, 0.0)
    assert cap.contains(-3.0, 0.5)


def test_projection_is_idempotent_and_contractive(rng):
    region = cap_region(x_r=0.3, theta_bar=0.7)
    pts = np.column_stack(
        [rng.uniform(-2.0, 3.0, size=200), rng.uniform(0.0, 2.0, size=200)]
    )
    proj = np.array([region.project(x, th) for x, th in pts])
    again = np.array([region.project(px, pth) for px, pth in proj])
    np.testing.assert_allclose(again, proj, atol=1e-14)
    # 1-Lipschitz: |P(a) - P(b)| <= |a - b| for random pairs
    a, b = pts[:100], pts[100:]
    pa, pb = proj[:100], proj[100:]
    assert np.all(
        np.linalg.norm(pa - pb, axis=1) <= np.linalg.norm(a - b, axis=1) + 1e-12
    )


def test_signed_distance_sign_convention_and_projection_consistency(cap):
    assert cap.signed_distance(-1.0, 0.2) < 0
    assert cap.signed_distance(2.0, 0.2) == pytest.approx(2.0)
    assert cap.signed_distance(1.0, 1.5) == pytest.approx(np.hypot(1.0, 1.0))
    # contains iff projection distance is zero
    for x, th in [(-0.5, 0.1), (0.0, 0.5), (0.3, 0.3), (-1.0, 0.9)]:
        px, pth = cap.project(x, th)
        dist = np.hypot(px - x, pth - th)
        assert cap.contains(x, th) == (dist == 0.0)


def test_grid_masks_select_exactly_the_member_nodes(cap):
    grid = HalfPlaneGrid(-1.0, 1.0, 1.0, 21, 11)
    mask = cap.member_mask(grid)
    X, TH = grid.mesh()
    expected = (X <= 0.0) & (TH <= 0.5)
    np.testing.assert_array_equal(mask, expected)
    interior = cap.interior_mask(grid, margin=0.15)
    assert interior.sum() < mask.sum()
    assert not np.any(interior & ~mask)


def test_polygon_region_matches_halfplane_checks():
    poly = polygon_region([(-2.0, 0.0), (-1.0, 0.0), (-1.0, 0.4), (-2.0, 0.4)])
    assert poly.contains(-1.5, 0.2)
    assert not poly.contains(-0.5, 0.2)
    px, pth = poly.project(0.0, 0.2)
    assert (px, pth) == pytest.approx((-1.0, 0.2))
    assert poly.signed_distance(-1.5, 0.2) < 0 < poly.signed_distance(0.0, 0.2)


def test_invalid_regions_are_rejected():
    with pytest.raises(ConfigError):
        ConvexRegion("cap", x_r=0.0, theta_bar=-0.1)
    with pytest.raises(ConfigError):
        ConvexRegion("blob")
    with pytest.raises(ConfigError):
        polygon_region([(-1.0, 0.0), (-2.0, 0.0)])  # too few vertices

import numpy as np
import pytest

from ris_placement import (
    CartesianPoint,
    PlanarArray,
    RisPanel,
    SphericalPoint,
    array_element_positions,
    fresnel_bounds,
    in_fresnel_zone,
    ris_centroid,
    ris_element_positions,
    spherical_to_cartesian,
)

LAM = 299792458.0 / 300.0e9


def test_spherical_to_cartesian_axes():
    # +z axis
    p = spherical_to_cartesian(SphericalPoint(2.0, 0.0, 0.0))
    assert np.allclose([p.x, p.y, p.z], [0.0, 0.0, 2.0])
    # +x axis
    p = spherical_to_cartesian(SphericalPoint(3.0, np.pi / 2, 0.0))
    assert np.allclose([p.x, p.y, p.z], [3.0, 0.0, 0.0], atol=1e-15)
    # +y axis
    p = spherical_to_cartesian(SphericalPoint(1.5, np.pi / 2, np.pi / 2))
    assert np.allclose([p.x, p.y, p.z], [0.0, 1.5, 0.0], atol=1e-15)


def test_spherical_to_cartesian_radius_preserved(rng):
    for _ in range(100):
        d = rng.uniform(0.01, 10.0)
        sp = SphericalPoint(d, rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        c = spherical_to_cartesian(sp)
        assert np.linalg.norm(c.as_array()) == pytest.approx(d, rel=1e-12)


def test_spherical_point_validation():
    with pytest.raises(ValueError):
        SphericalPoint(-1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        SphericalPoint(1.0, 3.5, 0.0)
    with pytest.raises(ValueError):
        SphericalPoint(1.0, 0.0, 7.0)


def test_cartesian_point_rejects_non_finite():
    with pytest.raises(ValueError):
        CartesianPoint(np.nan, 0.0, 0.0)
    with pytest.raises(ValueError):
        CartesianPoint(0.0, np.inf, 0.0)


def test_array_positions_2x2():
    arr = PlanarArray(rows=2, cols=2, spacing=0.01, center=CartesianPoint(1.0, 2.0, -0.5))
    pos = array_element_positions(arr)
    assert pos.shape == (4, 3)
    # row-major: (row 0, col 0), (row 0, col 1), (row 1, col 0), (row 1, col 1)
    assert np.allclose(pos[0], [0.995, 1.995, -0.5])
    assert np.allclose(pos[1], [1.005, 1.995, -0.5])
    assert np.allclose(pos[2], [0.995, 2.005, -0.5])
    assert np.allclose(pos[3], [1.005, 2.005, -0.5])
    # the grid is centered: mean of positions == center
    assert np.allclose(pos.mean(axis=0), [1.0, 2.0, -0.5])


def test_array_positions_single_element():
    arr = PlanarArray(rows=1, cols=1, spacing=0.01, center=CartesianPoint(0.3, -0.2, 0.7))
    pos = array_element_positions(arr)
    assert pos.shape == (1, 3)
    assert np.allclose(pos[0], [0.3, -0.2, 0.7])


def test_array_rectangular_ordering():
    arr = PlanarArray(rows=2, cols=3, spacing=1.0, center=CartesianPoint(0, 0, 0))
    pos = array_element_positions(arr)
    # index i*cols + j; x varies fastest
    for i in range(2):
        for j in range(3):
            k = i * 3 + j
            assert pos[k, 0] == pytest.approx((j - 1.0) * 1.0)
            assert pos[k, 1] == pytest.approx((i - 0.5) * 1.0)


def test_planar_array_validation():
    with pytest.raises(ValueError):
        PlanarArray(rows=0, cols=2, spacing=0.1, center=CartesianPoint(0, 0, 0))
    with pytest.raises(ValueError):
        PlanarArray(rows=2, cols=2, spacing=0.0, center=CartesianPoint(0, 0, 0))


def test_ris_positions_and_flattening():
    panel = RisPanel(nx=3, ny=2, element_width=0.4, element_length=0.3,
                     gap_x=0.1, gap_y=0.2, z=1.5)
    pos = ris_element_positions(panel)
    assert pos.shape == (6, 3)
    assert panel.pitch_x == pytest.approx(0.5)
    assert panel.pitch_y == pytest.approx(0.5)
    # w = a*ny + b: element (a, b) at (a*pitch_x, b*pitch_y, z)
    for a in range(3):
        for b in range(2):
            w = a * 2 + b
            assert np.allclose(pos[w], [a * 0.5, b * 0.5, 1.5])


def test_ris_centroid_is_mean_of_elements():
    panel = RisPanel(nx=5, ny=3, element_width=0.2, element_length=0.1,
                     gap_x=0.05, gap_y=0.02, z=-0.8)
    pos = ris_element_positions(panel)
    assert np.allclose(ris_centroid(panel), pos.mean(axis=0))


def test_panel_aperture_is_largest_side():
    panel = RisPanel(nx=4, ny=2, element_width=0.5, element_length=0.5,
                     gap_x=0.1, gap_y=0.1, z=0.0)
    # x side: 4*0.5 + 3*0.1 = 2.3; y side: 2*0.5 + 1*0.1 = 1.1
    assert panel.aperture == pytest.approx(2.3)


def test_panel_beta_validation():
    ok = np.exp(1j * np.linspace(0, 1, 4))
    panel = RisPanel(nx=2, ny=2, element_width=0.1, element_length=0.1,
                     gap_x=0.0, gap_y=0.0, z=0.0, beta=ok)
    assert np.allclose(panel.phase_profile(), ok)
    with pytest.raises(ValueError):
        RisPanel(nx=2, ny=2, element_width=0.1, element_length=0.1,
                 gap_x=0.0, gap_y=0.0, z=0.0, beta=ok[:3])
    with pytest.raises(ValueError):
        RisPanel(nx=2, ny=2, element_width=0.1, element_length=0.1,
                 gap_x=0.0, gap_y=0.0, z=0.0, beta=2.0 * ok)


def test_phase_profile_defaults_to_ones():
    panel = RisPanel(nx=2, ny=3, element_width=0.1, element_length=0.1,
                     gap_x=0.0, gap_y=0.0, z=0.0)
    assert np.array_equal(panel.phase_profile(), np.ones(6, dtype=complex))


def test_fresnel_bounds_formula():
    panel = RisPanel(nx=1, ny=1, element_width=2.0, element_length=1.0,
                     gap_x=0.0, gap_y=0.0, z=0.0)
    lo, hi = fresnel_bounds(panel, 0.5)
    assert lo == pytest.approx(0.62 * np.sqrt(8.0 / 0.5))
    assert hi == pytest.approx(2.0 * 4.0 / 0.5)


def test_fresnel_bounds_40x40_study_panel():
    panel = RisPanel(nx=40, ny=40, element_width=LAM / 2, element_length=LAM / 2,
                     gap_x=LAM / 8, gap_y=LAM / 8, z=0.0)
    lo, hi = fresnel_bounds(panel, LAM)
    assert lo == pytest.approx(0.0768663, abs=1e-6)
    assert hi == pytest.approx(1.236675, abs=1e-5)


def test_in_fresnel_zone_boundary_semantics():
    panel = RisPanel(nx=1, ny=1, element_width=LAM * 10, element_length=LAM * 10,
                     gap_x=0.0, gap_y=0.0, z=0.0)
    lo, hi = fresnel_bounds(panel, LAM)
    # band is open below, closed above
    assert not in_fresnel_zone(panel, np.array([0.0, 0.0, lo]), LAM)
    assert in_fresnel_zone(panel, np.array([0.0, 0.0, np.nextafter(lo, np.inf)]), LAM)
    assert in_fresnel_zone(panel, np.array([0.0, 0.0, hi]), LAM)
    assert not in_fresnel_zone(panel, np.array([0.0, 0.0, np.nextafter(hi, np.inf)]), LAM)


def test_in_fresnel_zone_measures_from_centroid():
    panel = RisPanel(nx=3, ny=3, element_width=LAM * 4, element_length=LAM * 4,
                     gap_x=0.0, gap_y=0.0, z=0.2)
    lo, hi = fresnel_bounds(panel, LAM)
    centroid = ris_centroid(panel)
    probe = centroid + np.array([0.0, 0.0, 0.5 * (lo + hi)])
    assert in_fresnel_zone(panel, probe, LAM)
    assert in_fresnel_zone(panel, CartesianPoint(*probe), LAM)


def test_panel_validation():
    with pytest.raises(ValueError):
        RisPanel(nx=0, ny=1, element_width=0.1, element_length=0.1,
                 gap_x=0.0, gap_y=0.0, z=0.0)
    with pytest.raises(ValueError):
        RisPanel(nx=1, ny=1, element_width=-0.1, element_length=0.1,
                 gap_x=0.0, gap_y=0.0, z=0.0)
    with pytest.raises(ValueError):
        RisPanel(nx=1, ny=1, element_width=0.1, element_length=0.1,
                 gap_x=-0.5, gap_y=0.0, z=0.0)

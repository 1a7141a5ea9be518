import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tentlab.geometry import (
    TWO_PI,
    CarlesonBox,
    HyperbolicDisc,
    LueckingRegion,
    StolzGamma,
    StolzLambda,
    TentOverPoint,
    WholeDisc,
    hyperbolic_disc_euclidean,
    hyperbolic_distance,
    luecking_center,
    luecking_index_of,
    region_contains,
    stolz_arc_measure,
)

disc_points = st.complex_numbers(max_magnitude=0.99, allow_nan=False, allow_infinity=False)


class TestHyperbolicDistance:
    def test_identity(self):
        assert hyperbolic_distance(0.3 + 0.1j, 0.3 + 0.1j) == 0.0

    def test_closed_form_at_origin(self):
        assert hyperbolic_distance(0.0, 0.5) == pytest.approx(0.5 * math.log(3.0), rel=1e-14)

    def test_rejects_boundary(self):
        with pytest.raises(ValueError):
            hyperbolic_distance(1.0, 0.0)
        with pytest.raises(ValueError):
            hyperbolic_distance(0.0, 1.0 + 0j)

    @given(z=disc_points, w=disc_points)
    def test_symmetry(self, z, w):
        assert hyperbolic_distance(z, w) == pytest.approx(hyperbolic_distance(w, z), abs=1e-12)

    @given(z=disc_points, w=disc_points, u=disc_points)
    @settings(max_examples=200)
    def test_triangle_inequality(self, z, w, u):
        lhs = hyperbolic_distance(z, u)
        rhs = hyperbolic_distance(z, w) + hyperbolic_distance(w, u)
        assert lhs <= rhs + 1e-12

    @given(z=disc_points, w=disc_points)
    def test_zero_iff_equal(self, z, w):
        d = hyperbolic_distance(z, w)
        if z == w:
            assert d == 0.0
        else:
            assert d > 0.0


class TestHyperbolicDiscEuclidean:
    def test_centered_at_origin(self):
        c, r = hyperbolic_disc_euclidean(0.0, 0.7)
        assert c == 0.0
        assert r == pytest.approx(math.tanh(0.7), rel=1e-14)

    def test_degenerate_radius_limit(self):
        c, r = hyperbolic_disc_euclidean(0.4 + 0.2j, 1e-9)
        assert abs(c - (0.4 + 0.2j)) < 1e-8
        assert r < 1e-8

    @pytest.mark.parametrize("center,radius", [(0.5, 0.5), (0.3 - 0.6j, 1.2), (-0.9j, 0.25)])
    def test_boundary_is_hyperbolic_circle(self, center, radius):
        c, r = hyperbolic_disc_euclidean(center, radius)
        ang = TWO_PI * np.arange(10_000) / 10_000
        boundary = c + r * np.exp(1j * ang)
        beta = hyperbolic_distance(center, boundary)
        assert np.max(np.abs(beta - radius)) < 1e-10

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            hyperbolic_disc_euclidean(0.0, 0.0)


class TestRegionContains:
    def test_stolz_direct_formula(self):
        assert region_contains(StolzGamma(1.0, 2.0), 0.0)
        assert not region_contains(StolzGamma(1.0, 0.75), 0.0)

    def test_luecking_region_examples(self):
        r00 = LueckingRegion(0, 0)
        assert region_contains(r00, 0.25)
        assert region_contains(r00, 0.0)
        assert not region_contains(r00, 0.6)

    def test_carleson_box_whole_disc(self):
        box = CarlesonBox(0.3, TWO_PI)
        for z in (0.0, 0.5j, -0.99, 0.9 * np.exp(2.2j)):
            assert region_contains(box, complex(z))

    def test_origin_in_box_only_when_full(self):
        assert not region_contains(CarlesonBox(0.0, 1.5), 0.0)
        assert region_contains(CarlesonBox(0.0, TWO_PI), 0.0)

    @given(z=disc_points)
    def test_hyperbolic_disc_matches_metric(self, z):
        region = HyperbolicDisc(0.3 + 0.2j, 0.8)
        assert region.contains(z) == (hyperbolic_distance(0.3 + 0.2j, z) < 0.8)

    @given(z=disc_points, phi=st.floats(0.0, TWO_PI))
    def test_stolz_rotation_equivariance(self, z, phi):
        rot = complex(math.cos(phi), math.sin(phi))
        before = StolzGamma(1.0, 2.0).contains(z)
        after = StolzGamma(rot, 2.0).contains(rot * z)
        assert before == after

    def test_tent_over_origin_is_disc(self):
        tent = TentOverPoint(0.0)
        assert tent.contains(0.0) and tent.contains(0.9j)

    def test_tent_membership(self):
        w = 0.5
        tent = TentOverPoint(w)
        assert tent.contains(0.7)
        assert not tent.contains(0.3)            # too shallow
        assert not tent.contains(0.7 * np.exp(0.6j))  # outside the angular window

    @given(z=disc_points)
    @settings(max_examples=300)
    def test_luecking_regions_tile(self, z):
        # every point below the truncation radius lies in exactly one region
        L = 6
        if abs(z) >= 1.0 - 2.0 ** -(L + 1):
            return
        hits = [
            (i, j)
            for i in range(L + 1)
            for j in range(2**i)
            if LueckingRegion(i, j).contains(z)
        ]
        assert len(hits) == 1
        assert hits[0] == luecking_index_of(z)


class TestStolzArcMeasure:
    def test_origin(self):
        assert stolz_arc_measure(0.0, 2.0) == TWO_PI
        assert stolz_arc_measure(0.0, 1.0) == 0.0

    def test_full_circle_threshold(self):
        # c(1 - 1/M) = -1 exactly: the boundary set is still the whole circle
        assert stolz_arc_measure(0.5, 2.0) == pytest.approx(TWO_PI, rel=1e-14)

    def test_law_of_cosines_value(self):
        c = (1.0 + 0.81 - (1.0 - 0.81) ** 2) / 1.8
        assert stolz_arc_measure(0.9, 1.0) == pytest.approx(2.0 * math.acos(c), rel=1e-14)

    def test_rejects_small_aperture(self):
        with pytest.raises(ValueError):
            stolz_arc_measure(0.5, 0.5)

    @given(z=disc_points, phi=st.floats(0.0, TWO_PI))
    def test_rotation_invariance(self, z, phi):
        rot = complex(math.cos(phi), math.sin(phi))
        assert stolz_arc_measure(z, 2.0) == pytest.approx(
            stolz_arc_measure(rot * z, 2.0), abs=1e-12
        )

    def test_matches_membership_count(self):
        # omega(z) equals the measure of angles whose region contains z
        z = 0.72 * np.exp(1.3j)
        K = 200_000
        ang = TWO_PI * np.arange(K) / K
        inside = StolzGamma(1.0, 2.0).contains_many(z * np.exp(-1j * ang))
        assert stolz_arc_measure(z, 2.0) == pytest.approx(
            TWO_PI * inside.mean(), abs=2e-4
        )


class TestLueckingCenters:
    def test_level0(self):
        assert luecking_center(0, 0) == pytest.approx(-0.25)

    def test_level1(self):
        assert luecking_center(1, 0) == pytest.approx(0.625j)

    def test_constant_modulus_per_level(self):
        for i in (2, 5):
            mods = {round(abs(luecking_center(i, j)), 14) for j in range(2**i)}
            assert len(mods) == 1

    def test_center_inside_its_region(self):
        for i in range(6):
            for j in (0, 2**i - 1):
                assert LueckingRegion(i, j).contains(luecking_center(i, j))

    def test_rejects_bad_sector(self):
        with pytest.raises(ValueError):
            luecking_center(2, 4)


class TestWholeDisc:
    def test_contains(self):
        assert WholeDisc().contains(0.999)
        assert not WholeDisc().contains_many(np.array([1.0 + 0j]))[0]


class TestLambdaRegion:
    def test_angular_window(self):
        lam = StolzLambda(1.0)
        assert lam.contains(0.5 * np.exp(0.49j))
        assert not lam.contains(0.5 * np.exp(0.51j))

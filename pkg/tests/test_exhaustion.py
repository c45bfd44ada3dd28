import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archimedes import exhaustion, solids
from archimedes.exhaustion import (
    archimedes_sum,
    cavalieri_compare,
    cone_volume,
    disc_area,
    monte_carlo_volume,
    pappus_volume,
    polygon_sandwich,
    riemann_bounds,
    sphere_volume_from_surface,
)
from archimedes.solids import SolidSpec, make_solid

EXACT_KINDS = [k for k in solids.CONSTRUCTORS if make_solid(k).exact_volume is not None]


class TestArchimedesSum:
    def test_constant_profile_exact(self):
        assert archimedes_sum(lambda z: 1.0, (0.0, 1.0), 7) == 1.0

    def test_sphere_profile(self):
        value = archimedes_sum(lambda z: math.pi * (1 - z * z), (-1.0, 1.0), 1000)
        assert abs(value - 4 * math.pi / 3) / (4 * math.pi / 3) < 5e-3

    def test_bicylinder_profile(self):
        s = solids.bicylinder(1.0)
        value = archimedes_sum(s.cross_section, s.support, 10_000)
        assert abs(value - 16.0 / 3.0) / (16.0 / 3.0) < 1e-3

    def test_rejects_zero_slices(self):
        with pytest.raises(ValueError):
            archimedes_sum(lambda z: 1.0, (0.0, 1.0), 0)

    @pytest.mark.parametrize("kind", EXACT_KINDS)
    def test_first_order_convergence(self, kind):
        s = make_solid(kind)
        err = [
            abs(archimedes_sum(s.cross_section, s.support, n) - s.exact_volume)
            for n in (128, 256)
        ]
        assert err[1] <= 0.6 * err[0] + 1e-14 * s.exact_volume


class TestRiemannBounds:
    def test_constant_profile(self):
        pair = riemann_bounds(lambda z: 2.0, (0.0, 3.0), 5)
        assert pair.lower == pair.upper
        assert math.isclose(pair.lower, 6.0, rel_tol=1e-14)

    def test_sphere_bracket(self):
        pair = riemann_bounds(lambda z: math.pi * (1 - z * z), (-1.0, 1.0), 100, 8)
        exact = 4 * math.pi / 3
        assert pair.lower < exact < pair.upper
        assert pair.gap < 0.15

    def test_gap_shrinks_on_refinement(self):
        profile = solids.sphere(1.0).cross_section
        g100 = riemann_bounds(profile, (-1.0, 1.0), 100).gap
        g200 = riemann_bounds(profile, (-1.0, 1.0), 200).gap
        assert g200 < g100

    @pytest.mark.parametrize("n", [50, 137])
    @pytest.mark.parametrize("kind", EXACT_KINDS)
    def test_contains_closed_form(self, kind, n):
        s = make_solid(kind)
        pair = riemann_bounds(s.cross_section, s.support, n)
        slack = 1e-12 * s.exact_volume
        assert pair.lower <= s.exact_volume + slack
        assert pair.upper >= s.exact_volume - slack

    def test_validation(self):
        with pytest.raises(ValueError):
            riemann_bounds(lambda z: 1.0, (0.0, 1.0), 0)
        with pytest.raises(ValueError):
            riemann_bounds(lambda z: 1.0, (0.0, 1.0), 4, probes_per_cell=1)


class TestPolygonSandwich:
    def test_hexagon_inner(self):
        s = polygon_sandwich(6, 1.0)
        assert math.isclose(s.inner_circumference, 3.0, rel_tol=1e-15)

    def test_square_outer(self):
        # tan(pi/4) = 1, so the printed rule n*r*tan(pi/n) gives exactly n*r
        s = polygon_sandwich(4, 2.0)
        assert math.isclose(s.outer_circumference, 8.0, rel_tol=1e-14)

    def test_classical_96_gon(self):
        s = polygon_sandwich(96, 1.0)
        assert round(s.inner_circumference, 5) == 3.14103
        assert round(s.outer_circumference, 5) == 3.14271
        assert s.inner_circumference < math.pi < s.outer_circumference

    def test_area_bounds_bracket_disc(self):
        s = polygon_sandwich(96, 1.0)
        assert s.inner_area_bound <= math.pi <= s.outer_area_bound

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            polygon_sandwich(2, 1.0)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(min_value=3, max_value=500), r=st.floats(0.1, 100.0))
    def test_refinement_ordering(self, n, r):
        coarse = polygon_sandwich(n, r)
        fine = polygon_sandwich(2 * n, r)
        half_circ = math.pi * r
        assert coarse.inner_circumference < fine.inner_circumference < half_circ
        assert half_circ < fine.outer_circumference < coarse.outer_circumference


class TestFigureRules:
    def test_disc_area(self):
        assert disc_area(1.0, 2 * math.pi) == math.pi
        assert disc_area(2.0, 4 * math.pi) == 4 * math.pi
        inner = polygon_sandwich(96, 1.0).inner_circumference
        low = disc_area(1.0, inner)
        assert math.isclose(low, 1.5705159754452546, rel_tol=1e-12)
        assert low < math.pi

    def test_cone_volume(self):
        assert math.isclose(cone_volume(math.pi, 3.0), math.pi, rel_tol=1e-15)
        assert cone_volume(1.0, 1.0) == 1.0 / 3.0
        s = solids.cone(1.0, 1.0)
        q = archimedes_sum(s.cross_section, s.support, 10_000)
        rule = cone_volume(math.pi, 1.0)
        assert abs(q - rule) / rule < 1e-3

    def test_sphere_volume_from_surface(self):
        assert math.isclose(sphere_volume_from_surface(1.0, 4 * math.pi), 4 * math.pi / 3, rel_tol=1e-15)
        assert math.isclose(sphere_volume_from_surface(2.0, 16 * math.pi), 32 * math.pi / 3, rel_tol=1e-15)
        s = solids.sphere(2.0)
        assert math.isclose(
            sphere_volume_from_surface(2.0, s.exact_surface), s.exact_volume, rel_tol=1e-14
        )


class TestCavalieri:
    def test_hemisphere_matches_drilled_cylinder(self):
        resid = cavalieri_compare(solids.hemisphere(1.0), solids.cylinder_minus_cone(1.0), 10_000)
        assert resid < 1e-12

    def test_identity(self):
        assert cavalieri_compare(solids.sphere(1.0), solids.sphere(1.0), 100) == 0.0

    def test_bicylinder_vs_sphere_gap_at_equator(self):
        # both supports are [-1, 1]; the largest mismatch is 4 - pi at z = 0
        resid = cavalieri_compare(solids.bicylinder(1.0), solids.sphere(1.0), 101)
        assert math.isclose(resid, 4.0 - math.pi, rel_tol=1e-15)

    def test_incomparable_supports(self):
        with pytest.raises(ValueError, match="not comparable"):
            cavalieri_compare(solids.sphere(1.0), solids.cylinder(1.0, 1.0), 10)


class TestPappus:
    def test_torus_cross_check(self):
        assert math.isclose(
            pappus_volume(math.pi, 3.0), solids.torus(3.0, 1.0).exact_volume, rel_tol=1e-14
        )

    def test_ten_random_pairs(self):
        rng = np.random.Generator(np.random.Philox(key=7))
        for _ in range(10):
            a = 0.5 + rng.random()
            R = a + 0.5 + 2.0 * rng.random()
            assert math.isclose(
                pappus_volume(math.pi * a * a, R),
                solids.torus(R, a).exact_volume,
                rel_tol=1e-13,
            )

    def test_unit_square_ring(self):
        assert math.isclose(pappus_volume(1.0, 1.0), 2 * math.pi, rel_tol=1e-15)

    def test_degenerate_axis_distance(self):
        with pytest.raises(ValueError):
            pappus_volume(1.0, 0.0)


def _full_box_spec():
    return SolidSpec(
        kind="fullbox",
        params={},
        axis="z",
        support=(0.0, 1.0),
        cross_section=lambda z: 6.0,
        contains=lambda x, y, z: True,
        bbox=((0.0, 0.0, 0.0), (2.0, 3.0, 1.0)),
        exact_volume=6.0,
    )


class TestMonteCarlo:
    def test_sphere_within_four_sigma(self):
        s = solids.sphere(1.0)
        est, se = monte_carlo_volume(s, 1_000_000, seed=2013)
        assert abs(est - s.exact_volume) < 4.0 * se

    def test_seed_determinism(self):
        s = solids.tricylinder(1.0)
        assert monte_carlo_volume(s, 200_000, seed=11) == monte_carlo_volume(s, 200_000, seed=11)
        a, _ = monte_carlo_volume(s, 200_000, seed=11)
        b, _ = monte_carlo_volume(s, 200_000, seed=12)
        assert a != b

    def test_full_box_is_exact_with_zero_error(self):
        est, se = monte_carlo_volume(_full_box_spec(), 10_000, seed=3)
        assert est == 6.0
        assert se == 0.0

    def test_chunking_does_not_change_stream(self):
        s = solids.sphere(1.0)
        small = monte_carlo_volume(s, exhaustion._MC_CHUNK + 17, seed=5)
        again = monte_carlo_volume(s, exhaustion._MC_CHUNK + 17, seed=5)
        assert small == again

    def test_rejects_zero_samples(self):
        with pytest.raises(ValueError):
            monte_carlo_volume(solids.sphere(1.0), 0, seed=0)

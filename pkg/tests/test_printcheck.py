import json
import math

import numpy as np
import pytest
from conftest import make_box

from archimedes import solids
from archimedes.mesh import TriangleMesh, merge_meshes, mesh_stats, tessellate
from archimedes.printcheck import PrintProfile, check_struts, validate


def hollow_box(outer_side, wall):
    inner = make_box(outer_side - 2.0 * wall, flip=True)
    return merge_meshes([make_box(outer_side), inner])


def sphere_shell(r_outer, thickness, res=128):
    outer = tessellate(solids.sphere(r_outer), res, res)
    inner = tessellate(solids.sphere(r_outer - thickness), res, res)
    return merge_meshes([outer, TriangleMesh(inner.vertices, inner.triangles[:, ::-1])])


class TestFixtures:
    def test_solid_cube_passes(self):
        report = validate(make_box(10.0))
        assert report.verdict == "pass"
        assert math.isclose(report.min_wall_estimate_mm, 10.0, rel_tol=1e-12)
        assert report.watertight and report.bbox_ok
        assert report.shell_count == 1
        assert not report.thin_regions

    def test_half_millimeter_gap_warns(self):
        report = validate(hollow_box(10.0, 0.5))
        assert report.verdict == "warn"
        assert math.isclose(report.min_wall_estimate_mm, 0.5, rel_tol=1e-9)
        assert len(report.thin_regions) > 0
        assert report.shell_count == 2

    def test_holed_cube_fails(self):
        cube = make_box(10.0)
        holed = TriangleMesh(cube.vertices, cube.triangles[:-1])
        report = validate(holed)
        assert report.verdict == "fail"
        assert not report.watertight

    def test_oversize_fails_per_axis(self):
        long_bar = make_box(1.0)
        stretched = TriangleMesh(long_bar.vertices * [150.0, 10.0, 10.0], long_bar.triangles)
        report = validate(stretched)
        assert report.verdict == "fail"
        assert not report.bbox_ok
        assert validate(make_box(139.0)).bbox_ok


class TestWallEstimate:
    def test_sphere_shell_within_ten_percent(self):
        report = validate(sphere_shell(20.0, 2.0))
        assert abs(report.min_wall_estimate_mm - 2.0) / 2.0 < 0.10
        assert report.verdict == "pass"

    def test_monotone_in_profile_strictness(self):
        mesh = hollow_box(10.0, 2.0)
        lax = validate(mesh, PrintProfile(min_wall_mm=1.0))
        strict = validate(mesh, PrintProfile(min_wall_mm=2.5, strict_wall_mm=3.0))
        assert lax.verdict == "pass"
        assert strict.verdict == "warn"  # raising min_wall can only demote

    def test_deterministic(self):
        mesh = hollow_box(10.0, 0.5)
        assert validate(mesh) == validate(mesh)


class TestCost:
    def test_material_volume_from_shells(self):
        report = validate(hollow_box(10.0, 1.0))
        stats = mesh_stats(hollow_box(10.0, 1.0))
        assert math.isclose(report.est_material_cm3, stats.signed_volume / 1000.0, rel_tol=1e-12)
        # hollow uses less material than solid
        assert report.est_material_cm3 < validate(make_box(10.0)).est_material_cm3

    def test_cost_increases_with_volume(self):
        small = validate(make_box(10.0))
        large = validate(make_box(12.0))
        assert large.est_cost > small.est_cost

    def test_cost_model(self):
        profile = PrintProfile(cost_base=3.0, cost_per_cm3=2.0)
        report = validate(make_box(10.0), profile)
        assert math.isclose(report.est_cost, 3.0 + 2.0 * report.est_material_cm3, rel_tol=1e-12)


class TestJson:
    def test_stable_keys(self):
        payload = json.loads(validate(make_box(10.0)).to_json())
        assert set(payload) == {
            "watertight", "minWallMm", "bboxOk", "shellCount",
            "materialCm3", "cost", "verdict",
        }
        assert payload["verdict"] == "pass"
        assert payload["watertight"] is True


class TestStruts:
    def test_pass_and_warn(self):
        assert check_struts([], [1.5]) == ["pass"]
        assert check_struts([], [0.5]) == ["warn"]
        assert check_struts([], []) == []
        assert check_struts([], [1.5, 0.3, 1.0]) == ["pass", "warn", "pass"]


class TestValidation:
    def test_empty_mesh_rejected(self):
        empty = TriangleMesh(np.empty((0, 3)), np.empty((0, 3), dtype="int32"))
        with pytest.raises(ValueError, match="empty"):
            validate(empty)

    def test_profile_invariants(self):
        with pytest.raises(ValueError):
            PrintProfile(min_wall_mm=5.0, strict_wall_mm=3.0)
        with pytest.raises(ValueError):
            PrintProfile(min_strut_radius_mm=0.0)

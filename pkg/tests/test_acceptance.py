"""Acceptance suite: one test per criterion, at the stated tolerances.

Run `pytest tests/test_acceptance.py -v` for one pass/fail line per
criterion; each test also prints a `[acceptance]` summary line (visible with
-s or on failure).
"""

import math
import time

import numpy as np
import pytest
from conftest import make_box

from archimedes import solids
from archimedes.exhaustion import (
    archimedes_sum,
    cavalieri_compare,
    monte_carlo_volume,
    pappus_volume,
    polygon_sandwich,
)
from archimedes.mesh import (
    TriangleMesh,
    is_watertight,
    merge_meshes,
    mesh_stats,
    pack_mesh,
    steiner_chain,
    tessellate,
)
from archimedes.printcheck import validate
from archimedes.stl_io import read_stl, write_ascii, write_binary

MC_SEED = 2013


def note(criterion, text):
    print(f"[acceptance] criterion {criterion}: PASS - {text}")


def test_c01_sphere_cylinder_two_thirds_laws():
    start = time.perf_counter()
    sphere = solids.sphere(1.0)
    cylinder = solids.cylinder(1.0, 2.0)
    v_ratio = sphere.exact_volume / cylinder.exact_volume
    s_ratio = sphere.exact_surface / cylinder.exact_surface
    elapsed = time.perf_counter() - start
    assert abs(v_ratio - 2.0 / 3.0) < 1e-14
    assert abs(s_ratio - 2.0 / 3.0) < 1e-14
    assert elapsed < 1.0
    note(1, f"volume {v_ratio:.16f}, surface {s_ratio:.16f}, {elapsed * 1e3:.1f} ms")


def test_c02_cavalieri_hemisphere_vs_drilled_cylinder():
    hemi = solids.hemisphere(1.0)
    cmc = solids.cylinder_minus_cone(1.0)
    residual = cavalieri_compare(hemi, cmc, 10_000)
    assert residual < 1e-12
    sum_hemi = archimedes_sum(hemi.cross_section, hemi.support, 10_000)
    sum_cmc = archimedes_sum(cmc.cross_section, cmc.support, 10_000)
    assert abs(sum_hemi - sum_cmc) < 1e-12
    note(2, f"slice residual {residual:.1e}, sum difference {abs(sum_hemi - sum_cmc):.1e}")


def test_c03_polygon_sandwich_96_and_refinement():
    s96 = polygon_sandwich(96, 1.0)
    assert s96.inner_circumference < math.pi < s96.outer_circumference
    assert s96.gap < 0.002
    ratios = []
    for k in range(7):
        ratios.append(polygon_sandwich(6 * 2**k, 1.0).gap / polygon_sandwich(6 * 2 ** (k + 1), 1.0).gap)
    assert all(3.5 <= r <= 4.5 for r in ratios)
    note(3, f"96-gon gap {s96.gap:.6f}; doubling ratios {min(ratios):.2f}..{max(ratios):.2f}")


def test_c04_hoof_four_thirds():
    hoof = solids.hoof(1.0, 2.0)
    assert abs(hoof.exact_volume - 4.0 / 3.0) < 1e-15
    q = archimedes_sum(hoof.cross_section, hoof.support, 10_000)
    assert abs(q - 4.0 / 3.0) / (4.0 / 3.0) < 1e-3
    est, se = monte_carlo_volume(hoof, 1_000_000, seed=MC_SEED)
    assert abs(est - 4.0 / 3.0) < 4.0 * se
    note(4, f"sum rel {abs(q - 4 / 3) * 3 / 4:.1e}, mc {abs(est - 4 / 3) / se:.2f} sigma")


def _prism_total_surface(n, r):
    base = 0.5 * n * r * r * math.sin(2.0 * math.pi / n)
    perimeter = 2.0 * n * r * math.sin(math.pi / n)
    return 2.0 * base + perimeter * 2.0 * r


def test_c05_globe_two_thirds_laws():
    for n in range(3, 13):
        globe = solids.globe(n, 1.0)
        prism = 2.0 * 0.5 * n * math.sin(2.0 * math.pi / n)
        assert abs(globe.exact_volume / prism - 2.0 / 3.0) < 1e-14
    worst = 0.0
    for n in (4, 6):
        st = mesh_stats(tessellate(solids.globe(n, 1.0), 256, 256))
        assert st.watertight
        ratio = st.surface_area / _prism_total_surface(n, 1.0)
        worst = max(worst, abs(ratio - 2.0 / 3.0) / (2.0 / 3.0))
    assert worst < 0.01
    note(5, f"volume ratios exact; mesh surface ratio within {worst * 100:.2f}% of 2/3")


def test_c06_steinmetz_solids():
    start = time.perf_counter()
    bicyl = solids.bicylinder(1.0)
    mesh_v = mesh_stats(tessellate(bicyl, 256, 256)).signed_volume
    sum_v = archimedes_sum(bicyl.cross_section, bicyl.support, 10_000)
    exact = 16.0 / 3.0
    assert abs(mesh_v - exact) / exact < 0.005
    assert abs(sum_v - exact) / exact < 0.005
    tricyl = solids.tricylinder(1.0)
    est, se = monte_carlo_volume(tricyl, 10_000_000, seed=7)
    target = 8.0 * (2.0 - math.sqrt(2.0))
    assert abs(est - target) < 4.0 * se
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    note(
        6,
        f"bicylinder mesh rel {abs(mesh_v - exact) / exact:.1e}, "
        f"tricylinder mc {abs(est - target) / se:.2f} sigma, {elapsed:.1f} s",
    )


def test_c07_cork_half_cylinder():
    cork = solids.cork(1.0, 1.0)
    assert abs(cork.exact_volume - math.pi / 2.0) < 1e-15
    worst = 0.0
    for k in range(1000):
        x = -1.0 + 2.0 * k / 999
        rectangle = 2.0 * math.sqrt(max(1.0 - x * x, 0.0)) * 1.0
        worst = max(worst, abs(cork.cross_section(x) - 0.5 * rectangle))
    assert worst < 1e-12
    note(7, f"triangle-vs-half-rectangle residual {worst:.1e} over 1000 stations")


def test_c08_pappus_torus():
    rng = np.random.Generator(np.random.Philox(key=17))
    worst = 0.0
    for _ in range(10):
        a = 0.4 + 1.2 * rng.random()
        R = a + 0.3 + 2.5 * rng.random()
        pap = pappus_volume(math.pi * a * a, R)
        tor = solids.torus(R, a).exact_volume
        worst = max(worst, abs(pap - tor) / tor)
    assert worst < 1e-13
    note(8, f"max relative mismatch {worst:.1e} over 10 parameter pairs")


def _catalog_meshes(res=32):
    for kind in solids.CONSTRUCTORS:
        if kind == "steiner_pack":
            yield kind, pack_mesh(steiner_chain(6, r_outer=30.0), 16)
        else:
            yield kind, tessellate(solids.make_solid(kind), res, res)


def test_c09_stl_codec_round_trips():
    count = 0
    for kind, mesh in _catalog_meshes():
        blob = write_binary(mesh)
        assert len(blob) == 84 + 50 * mesh.triangle_count
        again = write_binary(read_stl(blob).to_mesh())
        assert blob == again, f"binary round trip not byte-identical for {kind}"
        doc = read_stl(write_ascii(mesh, kind).encode("ascii"))
        expected = mesh.vertices.astype("<f4")[mesh.triangles]
        assert np.array_equal(doc.solids[0].vertices, expected), kind
        count += 1
    note(9, f"binary byte-identical and ascii bit-exact for {count} catalog meshes")


def test_c10_mesh_integrity():
    for kind, mesh in _catalog_meshes(res=64):
        assert is_watertight(mesh), f"{kind} mesh is not watertight"
    flips = 0
    for kind in ("sphere", "cork", "bicylinder"):
        mesh = tessellate(solids.make_solid(kind), 8, 9)
        assert is_watertight(mesh)
        for drop in range(mesh.triangle_count):
            keep = np.delete(mesh.triangles, drop, axis=0)
            assert not is_watertight(TriangleMesh(mesh.vertices, keep))
            flips += 1
    note(10, f"all catalog meshes watertight; {flips} single-triangle removals all leak")


def test_c11_printability_fixtures():
    solid_cube = make_box(10.0)
    hollow = merge_meshes([make_box(10.0), make_box(9.0, flip=True)])
    holed = TriangleMesh(solid_cube.vertices, solid_cube.triangles[:-1])
    verdicts = (
        validate(solid_cube).verdict,
        validate(hollow).verdict,
        validate(holed).verdict,
    )
    assert verdicts == ("pass", "warn", "fail")
    note(11, f"fixture verdicts {verdicts}")


def test_c12_steiner_pack_tangencies():
    pack = steiner_chain(6, r_outer=30.0, mobius_a=0.0)
    assert abs(pack.spheres[0][1] - 10.0) / 10.0 < 1e-12
    chain_radii = [r for _, r in pack.spheres[1:7]]
    assert all(abs(r - chain_radii[0]) / chain_radii[0] < 1e-12 for r in chain_radii)
    assert pack.max_tangency_residual() < 1e-9
    skew = steiner_chain(6, r_outer=30.0, mobius_a=0.4)
    assert skew.max_tangency_residual() < 1e-9
    note(
        12,
        f"r_inner = R/3, equal chain radii; residuals "
        f"{pack.max_tangency_residual():.1e} / {skew.max_tangency_residual():.1e}",
    )

"""Self-check suite behind `archimedes verify`.

Each check returns (name, ok, detail); the CLI renders them as a table and
exits nonzero if anything fails.  The suite mirrors the acceptance tests with
sample counts trimmed to keep a full run interactive.
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from . import exhaustion, printcheck, solids, stl_io
from .mesh import (
    TriangleMesh,
    make_screw,
    merge_meshes,
    mesh_stats,
    pack_mesh,
    steiner_chain,
    tessellate,
)

Check = tuple[str, bool, str]

_MC_SAMPLES = 200_000
_MC_SEED = 2013
_MC_SIGMAS = 5.0


def _prism_surface(n: int, r: float) -> float:
    base = 0.5 * n * r * r * math.sin(2.0 * math.pi / n)
    perimeter = 2.0 * n * r * math.sin(math.pi / n)
    return 2.0 * base + perimeter * 2.0 * r


def _kind_checks(kind: str) -> Iterator[Check]:
    spec = solids.make_solid(kind)
    exact = spec.exact_volume

    if exact is not None:
        q = exhaustion.archimedes_sum(spec.cross_section, spec.support, 10_000)
        rel = abs(q - exact) / exact
        yield f"slice-sum {kind}", rel < 1e-3, f"rel err {rel:.2e}"

        bounds = exhaustion.riemann_bounds(spec.cross_section, spec.support, 200)
        slack = 1e-12 * exact  # the bracket is certified only to rounding
        ok = bounds.lower <= exact + slack and exact - slack <= bounds.upper
        yield f"bounds {kind}", ok, f"[{bounds.lower:.6f}, {bounds.upper:.6f}]"

        est, se = exhaustion.monte_carlo_volume(spec, _MC_SAMPLES, seed=_MC_SEED)
        sig = abs(est - exact) / se if se > 0 else 0.0
        yield f"monte-carlo {kind}", sig < _MC_SIGMAS, f"{sig:.2f} sigma"

    if kind == "steiner_pack":
        pack = steiner_chain(6, r_outer=spec.params["r_outer"])
        yield "tangencies steiner_pack", pack.tangencies_ok(), (
            f"max residual {pack.max_tangency_residual():.1e}"
        )
        mesh = pack_mesh(pack, 20)
    else:
        mesh = tessellate(spec, 48, 48)
    st = mesh_stats(mesh)
    ok = st.watertight and st.signed_volume > 0
    if exact is not None:
        ok = ok and abs(st.signed_volume - exact) / exact < 0.05
    yield f"mesh {kind}", ok, f"watertight={st.watertight} V={st.signed_volume:.4f}"

    blob = stl_io.write_binary(mesh)
    again = stl_io.write_binary(stl_io.read_stl(blob).to_mesh())
    yield f"stl-roundtrip {kind}", blob == again, f"{len(blob)} bytes"


def _global_checks() -> Iterator[Check]:
    sph = solids.sphere(1.0)
    cyl = solids.cylinder(1.0, 2.0)
    vr = sph.exact_volume / cyl.exact_volume
    sr = sph.exact_surface / cyl.exact_surface
    ok = abs(vr - 2.0 / 3.0) < 1e-14 and abs(sr - 2.0 / 3.0) < 1e-14
    yield "sphere/cylinder 2:3", ok, f"volume {vr:.16f}, surface {sr:.16f}"

    hemi = solids.hemisphere(1.0)
    cmc = solids.cylinder_minus_cone(1.0)
    resid = exhaustion.cavalieri_compare(hemi, cmc, 10_000)
    yield "cavalieri hemisphere", resid < 1e-12, f"residual {resid:.2e}"
    s1 = exhaustion.archimedes_sum(hemi.cross_section, hemi.support, 5000)
    s2 = exhaustion.archimedes_sum(cmc.cross_section, cmc.support, 5000)
    yield "cavalieri slice sums", abs(s1 - s2) < 1e-12, f"diff {abs(s1 - s2):.2e}"

    ps = exhaustion.polygon_sandwich(96, 1.0)
    ok = ps.inner_circumference < math.pi < ps.outer_circumference and ps.gap < 0.002
    yield "96-gon sandwich", ok, f"{ps.inner_circumference:.6f} < pi < {ps.outer_circumference:.6f}"

    ratios = []
    for k in range(7):
        g1 = exhaustion.polygon_sandwich(6 * 2**k, 1.0).gap
        g2 = exhaustion.polygon_sandwich(6 * 2 ** (k + 1), 1.0).gap
        ratios.append(g1 / g2)
    ok = all(3.5 <= r <= 4.5 for r in ratios)
    yield "sandwich refinement", ok, f"gap ratios {min(ratios):.2f}..{max(ratios):.2f}"

    worst = 0.0
    for n in range(3, 13):
        g = solids.globe(n, 1.0)
        base = 0.5 * n * math.sin(2.0 * math.pi / n)
        worst = max(worst, abs(g.exact_volume / (base * 2.0) - 2.0 / 3.0))
    yield "globe volume law", worst < 1e-13, f"max |ratio - 2/3| = {worst:.1e}"

    worst = 0.0
    for n in (4, 6):
        st = mesh_stats(tessellate(solids.globe(n, 1.0), 128, 128))
        worst = max(worst, abs(st.surface_area / _prism_surface(n, 1.0) - 2.0 / 3.0))
    yield "globe surface law", worst < 2.0 / 300.0, f"max |ratio - 2/3| = {worst:.1e}"

    hoof = solids.hoof(1.0, 2.0)
    ok = abs(hoof.exact_volume - 4.0 / 3.0) < 1e-15
    yield "hoof 4/3", ok, f"exact {hoof.exact_volume}"

    cork = solids.cork(1.0, 1.0)
    worst = 0.0
    for i in range(1000):
        x = -1.0 + 2.0 * i / 999
        rect = 2.0 * math.sqrt(max(1.0 - x * x, 0.0)) * 1.0
        worst = max(worst, abs(cork.cross_section(x) - 0.5 * rect))
    ok = abs(cork.exact_volume - math.pi / 2.0) < 1e-15 and worst < 1e-12
    yield "cork half-cylinder", ok, f"slice residual {worst:.2e}"

    rng = np.random.Generator(np.random.Philox(key=7))
    worst = 0.0
    for _ in range(10):
        a = 0.5 + rng.random()
        R = a + 0.5 + 2.0 * rng.random()
        pap = exhaustion.pappus_volume(math.pi * a * a, R)
        tor = solids.torus(R, a).exact_volume
        worst = max(worst, abs(pap - tor) / tor)
    yield "pappus torus", worst < 1e-14, f"max rel {worst:.1e}"

    pack = steiner_chain(6, r_outer=30.0, mobius_a=0.0)
    radii = {round(r, 9) for _, r in pack.spheres[1:7]}
    ok = abs(pack.spheres[0][1] - 10.0) < 1e-9 and len(radii) == 1 and pack.tangencies_ok()
    skew = steiner_chain(8, r_outer=30.0, mobius_a=0.4)
    ok = ok and skew.tangencies_ok()
    yield "steiner tangencies", ok, (
        f"residuals {pack.max_tangency_residual():.1e}, {skew.max_tangency_residual():.1e}"
    )

    tube, rotor = make_screw()
    ok = mesh_stats(tube).watertight and mesh_stats(rotor).watertight
    yield "screw parts watertight", ok, "tube + rotor"

    cube = _box(10.0)
    hollow = merge_meshes([_box(10.0), _flip(_box(9.0))])
    holed = TriangleMesh(cube.vertices, cube.triangles[:-1])
    verdicts = tuple(printcheck.validate(m).verdict for m in (cube, hollow, holed))
    yield "printcheck fixtures", verdicts == ("pass", "warn", "fail"), str(verdicts)

    mesh = tessellate(solids.sphere(1.0), 24, 24)
    opened = TriangleMesh(mesh.vertices, mesh.triangles[:-1])
    ok = mesh_stats(mesh).watertight and not mesh_stats(opened).watertight
    yield "single-triangle leak", ok, "watertight flips on removal"


def _box(side: float) -> TriangleMesh:
    h = side / 2.0
    v = np.array([[x, y, z] for x in (-h, h) for y in (-h, h) for z in (-h, h)])
    t = np.array(
        [
            [0, 1, 3], [0, 3, 2], [4, 6, 7], [4, 7, 5], [0, 4, 5], [0, 5, 1],
            [2, 3, 7], [2, 7, 6], [0, 2, 6], [0, 6, 4], [1, 5, 7], [1, 7, 3],
        ]
    )
    return TriangleMesh(v, t)


def _flip(mesh: TriangleMesh) -> TriangleMesh:
    return TriangleMesh(mesh.vertices, mesh.triangles[:, ::-1])


def run_checks(kind: str | None = None) -> list[Check]:
    """Run the invariant suite, optionally restricted to one catalog kind."""
    results: list[Check] = []
    if kind is not None:
        if kind not in solids.CONSTRUCTORS:
            raise ValueError(f"unknown solid kind {kind!r}")
        results.extend(_kind_checks(kind))
        return results
    for k in solids.CONSTRUCTORS:
        results.extend(_kind_checks(k))
    results.extend(_global_checks())
    return results

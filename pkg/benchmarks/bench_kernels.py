#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot loops (Monte Carlo containment counting and printcheck ray
casting) on both backends and verifies they agree.  Run from the repo root:

    python benchmarks/bench_kernels.py [--samples N] [--rays N]
"""

import argparse
import time

import numpy as np

from archimedes import solids
from archimedes._kernels import _pykernels

try:
    from archimedes._kernels import _ckernels
except ImportError:
    _ckernels = None

from archimedes.mesh import TriangleMesh, merge_meshes, tessellate


def timeit(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def bench_containment(samples):
    rng = np.random.Generator(np.random.Philox(key=42))
    pts = 2.0 * rng.random((samples, 3)) - 1.0
    rows = []
    for kind in ("tricylinder", "globe", "torus"):
        spec = solids.make_solid(kind)
        code, params = spec.kernel
        params = np.asarray(params)
        py_hits, py_t = timeit(_pykernels.contains_count, code, params, pts)
        if _ckernels is None:
            rows.append((f"contains {kind}", py_t, None, True))
            continue
        cy_hits, cy_t = timeit(_ckernels.contains_count, code, params, pts)
        rows.append((f"contains {kind}", py_t, cy_t, py_hits == cy_hits))
    return rows


def bench_rays(n_rays):
    outer = tessellate(solids.sphere(20.0), 96, 96)
    inner = tessellate(solids.sphere(18.0), 96, 96)
    shell = merge_meshes([outer, TriangleMesh(inner.vertices, inner.triangles[:, ::-1])])
    corners = shell.corners()
    normals = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    idx = np.linspace(0, shell.triangle_count - 1, n_rays).astype(np.int32)
    args = (
        shell.vertices,
        shell.triangles,
        corners[idx].mean(axis=1),
        -normals[idx],
        idx,
        1e-6,
    )
    py_hits, py_t = timeit(_pykernels.ray_nearest_hits, *args, repeat=2)
    if _ckernels is None:
        return [(f"raycast {n_rays}x{shell.triangle_count}", py_t, None, True)]
    cy_hits, cy_t = timeit(_ckernels.ray_nearest_hits, *args, repeat=2)
    agree = np.allclose(py_hits, cy_hits, rtol=1e-12, equal_nan=True)
    return [(f"raycast {n_rays}x{shell.triangle_count}", py_t, cy_t, agree)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=2_000_000)
    parser.add_argument("--rays", type=int, default=800)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernels not built; timing the numpy fallback only\n")

    rows = bench_containment(args.samples) + bench_rays(args.rays)
    print(f"{'kernel':34s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}  agree")
    for name, py_t, cy_t, agree in rows:
        if cy_t is None:
            print(f"{name:34s} {py_t * 1e3:9.1f}ms {'-':>10s} {'-':>8s}  {agree}")
        else:
            print(
                f"{name:34s} {py_t * 1e3:9.1f}ms {cy_t * 1e3:9.1f}ms "
                f"{py_t / cy_t:7.1f}x  {agree}"
            )


if __name__ == "__main__":
    main()

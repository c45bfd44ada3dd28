"""Pure-numpy implementations of the hot kernels.

Used whenever the compiled extension is unavailable (or forced off via
ARCHIMEDES_PURE_PYTHON=1).  Expressions mirror the Cython kernels exactly so
both backends count the same Monte Carlo hits.
"""

import numpy as np

from . import _codes as C

BACKEND = "python"


def _polygon_mask(x, y, n, apothem):
    """Points inside a regular n-gon (vertex on +x axis) with given apothem."""
    inside = np.ones(x.shape, dtype=bool)
    for k in range(n):
        psi = (2 * k + 1) * np.pi / n
        inside &= x * np.cos(psi) + y * np.sin(psi) <= apothem
    return inside


def contains_count(kind, params, pts):
    """Number of points of pts (N,3) inside the solid encoded by (kind, params)."""
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    p = params
    if kind == C.SPHERE:
        r = p[0]
        m = x * x + y * y + z * z <= r * r
    elif kind == C.HEMISPHERE:
        r = p[0]
        m = (z >= 0.0) & (x * x + y * y + z * z <= r * r)
    elif kind == C.CYLINDER:
        r, h = p[0], p[1]
        m = (z >= 0.0) & (z <= h) & (x * x + y * y <= r * r)
    elif kind == C.CONE:
        r, h = p[0], p[1]
        rz = r * (1.0 - z / h)
        m = (z >= 0.0) & (z <= h) & (x * x + y * y <= rz * rz)
    elif kind == C.PYRAMID:
        half, h = p[0], p[1]
        lim = half * (1.0 - z / h)
        m = (z >= 0.0) & (z <= h) & (np.abs(x) <= lim) & (np.abs(y) <= lim)
    elif kind == C.CYL_MINUS_CONE:
        r = p[0]
        rho2 = x * x + y * y
        m = (z >= 0.0) & (z <= r) & (rho2 <= r * r) & (rho2 >= z * z)
    elif kind in (C.DOME, C.GLOBE):
        n, r = int(p[0]), p[1]
        if kind == C.DOME:
            m = (z >= 0.0) & (z <= r)
        else:
            m = np.abs(z) <= r
        zr = np.where(m, z / r, 1.0)
        f = np.sqrt(np.maximum(1.0 - zr * zr, 0.0))
        apo = f * (r * np.cos(np.pi / n))
        m &= _polygon_mask(x, y, n, apo)
    elif kind == C.BICYLINDER:
        r = p[0]
        m = (x * x + z * z <= r * r) & (y * y + z * z <= r * r)
    elif kind == C.TRICYLINDER:
        r = p[0]
        r2 = r * r
        m = (x * x + y * y <= r2) & (x * x + z * z <= r2) & (y * y + z * z <= r2)
    elif kind == C.HOOF:
        r, s = p[0], p[1]
        m = (x >= 0.0) & (x * x + y * y <= r * r) & (z >= 0.0) & (z <= s * x)
    elif kind == C.CORK:
        r, h = p[0], p[1]
        g = 1.0 - z / h
        m = (z >= 0.0) & (z <= h) & (np.abs(x) <= r)
        m &= y * y <= g * g * np.maximum(r * r - x * x, 0.0)
    elif kind == C.TORUS:
        R, a = p[0], p[1]
        d = np.sqrt(x * x + y * y) - R
        m = d * d + z * z <= a * a
    elif kind == C.SPHERE_UNION:
        nsph = int(p[0])
        m = np.zeros(x.shape, dtype=bool)
        for i in range(nsph):
            cx, cy, cz, r = p[1 + 4 * i : 5 + 4 * i]
            dx, dy, dz = x - cx, y - cy, z - cz
            m |= dx * dx + dy * dy + dz * dz <= r * r
    else:
        raise ValueError(f"unknown containment kernel code {kind}")
    return int(np.count_nonzero(m))


def ray_nearest_hits(vertices, triangles, origins, dirs, skip, t_min):
    """Nearest ray/triangle intersection distance per ray (inf when none).

    Moller-Trumbore over the full triangle list; the triangle indexed by
    skip[i] is ignored for ray i.  Distances below t_min are discarded so the
    origin's own surface never counts as a wall.
    """
    v0 = vertices[triangles[:, 0]]
    e1 = vertices[triangles[:, 1]] - v0
    e2 = vertices[triangles[:, 2]] - v0
    out = np.full(len(origins), np.inf)
    tri_idx = np.arange(len(triangles))
    for i in range(len(origins)):
        o, d = origins[i], dirs[i]
        pvec = np.cross(np.broadcast_to(d, e2.shape), e2)
        det = np.einsum("ij,ij->i", e1, pvec)
        ok = np.abs(det) > 1e-14
        inv = np.where(ok, 1.0 / np.where(ok, det, 1.0), 0.0)
        tvec = o - v0
        u = np.einsum("ij,ij->i", tvec, pvec) * inv
        qvec = np.cross(tvec, e1)
        v = np.dot(qvec, d) * inv
        t = np.einsum("ij,ij->i", e2, qvec) * inv
        hit = ok & (u >= -1e-12) & (v >= -1e-12) & (u + v <= 1.0 + 1e-12)
        hit &= (t > t_min) & (tri_idx != skip[i])
        if np.any(hit):
            out[i] = t[hit].min()
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot loops: containment counting for Monte Carlo volume estimates
and ray casting for wall-thickness checks.

Trigonometric constants for the polygon kinds are precomputed with numpy so
hit counts match the pure-numpy backend bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, sqrt

cnp.import_array()

from . import _codes as C

BACKEND = "cython"

# bind the kind codes to C ints so the dispatch runs without the GIL
cdef int K_SPHERE = C.SPHERE
cdef int K_HEMISPHERE = C.HEMISPHERE
cdef int K_CYLINDER = C.CYLINDER
cdef int K_CONE = C.CONE
cdef int K_PYRAMID = C.PYRAMID
cdef int K_CYL_MINUS_CONE = C.CYL_MINUS_CONE
cdef int K_BICYLINDER = C.BICYLINDER
cdef int K_TRICYLINDER = C.TRICYLINDER
cdef int K_HOOF = C.HOOF
cdef int K_CORK = C.CORK
cdef int K_TORUS = C.TORUS


cdef long _count_simple(int kind, const double[::1] p, const double[:, ::1] pts) nogil:
    cdef Py_ssize_t i, n = pts.shape[0]
    cdef long hits = 0
    cdef double x, y, z, r, h, s, a, R, half, lim, rz, rho2, d, g, r2
    for i in range(n):
        x = pts[i, 0]
        y = pts[i, 1]
        z = pts[i, 2]
        if kind == K_SPHERE:
            r = p[0]
            if x * x + y * y + z * z <= r * r:
                hits += 1
        elif kind == K_HEMISPHERE:
            r = p[0]
            if z >= 0.0 and x * x + y * y + z * z <= r * r:
                hits += 1
        elif kind == K_CYLINDER:
            r = p[0]
            h = p[1]
            if z >= 0.0 and z <= h and x * x + y * y <= r * r:
                hits += 1
        elif kind == K_CONE:
            r = p[0]
            h = p[1]
            if z >= 0.0 and z <= h:
                rz = r * (1.0 - z / h)
                if x * x + y * y <= rz * rz:
                    hits += 1
        elif kind == K_PYRAMID:
            half = p[0]
            h = p[1]
            if z >= 0.0 and z <= h:
                lim = half * (1.0 - z / h)
                if fabs(x) <= lim and fabs(y) <= lim:
                    hits += 1
        elif kind == K_CYL_MINUS_CONE:
            r = p[0]
            if z >= 0.0 and z <= r:
                rho2 = x * x + y * y
                if rho2 <= r * r and rho2 >= z * z:
                    hits += 1
        elif kind == K_BICYLINDER:
            r = p[0]
            if x * x + z * z <= r * r and y * y + z * z <= r * r:
                hits += 1
        elif kind == K_TRICYLINDER:
            r = p[0]
            r2 = r * r
            if x * x + y * y <= r2 and x * x + z * z <= r2 and y * y + z * z <= r2:
                hits += 1
        elif kind == K_HOOF:
            r = p[0]
            s = p[1]
            if x >= 0.0 and x * x + y * y <= r * r and z >= 0.0 and z <= s * x:
                hits += 1
        elif kind == K_CORK:
            r = p[0]
            h = p[1]
            if z >= 0.0 and z <= h and fabs(x) <= r:
                g = 1.0 - z / h
                d = r * r - x * x
                if d < 0.0:
                    d = 0.0
                if y * y <= g * g * d:
                    hits += 1
        elif kind == K_TORUS:
            R = p[0]
            a = p[1]
            d = sqrt(x * x + y * y) - R
            if d * d + z * z <= a * a:
                hits += 1
    return hits


cdef long _count_polygon(const double[:, ::1] pts, const double[::1] nx,
                         const double[::1] ny, double apo, double r,
                         bint mirrored) nogil:
    cdef Py_ssize_t i, k, n = pts.shape[0], edges = nx.shape[0]
    cdef long hits = 0
    cdef double x, y, z, zr, f2, f, limit
    cdef bint inside
    for i in range(n):
        x = pts[i, 0]
        y = pts[i, 1]
        z = pts[i, 2]
        if mirrored:
            if fabs(z) > r:
                continue
        elif z < 0.0 or z > r:
            continue
        zr = z / r
        f2 = 1.0 - zr * zr
        if f2 < 0.0:
            f2 = 0.0
        f = sqrt(f2)
        limit = f * apo
        inside = True
        for k in range(edges):
            if x * nx[k] + y * ny[k] > limit:
                inside = False
                break
        if inside:
            hits += 1
    return hits


cdef long _count_union(const double[::1] p, const double[:, ::1] pts) nogil:
    cdef Py_ssize_t i, k, n = pts.shape[0], m = <Py_ssize_t> p[0]
    cdef long hits = 0
    cdef double x, y, z, dx, dy, dz, r
    for i in range(n):
        x = pts[i, 0]
        y = pts[i, 1]
        z = pts[i, 2]
        for k in range(m):
            dx = x - p[1 + 4 * k]
            dy = y - p[2 + 4 * k]
            dz = z - p[3 + 4 * k]
            r = p[4 + 4 * k]
            if dx * dx + dy * dy + dz * dz <= r * r:
                hits += 1
                break
    return hits


def contains_count(kind, params, pts):
    """Number of points of pts (N,3) inside the solid encoded by (kind, params)."""
    cdef double[:, ::1] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef double[::1] par = np.ascontiguousarray(params, dtype=np.float64)
    cdef int code = kind
    if code == C.DOME or code == C.GLOBE:
        ngon = int(par[0])
        r = float(par[1])
        psi = (2 * np.arange(ngon) + 1) * np.pi / ngon
        nx = np.ascontiguousarray(np.cos(psi))
        ny = np.ascontiguousarray(np.sin(psi))
        apo = float(r * np.cos(np.pi / ngon))
        return int(_count_polygon(p, nx, ny, apo, r, code == C.GLOBE))
    if code == C.SPHERE_UNION:
        return int(_count_union(par, p))
    if code > C.SPHERE_UNION or code < 0:
        raise ValueError(f"unknown containment kernel code {kind}")
    return int(_count_simple(code, par, p))


def ray_nearest_hits(vertices, triangles, origins, dirs, skip, double t_min):
    """Nearest ray/triangle intersection distance per ray (inf when none)."""
    cdef const double[:, ::1] v = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef const int[:, ::1] t = np.ascontiguousarray(triangles, dtype=np.int32)
    cdef const double[:, ::1] o = np.ascontiguousarray(origins, dtype=np.float64)
    cdef const double[:, ::1] d = np.ascontiguousarray(dirs, dtype=np.float64)
    cdef const int[::1] sk = np.ascontiguousarray(skip, dtype=np.int32)
    out_arr = np.full(o.shape[0], np.inf)
    cdef double[::1] out = out_arr

    cdef Py_ssize_t i, j, nray = o.shape[0], ntri = t.shape[0]
    cdef double e1x, e1y, e1z, e2x, e2y, e2z, px, py, pz, det, inv
    cdef double tx, ty, tz, qx, qy, qz, u, vv, dist
    cdef double ox, oy, oz, dx, dy, dz, best
    cdef int a, b, c
    with nogil:
        for i in range(nray):
            ox = o[i, 0]
            oy = o[i, 1]
            oz = o[i, 2]
            dx = d[i, 0]
            dy = d[i, 1]
            dz = d[i, 2]
            best = INFINITY
            for j in range(ntri):
                if j == sk[i]:
                    continue
                a = t[j, 0]
                b = t[j, 1]
                c = t[j, 2]
                e1x = v[b, 0] - v[a, 0]
                e1y = v[b, 1] - v[a, 1]
                e1z = v[b, 2] - v[a, 2]
                e2x = v[c, 0] - v[a, 0]
                e2y = v[c, 1] - v[a, 1]
                e2z = v[c, 2] - v[a, 2]
                px = dy * e2z - dz * e2y
                py = dz * e2x - dx * e2z
                pz = dx * e2y - dy * e2x
                det = e1x * px + e1y * py + e1z * pz
                if fabs(det) <= 1e-14:
                    continue
                inv = 1.0 / det
                tx = ox - v[a, 0]
                ty = oy - v[a, 1]
                tz = oz - v[a, 2]
                u = (tx * px + ty * py + tz * pz) * inv
                if u < -1e-12:
                    continue
                qx = ty * e1z - tz * e1y
                qy = tz * e1x - tx * e1z
                qz = tx * e1y - ty * e1x
                vv = (qx * dx + qy * dy + qz * dz) * inv
                if vv < -1e-12 or u + vv > 1.0 + 1e-12:
                    continue
                dist = (e2x * qx + e2y * qy + e2z * qz) * inv
                if dist > t_min and dist < best:
                    best = dist
            out[i] = best
    return out_arr

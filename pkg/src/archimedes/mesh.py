"""Watertight triangle meshes for the solid catalog plus assembly models.

Two generators cover everything: a surface-of-revolution builder for the
circular kinds and a loft that stitches sampled cross-section rings along the
slicing axis.  Degenerate rings (cone apex, sphere poles, the cork ridge)
collapse onto shared vertices by exact-position welding, which is what keeps
the results watertight without any repair pass.  Multi-part models are merged
as multiple closed shells in one mesh; no boolean union is ever performed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .solids import SolidSpec

Vec3 = tuple[float, float, float]

#: triangles smaller than this (mm^2) are treated as degenerate
MIN_TRIANGLE_AREA = 1e-9

#: relative tolerance for declared sphere tangencies
TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class TriangleMesh:
    """Indexed triangle mesh; triangles wind counter-clockwise seen from outside."""

    vertices: np.ndarray  # (V, 3) float64, mm
    triangles: np.ndarray  # (T, 3) int32

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=np.float64))
        t = np.ascontiguousarray(np.asarray(self.triangles, dtype=np.int32))
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError(f"vertices must be (V, 3), got {v.shape}")
        if t.ndim != 2 or t.shape[1] != 3:
            raise ValueError(f"triangles must be (T, 3), got {t.shape}")
        if t.size and (t.min() < 0 or t.max() >= len(v)):
            raise ValueError("triangle index out of range")
        v.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    def corners(self) -> np.ndarray:
        """Per-triangle corner coordinates, shape (T, 3, 3)."""
        return self.vertices[self.triangles]

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        if not len(self.vertices):
            raise ValueError("empty mesh has no bounds")
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def translated(self, offset) -> "TriangleMesh":
        return TriangleMesh(self.vertices + np.asarray(offset, dtype=np.float64), self.triangles)

    def min_triangle_area(self) -> float:
        if not len(self.triangles):
            return math.inf
        c = self.corners()
        cross = np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])
        return float(0.5 * np.linalg.norm(cross, axis=1).min())


@dataclass(frozen=True)
class MeshStats:
    triangle_count: int
    signed_volume: float
    surface_area: float
    watertight: bool
    euler_characteristic: int


@dataclass(frozen=True)
class SpherePack:
    """Spheres plus the tangencies the construction promises."""

    spheres: tuple[tuple[Vec3, float], ...]
    tangency_graph: tuple[tuple[int, int], ...]

    def tangency_residual(self, i: int, j: int) -> float:
        """Relative residual of the declared tangency between spheres i and j.

        The smaller of the external (d = ri + rj) and internal (d = |ri - rj|)
        mismatch, relative to the larger radius.
        """
        (ci, ri), (cj, rj) = self.spheres[i], self.spheres[j]
        d = math.dist(ci, cj)
        external = abs(d - (ri + rj))
        internal = abs(d - abs(ri - rj))
        return min(external, internal) / max(ri, rj)

    def max_tangency_residual(self) -> float:
        return max(self.tangency_residual(i, j) for i, j in self.tangency_graph)

    def tangencies_ok(self, tol: float = TANGENCY_TOL) -> bool:
        """True iff every declared tangency holds within `tol` (relative)."""
        return self.max_tangency_residual() < tol


def signed_volume(mesh: TriangleMesh) -> float:
    """Sum of signed tetrahedron volumes det(v0, v1, v2)/6 over all triangles."""
    c = mesh.corners()
    return float(np.einsum("ij,ij->i", c[:, 0], np.cross(c[:, 1], c[:, 2])).sum() / 6.0)


def surface_area(mesh: TriangleMesh) -> float:
    c = mesh.corners()
    cross = np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])
    return float(0.5 * np.linalg.norm(cross, axis=1).sum())


def _directed_edges(triangles: np.ndarray) -> np.ndarray:
    e = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    return e.astype(np.int64)


def is_watertight(mesh: TriangleMesh) -> bool:
    """True iff every undirected edge is shared by exactly two triangles of
    opposite direction (the two-manifold closed-surface condition)."""
    t = mesh.triangles
    if not len(t):
        return False
    if (t[:, 0] == t[:, 1]).any() or (t[:, 1] == t[:, 2]).any() or (t[:, 2] == t[:, 0]).any():
        return False
    edges = _directed_edges(t)
    v = len(mesh.vertices)
    code = edges[:, 0] * v + edges[:, 1]
    code.sort()
    if len(np.unique(code)) != len(code):  # a directed edge repeats
        return False
    reverse = edges[:, 1] * v + edges[:, 0]
    reverse.sort()
    return bool(np.array_equal(code, reverse))


def euler_characteristic(mesh: TriangleMesh) -> int:
    t = mesh.triangles
    if not len(t):
        return 0
    v_used = len(np.unique(t))
    e = _directed_edges(t)
    undirected = np.unique(np.sort(e, axis=1), axis=0)
    return int(v_used - len(undirected) + len(t))


def mesh_stats(mesh: TriangleMesh) -> MeshStats:
    """Volume, area, watertightness and Euler characteristic in one pass."""
    return MeshStats(
        triangle_count=mesh.triangle_count,
        signed_volume=signed_volume(mesh),
        surface_area=surface_area(mesh),
        watertight=is_watertight(mesh),
        euler_characteristic=euler_characteristic(mesh),
    )


def shell_labels(mesh: TriangleMesh) -> np.ndarray:
    """Connected-component label per triangle (components joined by shared edges)."""
    t = mesh.triangles
    parent = list(range(len(t)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first_seen: dict[tuple[int, int], int] = {}
    for idx in range(len(t)):
        a, b, c = t[idx]
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            other = first_seen.setdefault(key, idx)
            if other != idx:
                ra, rb = find(idx), find(other)
                if ra != rb:
                    parent[ra] = rb
    labels = np.fromiter((find(i) for i in range(len(t))), dtype=np.int64, count=len(t))
    _, labels = np.unique(labels, return_inverse=True)
    return labels


def count_shells(mesh: TriangleMesh) -> int:
    if not len(mesh.triangles):
        return 0
    return int(shell_labels(mesh).max()) + 1


def merge_meshes(parts: list[TriangleMesh]) -> TriangleMesh:
    """Concatenate meshes into one multi-shell mesh (vertex indices offset)."""
    if not parts:
        raise ValueError("nothing to merge")
    verts, tris, offset = [], [], 0
    for p in parts:
        verts.append(p.vertices)
        tris.append(p.triangles + offset)
        offset += len(p.vertices)
    return TriangleMesh(np.vstack(verts), np.vstack(tris))


# ---------------------------------------------------------------------------
# generators


def _unit_circle(m: int) -> tuple[np.ndarray, np.ndarray]:
    """cos/sin tables at angles 2*pi*j/m with mirror symmetry enforced bitwise,
    so ring points that must coincide after a degenerate collapse weld exactly."""
    angles = 2.0 * np.pi * np.arange(m) / m
    c, s = np.cos(angles), np.sin(angles)
    c[0], s[0] = 1.0, 0.0
    for j in range(1, (m + 1) // 2):
        c[m - j] = c[j]
        s[m - j] = -s[j]
    if m % 2 == 0:
        c[m // 2], s[m // 2] = -1.0, 0.0
    return c, s


def _weld(points: np.ndarray, faces: list[np.ndarray]) -> TriangleMesh:
    """Merge exactly-coincident points, remap faces, drop collapsed triangles."""
    uniq, inverse = np.unique(points, axis=0, return_inverse=True)
    tri = inverse[np.vstack(faces)] if faces else np.empty((0, 3), dtype=np.int64)
    ok = (tri[:, 0] != tri[:, 1]) & (tri[:, 1] != tri[:, 2]) & (tri[:, 2] != tri[:, 0])
    return TriangleMesh(uniq, tri[ok])


def _oriented(mesh: TriangleMesh) -> TriangleMesh:
    """Flip winding if needed so the enclosed volume is positive."""
    if signed_volume(mesh) < 0.0:
        return TriangleMesh(mesh.vertices, mesh.triangles[:, ::-1])
    return mesh


def _ring_area(ring: np.ndarray) -> float:
    total = np.cross(ring, np.roll(ring, -1, axis=0)).sum(axis=0)
    return 0.5 * float(np.linalg.norm(total))


def _loft_mesh(rings: list[np.ndarray]) -> TriangleMesh:
    """Stitch equally sampled rings into a closed surface.

    End rings with positive enclosed area receive centroid fan caps; rings
    collapsed to a point or a segment close up through vertex welding.
    """
    stack = np.asarray(rings)  # (K+1, m, 3)
    nring, m, _ = stack.shape
    points = stack.reshape(-1, 3)
    ids = np.arange(nring * m).reshape(nring, m)
    rolled = np.roll(ids, -1, axis=1)

    a, b = ids[:-1].ravel(), rolled[:-1].ravel()
    c, d = rolled[1:].ravel(), ids[1:].ravel()
    faces = [
        np.column_stack([a, b, c]),
        np.column_stack([a, c, d]),
    ]

    scale2 = max(float(np.ptp(points, axis=0).max()) ** 2, 1.0)
    extra_points = [points]
    next_id = nring * m
    for ring_ids, ring_pts, first in ((ids[0], stack[0], True), (ids[-1], stack[-1], False)):
        if _ring_area(ring_pts) <= 1e-12 * scale2:
            continue
        centroid = ring_pts.mean(axis=0, keepdims=True)
        extra_points.append(centroid)
        nxt = np.roll(ring_ids, -1)
        if first:
            faces.append(np.column_stack([np.full(m, next_id), nxt, ring_ids]))
        else:
            faces.append(np.column_stack([np.full(m, next_id), ring_ids, nxt]))
        next_id += 1

    return _oriented(_weld(np.vstack(extra_points), faces))


def _revolve(profile: list[tuple[float, float]], m: int) -> TriangleMesh:
    """Revolve a closed (rho, z) polyline around the z axis.

    Profile points with rho == 0 become single pole vertices; a segment whose
    endpoints both sit on the axis contributes no surface.  The profile is
    traversed counter-clockwise in the (rho, z) half-plane.
    """
    cosj, sinj = _unit_circle(m)
    verts: list[np.ndarray] = []
    ids: list[object] = []
    count = 0
    for rho, z in profile:
        if rho == 0.0:
            verts.append(np.array([[0.0, 0.0, z]]))
            ids.append(count)
            count += 1
        else:
            verts.append(np.column_stack([rho * cosj, rho * sinj, np.full(m, z)]))
            ids.append(np.arange(count, count + m))
            count += m

    faces = []
    for k in range(len(profile)):
        a, b = ids[k], ids[(k + 1) % len(profile)]
        a_pole, b_pole = isinstance(a, int), isinstance(b, int)
        if a_pole and b_pole:
            continue
        if a_pole:
            nxt = np.roll(b, -1)
            faces.append(np.column_stack([np.full(m, a), nxt, b]))
        elif b_pole:
            nxt = np.roll(a, -1)
            faces.append(np.column_stack([np.full(m, b), a, nxt]))
        else:
            an, bn = np.roll(a, -1), np.roll(b, -1)
            faces.append(np.column_stack([a, an, bn]))
            faces.append(np.column_stack([a, bn, b]))

    tri = np.vstack(faces)
    ok = (tri[:, 0] != tri[:, 1]) & (tri[:, 1] != tri[:, 2]) & (tri[:, 2] != tri[:, 0])
    return _oriented(TriangleMesh(np.vstack(verts), tri[ok]))


def _polygon_ring(corners: np.ndarray, q: int) -> np.ndarray:
    """q points per edge along a closed 2D polygon, corners included exactly."""
    nxt = np.roll(corners, -1, axis=0)
    t = (np.arange(q) / q)[None, :, None]
    pts = corners[:, None, :] * (1.0 - t) + nxt[:, None, :] * t
    pts[:, 0, :] = corners  # keep corners bit-exact
    return pts.reshape(-1, 2)


def _lift(ring2d: np.ndarray, station: float, axis: str) -> np.ndarray:
    """Place a 2D ring at the station coordinate of the given world axis."""
    m = len(ring2d)
    col = np.full(m, station)
    if axis == "z":
        return np.column_stack([ring2d[:, 0], ring2d[:, 1], col])
    if axis == "y":  # ring coords are (x, z)
        return np.column_stack([ring2d[:, 0], col, ring2d[:, 1]])
    return np.column_stack([col, ring2d[:, 0], ring2d[:, 1]])  # axis == "x": (y, z)


def _half_angle_stations(k: int) -> np.ndarray:
    """sin-spaced station fractions in [0, 1] with exact endpoints."""
    theta = 0.5 * np.pi * np.arange(k + 1) / k
    f = np.sin(theta)
    f[0], f[-1] = 0.0, 1.0
    return f


def _tricylinder_ring(r: float, z: float, q: int) -> np.ndarray:
    """Boundary of (square of half-side s) ∩ (disc of radius r) at height z.

    Eight features walked counter-clockwise: four straight edge pieces of the
    square and four arcs of the circle; feature endpoints are generated once
    so coincident corners weld exactly when a feature degenerates.
    """
    s = math.sqrt(max(r * r - z * z, 0.0))
    c = min(abs(z), s)
    corners = [
        (s, -c), (s, c), (c, s), (-c, s), (-s, c), (-s, -c), (-c, -s), (c, -s),
    ]
    out = np.empty((8 * q, 2))
    t = np.arange(q) / q
    for f in range(8):
        p0 = np.array(corners[f])
        p1 = np.array(corners[(f + 1) % 8])
        seg = out[f * q : (f + 1) * q]
        if f % 2 == 0:  # straight piece of the square boundary
            seg[:] = p0 * (1.0 - t[:, None]) + p1 * t[:, None]
        elif c >= s:  # arcs vanish once the square corners reach the circle
            seg[:] = p0
        else:
            a0 = math.atan2(p0[1], p0[0])
            a1 = math.atan2(p1[1], p1[0])
            if a1 < a0:
                a1 += 2.0 * math.pi
            ang = a0 + (a1 - a0) * t
            seg[:, 0] = r * np.cos(ang)
            seg[:, 1] = r * np.sin(ang)
        seg[0] = p0  # feature endpoints exact
    return out


def _square_corners(half: float) -> np.ndarray:
    return np.array([(half, half), (-half, half), (-half, -half), (half, -half)])


def _ngon_corners(n: int, r: float) -> np.ndarray:
    c, s = _unit_circle(n)
    return np.column_stack([r * c, r * s])


def _loft_rings_for(spec: SolidSpec, slices: int, samples: int) -> list[np.ndarray]:
    kind = spec.kind
    p = spec.params
    rings: list[np.ndarray] = []

    if kind == "pyramid":
        half = 0.5 * math.sqrt(p["base_area"])
        h = p["h"]
        q = max(1, samples // 4)
        for i in range(slices + 1):
            f = 1.0 - i / slices
            rings.append(_lift(_polygon_ring(_square_corners(half * f), q), h * i / slices, "z"))
    elif kind in ("dome", "globe"):
        n, r = int(p["n"]), p["r"]
        q = max(1, samples // n)
        base = _ngon_corners(n, r)
        if kind == "dome":
            fracs = _half_angle_stations(slices)
            stations = [(r * f, math.sqrt(1.0 - f * f) if f < 1.0 else 0.0) for f in fracs]
            stations[-1] = (r, 0.0)
        else:
            fracs = _half_angle_stations(slices)
            down = [(-r * f, math.sqrt(1.0 - f * f)) for f in reversed(fracs[1:])]
            up = [(r * f, math.sqrt(1.0 - f * f)) for f in fracs]
            stations = down + up
            stations[0] = (-r, 0.0)
            stations[-1] = (r, 0.0)
        for z, scale in stations:
            rings.append(_lift(_polygon_ring(base * scale, q), z, "z"))
    elif kind == "bicylinder":
        r = p["r"]
        q = max(1, samples // 4)
        fracs = _half_angle_stations(slices)
        stations = [(-r * f, f) for f in reversed(fracs[1:])] + [(r * f, f) for f in fracs]
        for z, f in stations:
            s = r * math.sqrt(max(1.0 - f * f, 0.0)) if abs(f) < 1.0 else 0.0
            rings.append(_lift(_polygon_ring(_square_corners(s), q), z, "z"))
    elif kind == "tricylinder":
        r = p["r"]
        q = max(1, samples // 8)
        for i in range(slices + 1):
            z = -r + 2.0 * r * i / slices
            if i == 0:
                z = -r
            if i == slices:
                z = r
            rings.append(_lift(_tricylinder_ring(r, z, q), z, "z"))
    elif kind == "hoof":
        r, s = p["r"], p["s"]
        q = max(1, samples // 3)
        fracs = _half_angle_stations(slices)
        stations = [-r * f for f in reversed(fracs[1:])] + [r * f for f in fracs]
        for y in stations:
            w = math.sqrt(max(r * r - y * y, 0.0))
            tri = np.array([(0.0, 0.0), (w, 0.0), (w, s * w)])
            rings.append(_lift(_polygon_ring(tri, q), y, "y"))
    elif kind == "cork":
        r, h = p["r"], p["h"]
        cosj, sinj = _unit_circle(max(samples, 3))
        for i in range(slices + 1):
            z = h * i / slices
            g = 1.0 - i / slices
            ring = np.column_stack([r * cosj, (g * r) * sinj])
            rings.append(_lift(ring, z, "z"))
    else:
        raise ValueError(f"no loft path for kind {kind!r}")
    return rings


def _revolve_profile_for(spec: SolidSpec, slices: int) -> list[tuple[float, float]]:
    kind = spec.kind
    p = spec.params
    k = slices
    if kind == "sphere":
        r = p["r"]
        pts = [(0.0, -r)]
        pts += [(r * math.sin(math.pi * i / k), -r * math.cos(math.pi * i / k)) for i in range(1, k)]
        pts.append((0.0, r))
        return pts
    if kind == "hemisphere":
        r = p["r"]
        pts = [(0.0, 0.0)]
        pts += [
            (r * math.cos(0.5 * math.pi * i / k), r * math.sin(0.5 * math.pi * i / k))
            for i in range(k)
        ]
        pts.append((0.0, r))
        return pts
    if kind == "cylinder":
        r, h = p["r"], p["h"]
        return [(0.0, 0.0)] + [(r, h * i / k) for i in range(k + 1)] + [(0.0, h)]
    if kind == "cone":
        r, h = p["r"], p["h"]
        pts = [(0.0, 0.0)]
        pts += [(r * (1.0 - i / k), h * i / k) for i in range(k)]
        pts.append((0.0, h))
        return pts
    if kind == "cylinder_minus_cone":
        # the drilled cone's apex touches the base disc at the origin; give it
        # its own pole vertex so the pinch point stays vertex-manifold
        r = p["r"]
        pts = [(0.0, 0.0)]
        pts += [(r, r * i / k) for i in range(k + 1)]
        pts += [(r * (1.0 - i / k), r * (1.0 - i / k)) for i in range(1, k)]
        pts.append((0.0, 0.0))
        return pts
    if kind == "torus":
        R, a = p["R"], p["a"]
        cosj, sinj = _unit_circle(max(slices, 3))
        return [(R + a * cosj[j], a * sinj[j]) for j in range(len(cosj))]
    raise ValueError(f"no revolve path for kind {kind!r}")


_REVOLVE_KINDS = ("sphere", "hemisphere", "cylinder", "cone", "cylinder_minus_cone", "torus")


def tessellate(spec: SolidSpec, slices: int = 64, boundary_samples: int = 64) -> TriangleMesh:
    """Watertight mesh of a catalog solid.

    Circular kinds revolve an exact profile (UV grids for sphere and torus);
    the rest loft sampled cross-section rings along the slicing axis with
    `slices` stations and about `boundary_samples` points per ring.  Meshes
    are inscribed, so signed volume grows toward the exact volume with
    resolution.
    """
    if spec.kind == "steiner_pack":
        raise ValueError("steiner_pack is an assembly; use pack_mesh(steiner_chain(...))")
    if slices < 2:
        raise ValueError(f"slices must be >= 2, got {slices}")
    if boundary_samples < 3:
        raise ValueError(f"boundary_samples must be >= 3, got {boundary_samples}")
    if spec.kind in _REVOLVE_KINDS:
        return _revolve(_revolve_profile_for(spec, slices), boundary_samples)
    return _loft_mesh(_loft_rings_for(spec, slices, boundary_samples))


# ---------------------------------------------------------------------------
# assemblies


def _swept_box(sections: list[np.ndarray]) -> TriangleMesh:
    """Closed prismatic tube through a sequence of 4-point sections."""
    return _loft_mesh(sections)


def make_screw(
    r_shaft: float = 4.0,
    r_blade: float = 10.0,
    pitch: float = 20.0,
    turns: float = 3.0,
    resolution: int = 64,
    *,
    tube_inner: float | None = None,
    tube_wall: float = 2.0,
    blade_thickness: float | None = None,
) -> list[TriangleMesh]:
    """Water-screw model as two independently watertight parts.

    Returns [tube, rotor]: an open-ended pipe of the given wall thickness, and
    a shaft plus helical blade (two closed shells in one mesh).  The blade
    spans exactly turns*pitch along z.  Print-fitness of thin members is
    reported by printcheck, not enforced here.
    """
    if not 0 < r_shaft < r_blade:
        raise ValueError(f"need 0 < r_shaft < r_blade, got {r_shaft}, {r_blade}")
    if pitch <= 0 or turns <= 0:
        raise ValueError("pitch and turns must be positive")
    if tube_inner is None:
        tube_inner = r_blade + 1.0
    if r_blade >= tube_inner:
        raise ValueError(
            f"blade radius {r_blade} interferes with tube inner radius {tube_inner}"
        )
    if blade_thickness is None:
        blade_thickness = pitch / 8.0
    if blade_thickness <= 0 or tube_wall <= 0:
        raise ValueError("blade thickness and tube wall must be positive")
    if blade_thickness < 1.0 or tube_wall < 1.0:
        warnings.warn("member thinner than 1 mm; expect a printability warning")

    height = pitch * turns
    m = max(int(resolution), 8)
    ro = tube_inner + tube_wall
    tube = _revolve(
        [(tube_inner, 0.0), (ro, 0.0), (ro, height), (tube_inner, height)], m
    )

    shaft = _revolve(
        [(0.0, 0.0), (r_shaft, 0.0), (r_shaft, height), (0.0, height)], m
    )

    t = blade_thickness
    r0 = 0.7 * r_shaft  # embedded inside the shaft shell
    nseg = max(8, int(m * turns))
    sections = []
    for i in range(nseg + 1):
        theta = 2.0 * math.pi * turns * i / nseg
        zc = 0.5 * t + (height - t) * i / nseg
        cs, sn = math.cos(theta), math.sin(theta)
        corners = [(r0, zc - 0.5 * t), (r_blade, zc - 0.5 * t), (r_blade, zc + 0.5 * t), (r0, zc + 0.5 * t)]
        sections.append(np.array([(rho * cs, rho * sn, z) for rho, z in corners]))
    blade = _swept_box(sections)

    rotor = merge_meshes([shaft, blade])
    return [tube, rotor]


def _rotation_to(direction: np.ndarray) -> np.ndarray:
    """Rotation matrix taking +z to the given unit direction."""
    z = np.array([0.0, 0.0, 1.0])
    c = float(np.dot(z, direction))
    if c > 1.0 - 1e-12:
        return np.eye(3)
    if c < -1.0 + 1e-12:
        return np.diag([1.0, -1.0, -1.0])
    axis = np.cross(z, direction)
    s = np.linalg.norm(axis)
    axis = axis / s
    k = np.array(
        [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
    )
    return np.eye(3) + s * k + (1.0 - c) * (k @ k)


def strut_mesh(p: Vec3, q: Vec3, radius: float, sides: int = 24) -> TriangleMesh:
    """Closed cylinder from p to q (a breakaway connector)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    length = float(np.linalg.norm(q - p))
    if length == 0.0:
        raise ValueError("zero-length strut")
    if radius <= 0:
        raise ValueError(f"strut radius must be positive, got {radius}")
    cyl = _revolve([(0.0, 0.0), (radius, 0.0), (radius, length), (0.0, length)], sides)
    rot = _rotation_to((q - p) / length)
    return TriangleMesh(cyl.vertices @ rot.T + p, cyl.triangles)


def add_struts(
    parts: list[TriangleMesh],
    contacts: list[tuple[Vec3, Vec3]],
    strut_radius: float,
) -> TriangleMesh:
    """Merge parts and add one cylindrical connector per contact point pair.

    Struts are separate closed shells (STL allows several per file); the part
    meshes themselves are not modified.
    """
    if not contacts:
        raise ValueError("need at least one contact pair")
    meshes = list(parts)
    for p, q in contacts:
        meshes.append(strut_mesh(p, q, strut_radius))
    return merge_meshes(meshes)


# ---------------------------------------------------------------------------
# Steiner chains / sphere packs


def _mobius_circle(center: complex, radius: float, a: float) -> tuple[complex, float]:
    """Image of a circle under the unit-disc automorphism w -> (w - a)/(1 - a w).

    Decomposed as affine, inversion, affine; each step maps circles to
    circles exactly, so tangencies survive to rounding error.
    """
    if a == 0.0:
        return center, radius
    m = 1.0 - a * center
    s = a * radius
    d = abs(m) ** 2 - s * s
    inv_center = m.conjugate() / d
    inv_radius = s / abs(d)
    scale = (1.0 - a * a) / a
    return -1.0 / a + scale * inv_center, scale * inv_radius


def steiner_chain(n: int = 6, r_outer: float = 30.0, mobius_a: float = 0.0) -> SpherePack:
    """Chain of n spheres tangent to their neighbours and to two fixed spheres.

    The inner radius follows from the closure condition
    sin(pi/n) = (R - r)/(R + r); the planar circles are optionally pushed
    around by a disc automorphism (mobius_a in [0, 1)) and then lifted to
    spheres in z = 0.  Sphere 0 is the inner sphere, 1..n the chain, n+1 the
    outer boundary sphere.
    """
    if n < 3:
        raise ValueError(f"chain needs >= 3 spheres, got {n}")
    if not 0.0 <= mobius_a < 1.0:
        raise ValueError(f"mobius_a must be in [0, 1), got {mobius_a}")
    if r_outer <= 0:
        raise ValueError(f"outer radius must be positive, got {r_outer}")

    sin_t = math.sin(math.pi / n)
    r_inner = r_outer * (1.0 - sin_t) / (1.0 + sin_t)
    rho = 0.5 * (r_outer - r_inner)
    orbit = 0.5 * (r_outer + r_inner)

    circles = [(0j, r_inner / r_outer)]
    for k in range(n):
        ang = 2.0 * math.pi * k / n
        circles.append(((orbit / r_outer) * complex(math.cos(ang), math.sin(ang)), rho / r_outer))
    circles.append((0j, 1.0))

    spheres = []
    for center, radius in circles:
        c, r = _mobius_circle(center, radius, mobius_a)
        spheres.append(((r_outer * c.real, r_outer * c.imag, 0.0), r_outer * r))

    graph = []
    for k in range(n):
        graph.append((1 + k, 1 + (k + 1) % n))
        graph.append((0, 1 + k))
        graph.append((1 + k, n + 1))
    return SpherePack(spheres=tuple(spheres), tangency_graph=tuple(graph))


def pack_mesh(pack: SpherePack, resolution: int = 48) -> TriangleMesh:
    """One UV-sphere shell per pack sphere, merged; no boolean union."""
    if not pack.spheres:
        raise ValueError("empty sphere pack")
    shells = []
    for center, radius in pack.spheres:
        profile = [(0.0, -radius)]
        profile += [
            (radius * math.sin(math.pi * i / resolution), -radius * math.cos(math.pi * i / resolution))
            for i in range(1, resolution)
        ]
        profile.append((0.0, radius))
        shells.append(_revolve(profile, resolution).translated(center))
    return merge_meshes(shells)

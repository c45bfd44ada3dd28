"""Analytic catalog of classical solids.

Every solid carries its slice-area profile A along a fixed slicing axis, a
point-containment predicate, an axis-aligned bounding box and (where a closed
form exists) exact volume and surface area.  All lengths are millimeters,
areas mm^2, volumes mm^3.  Instances are immutable and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ._kernels import codes

Vec3 = tuple[float, float, float]
Bbox = tuple[Vec3, Vec3]


@dataclass(frozen=True)
class SolidSpec:
    """Analytic description of one solid.

    cross_section(t) is the total slice area at coordinate t along `axis`;
    it returns 0 outside `support`, so integrators never special-case the
    boundary.  contains(x, y, z) is the closed-region membership test.
    """

    kind: str
    params: dict[str, float]
    axis: str
    support: tuple[float, float]
    cross_section: Callable[[float], float]
    contains: Callable[[float, float, float], bool]
    bbox: Bbox
    exact_volume: float | None = None
    exact_surface: float | None = None
    # containment-kernel encoding used by the Monte Carlo fast path
    kernel: tuple[int, tuple[float, ...]] | None = field(default=None, repr=False)

    def bbox_volume(self) -> float:
        (x0, y0, z0), (x1, y1, z1) = self.bbox
        return (x1 - x0) * (y1 - y0) * (z1 - z0)


def _clamped(lo: float, hi: float, fn: Callable[[float], float]):
    def profile(t: float) -> float:
        if t < lo or t > hi:
            return 0.0
        return fn(t)

    return profile


def _positive(**dims: float) -> None:
    for name, value in dims.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")


def _ngon_area(n: int, r: float) -> float:
    return 0.5 * n * r * r * math.sin(2.0 * math.pi / n)


def _ngon_edge_normals(n: int) -> list[tuple[float, float]]:
    # vertices sit at angles 2*pi*k/n, so edge k has outward normal at (2k+1)*pi/n
    return [
        (math.cos((2 * k + 1) * math.pi / n), math.sin((2 * k + 1) * math.pi / n))
        for k in range(n)
    ]


def _in_ngon(x: float, y: float, normals, apothem: float) -> bool:
    for nx, ny in normals:
        if x * nx + y * ny > apothem:
            return False
    return True


def sphere(r: float = 1.0) -> SolidSpec:
    """Ball of radius r centered at the origin; sliced along z."""
    _positive(r=r)
    return SolidSpec(
        kind="sphere",
        params={"r": r},
        axis="z",
        support=(-r, r),
        cross_section=_clamped(-r, r, lambda z: math.pi * (r * r - z * z)),
        contains=lambda x, y, z: x * x + y * y + z * z <= r * r,
        bbox=((-r, -r, -r), (r, r, r)),
        exact_volume=4.0 * math.pi * r**3 / 3.0,
        exact_surface=4.0 * math.pi * r * r,
        kernel=(codes.SPHERE, (r,)),
    )


def hemisphere(r: float = 1.0) -> SolidSpec:
    """Upper half of sphere(r): the flat face sits in the plane z = 0."""
    _positive(r=r)
    return SolidSpec(
        kind="hemisphere",
        params={"r": r},
        axis="z",
        support=(0.0, r),
        cross_section=_clamped(0.0, r, lambda z: math.pi * (r * r - z * z)),
        contains=lambda x, y, z: z >= 0.0 and x * x + y * y + z * z <= r * r,
        bbox=((-r, -r, 0.0), (r, r, r)),
        exact_volume=2.0 * math.pi * r**3 / 3.0,
        exact_surface=3.0 * math.pi * r * r,
        kernel=(codes.HEMISPHERE, (r,)),
    )


def cylinder(r: float = 1.0, h: float = 1.0) -> SolidSpec:
    """Right circular cylinder, base in z = 0."""
    _positive(r=r, h=h)
    return SolidSpec(
        kind="cylinder",
        params={"r": r, "h": h},
        axis="z",
        support=(0.0, h),
        cross_section=_clamped(0.0, h, lambda z: math.pi * r * r),
        contains=lambda x, y, z: 0.0 <= z <= h and x * x + y * y <= r * r,
        bbox=((-r, -r, 0.0), (r, r, h)),
        exact_volume=math.pi * r * r * h,
        exact_surface=2.0 * math.pi * r * r + 2.0 * math.pi * r * h,
        kernel=(codes.CYLINDER, (r, h)),
    )


def cone(r: float = 1.0, h: float = 1.0) -> SolidSpec:
    """Right circular cone, base radius r in z = 0, apex at (0, 0, h)."""
    _positive(r=r, h=h)

    def area(z: float) -> float:
        f = 1.0 - z / h
        return math.pi * r * r * f * f

    def inside(x: float, y: float, z: float) -> bool:
        if not 0.0 <= z <= h:
            return False
        rz = r * (1.0 - z / h)
        return x * x + y * y <= rz * rz

    return SolidSpec(
        kind="cone",
        params={"r": r, "h": h},
        axis="z",
        support=(0.0, h),
        cross_section=_clamped(0.0, h, area),
        contains=inside,
        bbox=((-r, -r, 0.0), (r, r, h)),
        exact_volume=math.pi * r * r * h / 3.0,
        exact_surface=math.pi * r * (r + math.hypot(r, h)),
        kernel=(codes.CONE, (r, h)),
    )


def pyramid(base_area: float = 1.0, h: float = 1.0) -> SolidSpec:
    """Pyramid over a square base of the given area, apex at (0, 0, h).

    Cross-sections are similar copies of the base, so the area profile is
    base_area * (1 - z/h)^2 regardless of the base's actual shape; the square
    realization only matters to contains() and the mesher.
    """
    _positive(base_area=base_area, h=h)
    half = 0.5 * math.sqrt(base_area)

    def area(z: float) -> float:
        f = 1.0 - z / h
        return base_area * f * f

    def inside(x: float, y: float, z: float) -> bool:
        if not 0.0 <= z <= h:
            return False
        lim = half * (1.0 - z / h)
        return abs(x) <= lim and abs(y) <= lim

    return SolidSpec(
        kind="pyramid",
        params={"base_area": base_area, "h": h},
        axis="z",
        support=(0.0, h),
        cross_section=_clamped(0.0, h, area),
        contains=inside,
        bbox=((-half, -half, 0.0), (half, half, h)),
        exact_volume=base_area * h / 3.0,
        kernel=(codes.PYRAMID, (half, h)),
    )


def cylinder_minus_cone(r: float = 1.0) -> SolidSpec:
    """Cylinder of radius and height r with a cone drilled out, apex down.

    The removed cone has its apex at the origin and opens up to the top rim,
    leaving ring slices of area pi*(r^2 - z^2): the Cavalieri partner of the
    hemisphere.
    """
    _positive(r=r)

    def inside(x: float, y: float, z: float) -> bool:
        if not 0.0 <= z <= r:
            return False
        rho2 = x * x + y * y
        return z * z <= rho2 <= r * r

    return SolidSpec(
        kind="cylinder_minus_cone",
        params={"r": r},
        axis="z",
        support=(0.0, r),
        cross_section=_clamped(0.0, r, lambda z: math.pi * (r * r - z * z)),
        contains=inside,
        bbox=((-r, -r, 0.0), (r, r, r)),
        exact_volume=2.0 * math.pi * r**3 / 3.0,
        kernel=(codes.CYL_MINUS_CONE, (r,)),
    )


def _dome_like(kind: str, n: int, r: float, mirrored: bool) -> SolidSpec:
    if n != int(n) or int(n) < 3:
        raise ValueError(f"polygon side count must be an integer >= 3, got {n}")
    n = int(n)
    _positive(r=r)
    base_area = _ngon_area(n, r)
    apothem = r * math.cos(math.pi / n)
    normals = _ngon_edge_normals(n)
    lo = -r if mirrored else 0.0

    def area(z: float) -> float:
        zr = z / r
        return base_area * (1.0 - zr * zr)

    def inside(x: float, y: float, z: float) -> bool:
        if not lo <= z <= r:
            return False
        f = math.sqrt(max(1.0 - (z / r) * (z / r), 0.0))
        return _in_ngon(x, y, normals, f * apothem)

    corners_x = [r * math.cos(2.0 * math.pi * k / n) for k in range(n)]
    corners_y = [r * math.sin(2.0 * math.pi * k / n) for k in range(n)]
    box = (
        (min(corners_x), min(corners_y), lo),
        (max(corners_x), max(corners_y), r),
    )
    height = r - lo
    return SolidSpec(
        kind=kind,
        params={"n": n, "r": r},
        axis="z",
        support=(lo, r),
        cross_section=_clamped(lo, r, area),
        contains=inside,
        bbox=box,
        exact_volume=(2.0 / 3.0) * base_area * height,
        kernel=(codes.GLOBE if mirrored else codes.DOME, (float(n), r)),
    )


def dome(n: int = 6, r: float = 1.0) -> SolidSpec:
    """Solid over a regular n-gon base (circumradius r) whose slice at height
    z is the base scaled by sqrt(1 - (z/r)^2); volume is 2/3 of the prism of
    the same base and height."""
    return _dome_like("dome", n, r, mirrored=False)


def globe(n: int = 6, r: float = 1.0) -> SolidSpec:
    """dome(n, r) together with its mirror image through z = 0."""
    return _dome_like("globe", n, r, mirrored=True)


def bicylinder(r: float = 1.0) -> SolidSpec:
    """Intersection of two perpendicular cylinders of radius r (axes x and y).

    Slices perpendicular to z are squares of side 2*sqrt(r^2 - z^2).
    """
    _positive(r=r)

    def inside(x: float, y: float, z: float) -> bool:
        r2 = r * r
        return x * x + z * z <= r2 and y * y + z * z <= r2

    return SolidSpec(
        kind="bicylinder",
        params={"r": r},
        axis="z",
        support=(-r, r),
        cross_section=_clamped(-r, r, lambda z: 4.0 * (r * r - z * z)),
        contains=inside,
        bbox=((-r, -r, -r), (r, r, r)),
        exact_volume=16.0 * r**3 / 3.0,
        kernel=(codes.BICYLINDER, (r,)),
    )


def tricylinder(r: float = 1.0) -> SolidSpec:
    """Intersection of three mutually perpendicular cylinders of radius r.

    The z-slice is the intersection of a square (from the x- and y-axis
    cylinders) with the disc of radius r; closed-form volume 8*(2-sqrt(2))*r^3.
    """
    _positive(r=r)

    def area(z: float) -> float:
        s2 = r * r - z * z
        if s2 <= 0.0:
            return 0.0
        s = math.sqrt(s2)
        az = abs(z)
        if az >= s:  # square corners inside the disc
            return 4.0 * s2
        quadrant = s * az + 0.5 * r * r * (math.asin(s / r) - math.asin(az / r))
        return 4.0 * quadrant

    def inside(x: float, y: float, z: float) -> bool:
        r2 = r * r
        return x * x + y * y <= r2 and x * x + z * z <= r2 and y * y + z * z <= r2

    return SolidSpec(
        kind="tricylinder",
        params={"r": r},
        axis="z",
        support=(-r, r),
        cross_section=_clamped(-r, r, area),
        contains=inside,
        bbox=((-r, -r, -r), (r, r, r)),
        exact_volume=8.0 * (2.0 - math.sqrt(2.0)) * r**3,
        kernel=(codes.TRICYLINDER, (r,)),
    )


def hoof(r: float = 1.0, s: float = 2.0) -> SolidSpec:
    """Wedge cut from the half-cylinder x^2+y^2 <= r^2, x >= 0 by the planes
    z = 0 and z = s*x; sliced along y into similar right triangles.

    The slice at y has legs w and s*w with w = sqrt(r^2 - y^2), hence area
    (s/2)*(r^2 - y^2) and volume (2/3)*s*r^3 (= 4/3 for r=1, s=2).
    """
    _positive(r=r, s=s)

    def inside(x: float, y: float, z: float) -> bool:
        return x >= 0.0 and x * x + y * y <= r * r and 0.0 <= z <= s * x

    return SolidSpec(
        kind="hoof",
        params={"r": r, "s": s},
        axis="y",
        support=(-r, r),
        cross_section=_clamped(-r, r, lambda y: 0.5 * s * (r * r - y * y)),
        contains=inside,
        bbox=((0.0, -r, 0.0), (r, r, s * r)),
        exact_volume=(2.0 / 3.0) * s * r**3,
        kernel=(codes.HOOF, (r, s)),
    )


def cork(r: float = 1.0, h: float = 1.0) -> SolidSpec:
    """Cylinder of radius r and height h sharpened to a ridge along x.

    Slices perpendicular to the ridge are triangles standing on the chord at
    height h, so each slice is half of the corresponding cylinder rectangle
    and the volume is pi*r^2*h/2.  Viewed along z, y and x the outline is a
    circle, a triangle and a rectangle (a square when h = 2r).
    """
    _positive(r=r, h=h)

    def inside(x: float, y: float, z: float) -> bool:
        if not 0.0 <= z <= h or abs(x) > r:
            return False
        g = 1.0 - z / h
        return y * y <= g * g * max(r * r - x * x, 0.0)

    return SolidSpec(
        kind="cork",
        params={"r": r, "h": h},
        axis="x",
        support=(-r, r),
        cross_section=_clamped(-r, r, lambda x: h * math.sqrt(max(r * r - x * x, 0.0))),
        contains=inside,
        bbox=((-r, -r, 0.0), (r, r, h)),
        exact_volume=0.5 * math.pi * r * r * h,
        kernel=(codes.CORK, (r, h)),
    )


def torus(R: float = 3.0, a: float = 1.0) -> SolidSpec:
    """Solid torus: disc of radius a revolved at distance R > a from the z axis."""
    _positive(R=R, a=a)
    if not R > a:
        raise ValueError(f"torus needs R > a, got R={R}, a={a}")

    def area(z: float) -> float:
        w2 = a * a - z * z
        if w2 <= 0.0:
            return 0.0
        return 4.0 * math.pi * R * math.sqrt(w2)

    def inside(x: float, y: float, z: float) -> bool:
        d = math.hypot(x, y) - R
        return d * d + z * z <= a * a

    return SolidSpec(
        kind="torus",
        params={"R": R, "a": a},
        axis="z",
        support=(-a, a),
        cross_section=_clamped(-a, a, area),
        contains=inside,
        bbox=((-(R + a), -(R + a), -a), (R + a, R + a, a)),
        exact_volume=2.0 * math.pi**2 * R * a * a,
        exact_surface=4.0 * math.pi**2 * R * a,
        kernel=(codes.TORUS, (R, a)),
    )


def steiner_pack(n: int = 6, mobius: float = 0.0, r_outer: float = 30.0) -> SolidSpec:
    """Soddy-style sphere pack: a Steiner chain of n spheres around an inner
    sphere, inside an outer boundary sphere, optionally skewed by a Mobius
    transform of the plane.

    The solid material is the union of the inner and chain spheres (disjoint
    interiors, tangent only); the outer sphere is an enclosure shell, so it
    contributes to the bounding box but not to containment.  exact_volume is
    left unset: the pack is an assembly of shells, not a single body.
    """
    from .mesh import steiner_chain  # deferred: mesh imports solids

    pack = steiner_chain(n, r_outer=r_outer, mobius_a=mobius)
    material = pack.spheres[:-1]  # all but the outer boundary sphere
    flat: list[float] = [float(len(material))]
    for (cx, cy, cz), r in material:
        flat.extend((cx, cy, cz, r))

    def area(z: float) -> float:
        total = 0.0
        for (cx, cy, cz), r in material:
            w2 = r * r - (z - cz) * (z - cz)
            if w2 > 0.0:
                total += math.pi * w2
        return total

    def inside(x: float, y: float, z: float) -> bool:
        for (cx, cy, cz), r in material:
            dx, dy, dz = x - cx, y - cy, z - cz
            if dx * dx + dy * dy + dz * dz <= r * r:
                return True
        return False

    zmax = max(r for _, r in material)
    return SolidSpec(
        kind="steiner_pack",
        params={"n": float(n), "mobius": mobius, "r_outer": r_outer},
        axis="z",
        support=(-zmax, zmax),
        cross_section=_clamped(-zmax, zmax, area),
        contains=inside,
        bbox=((-r_outer, -r_outer, -zmax), (r_outer, r_outer, zmax)),
        kernel=(codes.SPHERE_UNION, tuple(flat)),
    )


CONSTRUCTORS: dict[str, Callable[..., SolidSpec]] = {
    "sphere": sphere,
    "hemisphere": hemisphere,
    "cylinder": cylinder,
    "cone": cone,
    "pyramid": pyramid,
    "cylinder_minus_cone": cylinder_minus_cone,
    "dome": dome,
    "globe": globe,
    "bicylinder": bicylinder,
    "tricylinder": tricylinder,
    "hoof": hoof,
    "cork": cork,
    "torus": torus,
    "steiner_pack": steiner_pack,
}

#: kinds whose parameters are all lengths (volume scales with the cube)
LENGTH_ONLY_KINDS = (
    "sphere",
    "hemisphere",
    "cylinder",
    "cone",
    "cylinder_minus_cone",
    "bicylinder",
    "tricylinder",
    "cork",
    "torus",
)


def param_schema(kind: str) -> dict[str, float]:
    """Parameter names and default values for a catalog kind."""
    import inspect

    ctor = CONSTRUCTORS.get(kind)
    if ctor is None:
        raise ValueError(f"unknown solid kind {kind!r}")
    return {
        name: p.default for name, p in inspect.signature(ctor).parameters.items()
    }


def make_solid(kind: str, **params: float) -> SolidSpec:
    """Build a catalog solid by kind name, e.g. make_solid('sphere', r=2)."""
    ctor = CONSTRUCTORS.get(kind)
    if ctor is None:
        known = ", ".join(sorted(CONSTRUCTORS))
        raise ValueError(f"unknown solid kind {kind!r} (known: {known})")
    schema = param_schema(kind)
    bad = set(params) - set(schema)
    if bad:
        raise ValueError(
            f"{kind} does not take parameter(s) {sorted(bad)}; expects {sorted(schema)}"
        )
    if kind in ("dome", "globe", "steiner_pack") and "n" in params:
        params = dict(params)
        params["n"] = int(params["n"])
    return ctor(**params)


def cross_section_area(spec: SolidSpec, t: float) -> float:
    """Slice area of spec at coordinate t along its slicing axis (0 outside)."""
    return spec.cross_section(t)

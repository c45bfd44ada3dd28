"""Slice sums, certified bounds and comparison oracles for solid volumes.

The headline rule is the equal-spacing right-endpoint sum (the historical
scheme), kept deliberately instead of a midpoint rule so convergence-order
tests reflect it.  Monte Carlo uses a counter-based generator (Philox), so a
seed fully determines the stream and estimates are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .solids import SolidSpec

Profile = Callable[[float], float]

#: points drawn per Monte Carlo batch; chunking does not change the stream
_MC_CHUNK = 1 << 20

#: supports must match in length to within this before Cavalieri comparison
SUPPORT_TOL = 1e-9


@dataclass(frozen=True)
class BoundPair:
    """Certified lower/upper volume bracket from n probed slices."""

    lower: float
    upper: float
    n: int

    @property
    def gap(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class PolygonSandwich:
    """Inscribed/circumscribed regular n-gon bounds around a circle.

    inner/outer follow the classical n*r*sin(pi/n) <= n*r*tan(pi/n) squeeze
    (they bracket pi*r, half the circumference); the area bounds are r times
    the circumference bounds.
    """

    n: int
    r: float
    inner_circumference: float
    outer_circumference: float
    inner_area_bound: float
    outer_area_bound: float

    @property
    def gap(self) -> float:
        return self.outer_circumference - self.inner_circumference


def archimedes_sum(profile: Profile, interval: tuple[float, float], n: int) -> float:
    """Right-endpoint equal-spacing sum of profile over [a, b] with n slices."""
    if n < 1:
        raise ValueError(f"slice count must be >= 1, got {n}")
    a, b = interval
    h = (b - a) / n
    values = [profile(a + k * h) for k in range(1, n)]
    values.append(profile(b))  # a + n*h can overshoot b by an ulp; sample b itself
    return h * math.fsum(values)


def riemann_bounds(
    profile: Profile,
    interval: tuple[float, float],
    n: int,
    probes_per_cell: int = 8,
) -> BoundPair:
    """Per-cell min/max probed bracket of the integral.

    Probes include both cell endpoints, so for profiles monotone on each cell
    the bracket certifies lower <= integral <= upper; lower <= upper always.
    """
    if n < 1:
        raise ValueError(f"cell count must be >= 1, got {n}")
    if probes_per_cell < 2:
        raise ValueError(f"need >= 2 probes per cell, got {probes_per_cell}")
    a, b = interval
    h = (b - a) / n
    lows, highs = [], []
    for i in range(n):
        x0 = a + i * h
        x1 = b if i == n - 1 else a + (i + 1) * h  # keep cell ends on the interval
        step = (x1 - x0) / (probes_per_cell - 1)
        values = [profile(x0 + j * step) for j in range(probes_per_cell - 1)]
        values.append(profile(x1))
        lows.append(min(values))
        highs.append(max(values))
    return BoundPair(lower=h * math.fsum(lows), upper=h * math.fsum(highs), n=n)


def polygon_sandwich(n: int, r: float = 1.0) -> PolygonSandwich:
    """Classical polygon squeeze for the circle of radius r."""
    if n < 3:
        raise ValueError(f"polygon needs >= 3 sides, got {n}")
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    inner = n * r * math.sin(math.pi / n)
    outer = n * r * math.tan(math.pi / n)
    return PolygonSandwich(
        n=n,
        r=r,
        inner_circumference=inner,
        outer_circumference=outer,
        inner_area_bound=r * inner,
        outer_area_bound=r * outer,
    )


def disc_area(r: float, circumference: float) -> float:
    """Disc area as half the circumference times the radius."""
    if r < 0 or circumference < 0:
        raise ValueError("radius and circumference must be nonnegative")
    return 0.5 * r * circumference


def cone_volume(base_area: float, h: float) -> float:
    """Cone/pyramid volume base_area * h / 3."""
    return base_area * h / 3.0


def sphere_volume_from_surface(r: float, surface: float) -> float:
    """Sphere volume surface * r / 3 (summing apex-at-center tetrahedra)."""
    return surface * r / 3.0


def cavalieri_compare(a: SolidSpec, b: SolidSpec, samples: int = 10_000) -> float:
    """Max slice-area mismatch after translating both supports to [0, L].

    Returns max_t |A_a(lo_a + t) - A_b(lo_b + t)| over `samples` stations;
    0 certifies (numerically) equal volumes.  Supports of different lengths
    are not comparable and raise.
    """
    if samples < 2:
        raise ValueError(f"need >= 2 samples, got {samples}")
    la = a.support[1] - a.support[0]
    lb = b.support[1] - b.support[0]
    if abs(la - lb) > SUPPORT_TOL:
        raise ValueError(
            f"supports not comparable: lengths {la} vs {lb} differ by more than {SUPPORT_TOL}"
        )
    worst = 0.0
    for k in range(samples):
        if k == samples - 1:  # land the final station exactly on both ends
            za, zb = a.support[1], b.support[1]
        else:
            t = la * k / (samples - 1)
            za, zb = a.support[0] + t, b.support[0] + t
        worst = max(worst, abs(a.cross_section(za) - b.cross_section(zb)))
    return worst


def pappus_volume(region_area: float, centroid_distance: float) -> float:
    """Volume of revolution: 2*pi * centroid distance * region area."""
    if region_area < 0:
        raise ValueError(f"region area must be nonnegative, got {region_area}")
    if centroid_distance <= 0:
        raise ValueError(f"centroid distance must be positive, got {centroid_distance}")
    return 2.0 * math.pi * centroid_distance * region_area


def monte_carlo_volume(
    spec: SolidSpec, samples: int, seed: int = 0
) -> tuple[float, float]:
    """Hit-or-miss volume estimate over the solid's bounding box.

    Returns (estimate, standard error); identical inputs give identical
    output on every run and backend.  The point stream is Philox(seed), drawn
    in fixed-size batches.
    """
    if samples < 1:
        raise ValueError(f"need >= 1 samples, got {samples}")
    (x0, y0, z0), (x1, y1, z1) = spec.bbox
    box_volume = spec.bbox_volume()
    lo = np.array([x0, y0, z0])
    scale = np.array([x1 - x0, y1 - y0, z1 - z0])
    rng = np.random.Generator(np.random.Philox(key=seed))
    hits = 0
    remaining = samples
    while remaining > 0:
        m = min(remaining, _MC_CHUNK)
        pts = lo + scale * rng.random((m, 3))
        if spec.kernel is not None:
            kind, params = spec.kernel
            hits += _kernels.contains_count(kind, np.asarray(params), pts)
        else:
            hits += sum(1 for x, y, z in pts if spec.contains(x, y, z))
        remaining -= m
    p = hits / samples
    estimate = box_volume * p
    std_error = box_volume * math.sqrt(p * (1.0 - p) / samples)
    return estimate, std_error

"""Printability validation against a profile of printer limits.

Wall thickness is estimated by casting rays inward along facet normals and
taking the nearest opposing surface; this is cheap, deterministic and
adequate for catalog shapes, but tends to underestimate near high curvature.
Cost uses enclosed material volume (inner shells subtract), so hollowed
models come out cheaper automatically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .mesh import TriangleMesh, mesh_stats, shell_labels

#: rays starting closer than this (mm) to a surface do not count as walls
_RAY_T_MIN = 1e-6


@dataclass(frozen=True)
class PrintProfile:
    """Printer/material limits and the cost model."""

    min_wall_mm: float = 1.0
    strict_wall_mm: float = 3.0
    min_strut_radius_mm: float = 1.0
    max_bbox_mm: tuple[float, float, float] = (140.0, 140.0, 140.0)
    cost_base: float = 0.0
    cost_per_cm3: float = 1.0

    def __post_init__(self):
        if not 0 < self.min_wall_mm <= self.strict_wall_mm:
            raise ValueError("need 0 < min_wall_mm <= strict_wall_mm")
        if self.min_strut_radius_mm <= 0 or any(b <= 0 for b in self.max_bbox_mm):
            raise ValueError("strut radius and bbox limits must be positive")


@dataclass(frozen=True)
class PrintReport:
    watertight: bool
    min_wall_estimate_mm: float
    thin_regions: tuple[tuple[float, float, float], ...]
    bbox_ok: bool
    shell_count: int
    est_material_cm3: float
    est_cost: float
    verdict: str  # pass | warn | fail

    def to_json(self) -> str:
        wall = self.min_wall_estimate_mm
        return json.dumps(
            {
                "watertight": self.watertight,
                "minWallMm": None if math.isinf(wall) else wall,
                "bboxOk": self.bbox_ok,
                "shellCount": self.shell_count,
                "materialCm3": self.est_material_cm3,
                "cost": self.est_cost,
                "verdict": self.verdict,
            },
            indent=2,
        )


def _sample_indices(count: int, k: int) -> np.ndarray:
    if k >= count:
        return np.arange(count)
    return np.unique(np.linspace(0, count - 1, k).round().astype(np.int64))


def wall_estimate(mesh: TriangleMesh, k_per_shell: int | None = None):
    """(min wall thickness, probed origin points below any threshold caller set).

    Casts k = max(64, T/50) rays per shell from facet centroids along the
    inward normal and records the nearest opposing intersection.
    """
    corners = mesh.corners()
    normals = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    lengths = np.linalg.norm(normals, axis=1)
    labels = shell_labels(mesh)

    origins, dirs, skips = [], [], []
    for shell in range(labels.max() + 1):
        tri_idx = np.flatnonzero(labels == shell)
        k = k_per_shell if k_per_shell is not None else max(64, len(tri_idx) // 50)
        chosen = tri_idx[_sample_indices(len(tri_idx), k)]
        ok = lengths[chosen] > 0.0
        chosen = chosen[ok]
        origins.append(corners[chosen].mean(axis=1))
        dirs.append(-normals[chosen] / lengths[chosen, None])
        skips.append(chosen)

    origins = np.vstack(origins)
    dirs = np.vstack(dirs)
    skips = np.concatenate(skips).astype(np.int32)
    hits = _kernels.ray_nearest_hits(
        np.ascontiguousarray(mesh.vertices),
        np.ascontiguousarray(mesh.triangles, dtype=np.int32),
        np.ascontiguousarray(origins),
        np.ascontiguousarray(dirs),
        skips,
        _RAY_T_MIN,
    )
    return hits, origins


def validate(mesh: TriangleMesh, profile: PrintProfile = PrintProfile()) -> PrintReport:
    """Printability report for one mesh under the given profile.

    verdict is fail iff the mesh is not watertight or exceeds the build box,
    warn iff the estimated minimum wall is thinner than the profile minimum,
    pass otherwise.  Deterministic for a fixed mesh and profile.
    """
    if mesh.triangle_count == 0:
        raise ValueError("cannot validate an empty mesh")
    stats = mesh_stats(mesh)
    lo, hi = mesh.bounds()
    extent = hi - lo
    bbox_ok = bool(np.all(extent <= np.asarray(profile.max_bbox_mm)))

    hits, origins = wall_estimate(mesh)
    finite = hits[np.isfinite(hits)]
    min_wall = float(finite.min()) if len(finite) else math.inf
    thin = origins[hits < profile.min_wall_mm]

    material_cm3 = stats.signed_volume / 1000.0
    cost = profile.cost_base + profile.cost_per_cm3 * material_cm3

    if not stats.watertight or not bbox_ok:
        verdict = "fail"
    elif min_wall < profile.min_wall_mm:
        verdict = "warn"
    else:
        verdict = "pass"
    return PrintReport(
        watertight=stats.watertight,
        min_wall_estimate_mm=min_wall,
        thin_regions=tuple(map(tuple, thin)),
        bbox_ok=bbox_ok,
        shell_count=int(shell_labels(mesh).max()) + 1,
        est_material_cm3=material_cm3,
        est_cost=cost,
        verdict=verdict,
    )


def check_struts(
    mesh_parts: list[TriangleMesh],
    strut_radii: list[float],
    profile: PrintProfile = PrintProfile(),
) -> list[str]:
    """pass/warn per strut: connectors thinner than the profile minimum break."""
    return [
        "pass" if r >= profile.min_strut_radius_mm else "warn" for r in strut_radii
    ]

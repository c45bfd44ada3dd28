"""Classical solids toolkit: exhaustion-method volume computation with
certified bounds, watertight mesh generation, bit-exact STL I/O and 3D-print
validation."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .exhaustion import (
    BoundPair,
    PolygonSandwich,
    archimedes_sum,
    cavalieri_compare,
    cone_volume,
    disc_area,
    monte_carlo_volume,
    pappus_volume,
    polygon_sandwich,
    riemann_bounds,
    sphere_volume_from_surface,
)
from .mesh import (
    MeshStats,
    SpherePack,
    TriangleMesh,
    add_struts,
    count_shells,
    make_screw,
    mesh_stats,
    pack_mesh,
    steiner_chain,
    tessellate,
)
from .printcheck import PrintProfile, PrintReport, check_struts, validate
from .solids import CONSTRUCTORS, SolidSpec, cross_section_area, make_solid
from .stl_io import (
    StlDocument,
    StlFormatError,
    read_stl,
    scale_mesh,
    write_ascii,
    write_binary,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundPair",
    "CONSTRUCTORS",
    "KERNEL_BACKEND",
    "MeshStats",
    "PolygonSandwich",
    "PrintProfile",
    "PrintReport",
    "SolidSpec",
    "SpherePack",
    "StlDocument",
    "StlFormatError",
    "TriangleMesh",
    "add_struts",
    "archimedes_sum",
    "cavalieri_compare",
    "cone_volume",
    "count_shells",
    "cross_section_area",
    "disc_area",
    "make_screw",
    "make_solid",
    "mesh_stats",
    "monte_carlo_volume",
    "pack_mesh",
    "pappus_volume",
    "polygon_sandwich",
    "read_stl",
    "riemann_bounds",
    "scale_mesh",
    "sphere_volume_from_surface",
    "steiner_chain",
    "tessellate",
    "validate",
    "write_ascii",
    "write_binary",
]

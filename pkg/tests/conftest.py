import numpy as np

from archimedes.mesh import TriangleMesh

_BOX_TRIANGLES = np.array(
    [
        [0, 1, 3], [0, 3, 2], [4, 6, 7], [4, 7, 5], [0, 4, 5], [0, 5, 1],
        [2, 3, 7], [2, 7, 6], [0, 2, 6], [0, 6, 4], [1, 5, 7], [1, 7, 3],
    ]
)


def make_box(side=1.0, center=(0.0, 0.0, 0.0), flip=False):
    """Axis-aligned cube mesh (12 outward triangles) centered at `center`."""
    h = side / 2.0
    corners = np.array(
        [[x, y, z] for x in (-h, h) for y in (-h, h) for z in (-h, h)]
    ) + np.asarray(center)
    tris = _BOX_TRIANGLES[:, ::-1] if flip else _BOX_TRIANGLES
    return TriangleMesh(corners, tris)

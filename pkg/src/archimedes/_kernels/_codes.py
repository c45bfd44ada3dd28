"""Integer codes identifying containment kernels.

Shared by the Cython and numpy backends; both must evaluate the same float64
expressions so that hit counts are bit-identical across backends.
"""

SPHERE = 0
HEMISPHERE = 1
CYLINDER = 2
CONE = 3
PYRAMID = 4
CYL_MINUS_CONE = 5
DOME = 6
GLOBE = 7
BICYLINDER = 8
TRICYLINDER = 9
HOOF = 10
CORK = 11
TORUS = 12
SPHERE_UNION = 13

"""Hot numeric kernels, dispatched to numba or numpy at import time.

``BACKEND`` names the active path. Both implementations are importable
directly (``_kernels_numpy`` always, ``_kernels_numba`` when numba is
installed) so they can be checked against each other.
"""

from . import _kernels_numpy
from ._accel import USE_NUMBA

if USE_NUMBA:
    from . import _kernels_numba as _impl
    BACKEND = "numba"
else:
    _impl = _kernels_numpy
    BACKEND = "numpy"

map_points = _impl.map_points
weighted_sums = _impl.weighted_sums
radial_distance = _impl.radial_distance
gaussian = _impl.gaussian
heaviside = _impl.heaviside
line_distance = _impl.line_distance
polyline_distance = _impl.polyline_distance
parabola_distance = _impl.parabola_distance

__all__ = [
    "BACKEND",
    "map_points",
    "weighted_sums",
    "radial_distance",
    "gaussian",
    "heaviside",
    "line_distance",
    "polyline_distance",
    "parabola_distance",
]

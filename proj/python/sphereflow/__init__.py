"""Stationary flows on the unit sphere: the antipodal point-vortex solution,
spectral and finite-difference operators, verification checks and a
spectral vorticity integrator."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

"""Exact and Monte Carlo experiments for the Pollard rho walk on Z_p."""

from ._rholab import *  # noqa: F401,F403
from ._rholab import __version__  # noqa: F401

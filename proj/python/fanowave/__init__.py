"""Few-photon transport in Fano-resonance waveguide geometries."""

from ._fanowave import *  # noqa: F401,F403
from ._fanowave import __version__  # noqa: F401

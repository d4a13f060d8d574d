"""Few-photon scattering observables for a resonator with a direct pathway."""

from ._core import *  # noqa: F401,F403
from ._core import chi_infinite  # noqa: F401

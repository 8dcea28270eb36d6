"""Entanglement projected entropy for mixed fermionic Gaussian states.

Thin Python surface over the C++ core: covariance builders for the chain,
SSH, and pi-flux models, the projected entropy in its channel and trace
forms, the purification oracle, and the scan drivers.
"""

from pyepe._core import *  # noqa: F401,F403
from pyepe._core import __version__  # noqa: F401

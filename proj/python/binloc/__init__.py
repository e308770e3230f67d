"""Source localisation from binary detections.

Thin wrapper over the C++ core: detection models, the discretised Bayesian
estimator, KL diagnostics, Fisher-information geometry design, the
closed-loop simulator, and the Monte Carlo benchmark harness.
"""

from ._binloc import *  # noqa: F401,F403
from ._binloc import __version__  # noqa: F401

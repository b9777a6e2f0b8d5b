"""Frequency-resolved one- and two-photon correlations of resonance fluorescence."""

try:
    from ._fresco import *  # noqa: F401,F403  (wheel layout)
    from ._fresco import __doc__  # noqa: F401
except ImportError:
    from _fresco import *  # noqa: F401,F403  (in-tree build)
    from _fresco import __doc__  # noqa: F401

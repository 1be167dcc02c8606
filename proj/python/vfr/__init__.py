"""Face retrieval toolkit: HNSW search, detector geometry and image preparation."""

from ._vfr import *  # noqa: F401,F403
from ._vfr import __doc__  # noqa: F401

__version__ = "0.1.0"

"""Vector space retrieval with group actions on term space.

Submodules: :mod:`gvsm.linalg` (dense kernels), :mod:`gvsm.vsm`
(tf-idf, cosine ranking), :mod:`gvsm.groups` (validated group elements
and their actions), :mod:`gvsm.dual` (functionals, dual representation),
:mod:`gvsm.io` (file formats) and :mod:`gvsm.cli`.
"""
from gvsm._accel import NUMBA_ENABLED
from gvsm.errors import GVSMError

__version__ = "0.1.0"

__all__ = ["GVSMError", "NUMBA_ENABLED", "__version__"]

"""JIT switch for the numeric kernels.

Set ``GVSM_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
The same switch is taken when numba is not importable.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
NUMBA_ENABLED = HAVE_NUMBA and (
    os.environ.get("GVSM_DISABLE_NUMBA", "").strip().lower() in _FALSY
)


def jit(func):
    """Compile ``func`` in nopython mode if numba is present, else return it."""
    if not HAVE_NUMBA:
        return func
    return _numba.njit(cache=True)(func)

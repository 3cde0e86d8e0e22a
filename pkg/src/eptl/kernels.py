"""Backend selection for the F_p kernels: compiled extension if importable, numpy otherwise."""
from __future__ import annotations

from . import _kernels_py as fallback

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

BACKEND = "cython" if compiled is not None else "numpy"
_impl = compiled if compiled is not None else fallback


def use_backend(name: str) -> None:
    """Switch implementation at runtime ("cython" or "numpy")."""
    global _impl, BACKEND
    if name == "cython":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = compiled
    elif name == "numpy":
        _impl = fallback
    else:
        raise ValueError(name)
    BACKEND = name


# numpy's blocked int64 products beat the compiled triple loop beyond this size
MATMUL_CUTOVER = 48


def matmul_mod(A, B, p):
    if _impl is compiled and min(A.shape[0], A.shape[1], B.shape[1]) > MATMUL_CUTOVER:
        return fallback.matmul_mod(A, B, p)
    return _impl.matmul_mod(A, B, p)


def rref_mod(A, p, ncols=None):
    return _impl.rref_mod(A, p, ncols)


def rank_mod(A, p):
    return _impl.rank_mod(A, p)

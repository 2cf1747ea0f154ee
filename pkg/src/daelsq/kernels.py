"""Kernel dispatch: compiled core when available, numpy fallback otherwise.

Set DAELSQ_PURE_PYTHON=1 to force the fallback.
"""
import os

if os.environ.get("DAELSQ_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = "cython" if _impl.__name__.endswith("._kernels") else "python"

legendre_table = _impl.legendre_table
chebyshev_table = _impl.chebyshev_table
clenshaw_legendre = _impl.clenshaw_legendre
clenshaw_chebyshev = _impl.clenshaw_chebyshev
lebesgue_function = _impl.lebesgue_function

__all__ = [
    "BACKEND",
    "legendre_table",
    "chebyshev_table",
    "clenshaw_legendre",
    "clenshaw_chebyshev",
    "lebesgue_function",
]

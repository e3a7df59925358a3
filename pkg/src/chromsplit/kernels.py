"""Kernel selection: the compiled extension when importable, else pure Python."""

from . import _kernels_py

try:
    from . import _kernels as _impl
except ImportError:  # extension not built
    _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

convolve = _impl.convolve
horner = _impl.horner
add_into = _impl.add_into

"""Backend switch for the numeric kernels.

Set ``SUPERSTRING_NO_JIT=1`` to run every kernel through its pure-numpy
implementation instead of the numba-compiled loops.  When numba is not
importable the numpy path is used regardless of the flag.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("SUPERSTRING_NO_JIT", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_JIT = HAVE_NUMBA and not _DISABLED


def njit(func=None, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise.

    Kernels decorated with this are always compiled if numba is installed,
    so the benchmark and the parity tests can exercise them even when the
    env flag routes production calls to numpy.
    """
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        if func is not None:
            return _numba_njit(**kwargs)(func)
        return _numba_njit(**kwargs)
    if func is not None:
        return func
    return lambda f: f


def backend() -> str:
    return "numba" if USE_JIT else "numpy"


def pick(jit_impl, numpy_impl):
    """Return the implementation selected by the env flag."""
    return jit_impl if USE_JIT else numpy_impl

"""Kernel backend selection.

The compiled Cython kernels (``pulseforge._kernels_cy``) are preferred; the
numpy module (``pulseforge._kernels_py``) is the fallback.  Set
``PULSEFORGE_BACKEND`` to ``python`` or ``compiled`` before import to force a
choice (``compiled`` raises if the extension was not built).
"""

import os

_ENV_VAR = "PULSEFORGE_BACKEND"


def load_backend(name):
    """Import and return one kernel module by name ('python' or 'compiled')."""
    if name in ("python", "py"):
        from . import _kernels_py

        return _kernels_py
    if name in ("compiled", "cython", "ext"):
        from . import _kernels_cy

        return _kernels_cy
    raise ValueError(
        f"unrecognized backend {name!r}; expected 'python' or 'compiled'"
    )


def _select():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if choice != "auto":
        return load_backend(choice)
    try:
        from . import _kernels_cy

        return _kernels_cy
    except ImportError:
        from . import _kernels_py

        return _kernels_py


kernels = _select()


def backend_name():
    """Name of the kernel backend selected at import ('cython' or 'python')."""
    return kernels.KIND

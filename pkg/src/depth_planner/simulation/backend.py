"""Kernel backend selection: jitted by default, pure numpy on request.

Set DEPTH_PLANNER_BACKEND=numpy (or numba) to pin a backend; unset, the
jitted kernels are used whenever numba imports cleanly.
"""

from __future__ import annotations

import os

from ..errors import DomainError

__all__ = ["ENV_VAR", "load_backend"]

ENV_VAR = "DEPTH_PLANNER_BACKEND"


def load_backend(name: str | None = None):
    """Return (kernel module, backend name). ``name`` overrides the env var."""
    if name is None:
        name = os.environ.get(ENV_VAR)
    if name is not None:
        name = name.strip().lower() or None
    if name not in (None, "numba", "numpy"):
        raise DomainError(
            f"unknown simulation backend {name!r}; choose 'numba' or 'numpy'"
        )

    if name == "numpy":
        from . import kernels_numpy

        return kernels_numpy, "numpy"
    if name == "numba":
        try:
            from . import kernels_numba
        except ImportError as exc:
            raise DomainError(
                "simulation backend 'numba' requested but numba is not importable"
            ) from exc
        return kernels_numba, "numba"

    try:
        from . import kernels_numba

        return kernels_numba, "numba"
    except ImportError:
        from . import kernels_numpy

        return kernels_numpy, "numpy"

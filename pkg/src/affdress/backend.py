"""Grid-kernel backend selection: the compiled extension when built, the
numpy fallback otherwise.  Both expose ``frame_grid`` and ``transport_grid``
with identical semantics (see tests/test_backends.py)."""

from __future__ import annotations

try:  # pragma: no cover - depends on the build environment
    from . import _kernels_cy as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    from . import _kernels_py as _impl

    BACKEND = "python"

frame_grid = _impl.frame_grid
transport_grid = _impl.transport_grid

"""Kernel backend selection.

Prefers the compiled Gray-code kernels (``sparsebound._core``) and falls
back to the chunked numpy implementations. Set ``SPARSEBOUND_PURE_PYTHON=1``
to force the fallback (used by tests and the benchmark).
"""

import os

if os.environ.get("SPARSEBOUND_PURE_PYTHON", "") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

inf_to_1 = _impl.inf_to_1
inf_to_2 = _impl.inf_to_2
cut_norm_pairs = _impl.cut_norm_pairs
cut_norm_graph = _impl.cut_norm_graph


def backend_name() -> str:
    """Which kernel implementation is active: ``compiled`` or ``python``."""
    return BACKEND

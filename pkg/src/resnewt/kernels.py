"""Backend selection for the determinant kernels.

The package ships two interchangeable implementations of the kernel API
(`det_bareiss`, `sort_with_parity`, `MinorCache`):

* ``resnewt._kernels`` — compiled (Cython) extension, used when available;
* ``resnewt._kernels_py`` — pure Python, always available.

Set the environment variable ``RESNEWT_PURE=1`` to force the pure-Python
backend.  ``BACKEND`` reports which one is active ("compiled" or "python").
"""

import os

if os.environ.get("RESNEWT_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

det_bareiss = _impl.det_bareiss
sort_with_parity = _impl.sort_with_parity
MinorCache = _impl.MinorCache

__all__ = ["det_bareiss", "sort_with_parity", "MinorCache", "BACKEND"]

"""Hot-loop kernel with backend selection at import time.

The compiled Cython core is preferred; when the extension is not built
(or LOCALDEC_KERNEL=python is set) the NumPy fallback takes over with
identical numeric behaviour.
"""

from __future__ import annotations

import os

_impl = None
if os.environ.get("LOCALDEC_KERNEL", "").lower() not in ("python", "fallback"):
    try:
        from . import _mccore as _impl
    except ImportError:  # pragma: no cover - depends on the build environment
        _impl = None

if _impl is not None:
    BACKEND = "cython"
else:
    from . import _fallback as _impl

    BACKEND = "python"

count_all_yes = _impl.count_all_yes
uniform01 = _impl.uniform01


def available_backends() -> dict:
    """All importable backends, for cross-checks and benchmarks."""
    from . import _fallback

    backends = {"python": _fallback}
    try:
        from . import _mccore

        backends["cython"] = _mccore
    except ImportError:  # pragma: no cover
        pass
    return backends

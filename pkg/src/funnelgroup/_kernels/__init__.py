"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``FUNNELGROUP_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the backend-equivalence tests).  Both backends produce
bit-identical results; the choice only affects speed.
"""

import os

from . import pure as _pure

if os.environ.get("FUNNELGROUP_PURE_PYTHON") == "1":
    _impl = _pure
else:
    try:
        from . import _wordscan as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

hyperbolic_freeness_scan = _impl.hyperbolic_freeness_scan
refinement_scan = _impl.refinement_scan


def backend_name() -> str:
    return _impl.BACKEND_NAME


def backends():
    """All importable backends, for cross-checking and benchmarks."""
    found = {"pure": _pure}
    try:
        from . import _wordscan
        found["compiled"] = _wordscan
    except ImportError:
        pass
    return found

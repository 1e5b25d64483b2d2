"""Compute-core selection.

The compiled core is preferred when importable; set INDCUBE_BACKEND=pure
(or =fast) to force a choice. Both cores expose the same five kernels
with identical outputs, so everything above this module is agnostic.
"""
import os

_choice = os.environ.get("INDCUBE_BACKEND", "").strip().lower()

if _choice == "pure":
    from . import _purecore as core
elif _choice == "fast":
    from . import _fastcore as core  # ImportError here means it was never built
else:
    try:
        from . import _fastcore as core  # type: ignore[no-redef]
    except ImportError:
        from . import _purecore as core  # type: ignore[no-redef]

BACKEND = core.BACKEND_NAME

enumerate_all = core.enumerate_all
enumerate_layer = core.enumerate_layer
layer_counts = core.layer_counts
outdeg_histogram = core.outdeg_histogram
solve_band_cover = core.solve_band_cover

"""Select the compiled kernels when available, else the pure-Python ones.

Set ``HOOKPOLY_PURE=1`` to force the fallback (used by the benchmark and by
the dual-implementation tests).
"""

import os

BACKEND = "python"

if os.environ.get("HOOKPOLY_PURE", "") not in ("", "0"):
    from ._kernels_py import aberth_sweeps, dedekind12k, phase_sum
else:
    try:
        from ._kernels import aberth_sweeps, dedekind12k, phase_sum

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import aberth_sweeps, dedekind12k, phase_sum

__all__ = ["BACKEND", "aberth_sweeps", "dedekind12k", "phase_sum"]

"""Hot-kernel dispatch: compiled core when present, numpy fallback otherwise.

The two implementations are interchangeable and bit-identical; which one
is active is reported by ``BACKEND`` and can be forced with the
environment variable ``DYADICMF_KERNELS`` set to ``cython`` or ``numpy``
before the first import.
"""

from __future__ import annotations

import os

_forced = os.environ.get("DYADICMF_KERNELS")

if _forced not in (None, "cython", "numpy"):
    raise RuntimeError(
        f"DYADICMF_KERNELS must be 'cython' or 'numpy', got {_forced!r}"
    )

if _forced == "numpy":
    from . import _fallback as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        from . import _fallback as _impl  # type: ignore[no-redef]

        BACKEND = "numpy"

sample_signs = _impl.sample_signs
cylinder_mass_table = _impl.cylinder_mass_table
count_constrained = _impl.count_constrained
xi_sum_histogram = _impl.xi_sum_histogram


def available_backends() -> dict[str, object]:
    """Map of importable backend name -> module, for benchmarks and tests."""
    from . import _fallback

    found: dict[str, object] = {"numpy": _fallback}
    try:
        from . import _core
    except ImportError:
        pass
    else:
        found["cython"] = _core
    return found

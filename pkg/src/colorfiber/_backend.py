"""Kernel backend selection.

The compiled extension is preferred when importable; set COLORFIBER_PURE=1
to force the interpreted mirror. Both expose the same functions and are
required to produce bit-identical results.
"""

from __future__ import annotations

import os

if os.environ.get("COLORFIBER_PURE") == "1":
    from colorfiber import _purecore as impl
else:
    try:
        from colorfiber import _fastcore as impl  # type: ignore[no-redef]
    except ImportError:
        from colorfiber import _purecore as impl  # type: ignore[no-redef]


def active_backend() -> str:
    """Name of the kernel backend in use: "compiled" or "python"."""
    return impl.BACKEND


splitmix64_sequence = impl.splitmix64_sequence
chain_run = impl.chain_run
reduce_monomial = impl.reduce_monomial
reduce_batch = impl.reduce_batch
side_witness_flags = impl.side_witness_flags
fiber_backtrack = impl.fiber_backtrack

"""
JIT Warmup Module
=================

Eager compilation of the Numba simulation kernel. Compilation happens on the
first call otherwise, which would be attributed to whichever trajectory runs
first. Nothing is compiled at import; the CLI calls :func:`warmup_jit` before
simulating.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import simulator


def warmup_jit() -> bool:
    """
    Compile the float kernel by running it on a two-step dummy system.

    Returns:
        True when the kernel compiled and ran, False after a failure (reported as
        a RuntimeWarning).
    """
    warmup_error: Exception | None = None

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            _warmup_kernel()
        except Exception as e:
            warmup_error = e

    if warmup_error is not None:
        warnings.warn(
            f"Ratbound JIT warmup failed: {warmup_error}",
            RuntimeWarning,
            stacklevel=2,
        )
        return False
    return True


def _warmup_kernel() -> None:
    k, steps = 1, 2
    hx = np.ones(k + steps, dtype=np.float64)
    hy = np.ones(k + steps, dtype=np.float64)
    consts = np.ones(4, dtype=np.float64)
    vecs = np.ones((len(simulator.KERNEL_VECTORS), k), dtype=np.float64)
    simulator._iterate_float(hx, hy, consts, vecs, k, steps, 1e-300, 1e300)

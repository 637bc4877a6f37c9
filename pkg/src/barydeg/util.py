"""Small shared helpers for relative-error bookkeeping."""

import numpy as np

# Relative errors at data points where f == 0 would divide by zero.  The
# default guard is small enough to be inert for any nonzero value while
# keeping exact zeros from crashing the error computation.
_GUARD_FACTOR = 1e-300
_TINY = np.nextafter(0.0, 1.0)


def resolve_zero_guard(values, zero_guard=None):
    """Return the floor used in relative-error denominators.

    ``None`` selects the default ``1e-300 * max|values|`` (clamped away from
    zero so all-zero data stays finite).
    """
    if zero_guard is not None:
        if not zero_guard > 0.0:
            raise ValueError("zero_guard must be positive")
        return float(zero_guard)
    guard = _GUARD_FACTOR * float(np.max(np.abs(values), initial=0.0))
    return guard if guard > 0.0 else _TINY


def relative_errors(values, approx, zero_guard):
    """Pointwise |values - approx| / max(|values|, zero_guard)."""
    values = np.asarray(values)
    approx = np.asarray(approx)
    return np.abs(values - approx) / np.maximum(np.abs(values), zero_guard)

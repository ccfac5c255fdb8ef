"""Numerical tolerance.

A single tolerance ``eps`` governs every equality test in the library:
two positive values a and b are treated as equal when
``|log a - log b| <= eps``. The default is 1e-9 and can be overridden
with the ``MAXALG_EPS`` environment variable or per call.
"""

import os

DEFAULT_EPS = 1e-9
DEFAULT_CIRCUIT_CAP = 1_000_000


def get_eps(eps=None):
    """Return ``eps`` if given, else the environment override, else the default."""
    if eps is not None:
        eps = float(eps)
    else:
        raw = os.environ.get("MAXALG_EPS")
        eps = float(raw) if raw else DEFAULT_EPS
    if not eps >= 0.0 or eps != eps:
        raise ValueError(f"tolerance must be a nonnegative number, got {eps!r}")
    return eps

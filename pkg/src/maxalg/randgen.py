"""Seeded random nonnegative matrices for property runs and ``maxalg gen``."""

import numpy as np

from .maxcore import MaxMatrix

WEIGHT_RANGE = (1, 9)


def random_matrix(n, density, seed, irreducible=False):
    """Random n x n matrix with integer weights in 1..9 at the given density.

    With ``irreducible``, a random Hamiltonian cycle of positive entries is
    superimposed so that D(A) is strongly connected. The result depends only
    on ``(n, density, seed, irreducible)``.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must be in (0, 1], got {density}")
    rng = np.random.default_rng(seed)
    lo, hi = WEIGHT_RANGE
    weights = rng.integers(lo, hi + 1, size=(n, n)).astype(float)
    keep = rng.random((n, n)) < density
    values = np.where(keep, weights, 0.0)
    if irreducible:
        order = rng.permutation(n)
        cyc = rng.integers(lo, hi + 1, size=n).astype(float)
        for k in range(n):
            i, j = order[k], order[(k + 1) % n]
            if values[i, j] == 0.0:
                values[i, j] = cyc[k]
    return MaxMatrix.from_values(values)

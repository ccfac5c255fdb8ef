"""Max-algebra kernel: matrices and vectors over (R+, max, *) in log domain.

Every entry a >= 0 is stored as log(a); the value 0 is stored as the
bottom sentinel ``BOTTOM = -inf``. Under this encoding the semiring
product becomes addition and the semiring sum stays ``max``, and bottom
absorbs under addition. All values are immutable.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .config import get_eps
from .errors import ArgumentError, DimensionError, SpectralRadiusError, UnsupportedInputError

BOTTOM = float("-inf")
MAX_DIMENSION = 4096


def _frozen(arr):
    arr.setflags(write=False)
    return arr


def _to_log(values):
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ArgumentError("entries must be finite")
    if np.any(values < 0):
        raise ArgumentError("entries must be nonnegative")
    with np.errstate(divide="ignore"):
        return np.log(values)


def _check_log(arr):
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise ArgumentError("log-domain entries must be real or -inf")


class MaxMatrix:
    """Square nonnegative matrix held as log-weights.

    Construct from log-domain data directly, or from ordinary values with
    :meth:`from_values`.
    """

    __slots__ = ("_log",)

    def __init__(self, log_entries):
        arr = np.array(log_entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionError("matrix dimension must be at least 1")
        if arr.shape[0] > MAX_DIMENSION:
            raise DimensionError(f"dimension {arr.shape[0]} exceeds dense limit {MAX_DIMENSION}")
        _check_log(arr)
        self._log = _frozen(arr)

    @classmethod
    def from_values(cls, values):
        return cls(_to_log(values))

    @classmethod
    def identity(cls, n):
        arr = np.full((n, n), BOTTOM)
        np.fill_diagonal(arr, 0.0)
        return cls(arr)

    @classmethod
    def zeros(cls, n):
        return cls(np.full((n, n), BOTTOM))

    @property
    def n(self):
        return self._log.shape[0]

    @property
    def log(self):
        """Read-only log-domain array."""
        return self._log

    def values(self):
        """Entries in the value domain, as a fresh float array."""
        return np.exp(self._log)

    def __getitem__(self, ij):
        return float(np.exp(self._log[ij]))

    def positive(self):
        """Boolean mask of the strictly positive entries."""
        return self._log != BOTTOM

    def scaled(self, c):
        """Return ``c * A`` for a scalar ``c > 0``."""
        if not c > 0:
            raise ArgumentError(f"scale factor must be positive, got {c!r}")
        return MaxMatrix(self._log + np.log(c))

    def __eq__(self, other):
        if not isinstance(other, MaxMatrix):
            return NotImplemented
        return np.array_equal(self._log, other._log)

    def __hash__(self):
        return hash(self._log.tobytes())

    def __repr__(self):
        return f"MaxMatrix.from_values({np.array2string(self.values(), precision=6)})"


class MaxVector:
    """Nonnegative vector held as log-weights (same encoding as MaxMatrix)."""

    __slots__ = ("_log",)

    def __init__(self, log_entries):
        arr = np.array(log_entries, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise DimensionError(f"vector must be 1-D and nonempty, got shape {arr.shape}")
        _check_log(arr)
        self._log = _frozen(arr)

    @classmethod
    def from_values(cls, values):
        return cls(_to_log(values))

    @classmethod
    def zeros(cls, n):
        return cls(np.full(n, BOTTOM))

    @property
    def n(self):
        return self._log.shape[0]

    @property
    def log(self):
        return self._log

    def values(self):
        return np.exp(self._log)

    def __getitem__(self, i):
        return float(np.exp(self._log[i]))

    def is_zero(self):
        return bool(np.all(self._log == BOTTOM))

    def is_positive(self):
        return bool(np.all(self._log != BOTTOM))

    def scaled_by(self, c):
        """Return ``c * v`` for a scalar ``c > 0``."""
        if not c > 0:
            raise ArgumentError(f"scale factor must be positive, got {c!r}")
        return MaxVector(self._log + np.log(c))

    def __eq__(self, other):
        if not isinstance(other, MaxVector):
            return NotImplemented
        return np.array_equal(self._log, other._log)

    def __hash__(self):
        return hash(self._log.tobytes())

    def __repr__(self):
        return f"MaxVector.from_values({np.array2string(self.values(), precision=6)})"


@dataclass(frozen=True)
class SpanCertificate:
    """Outcome of a max-combination membership test.

    ``coefficients`` maps the index of each generator to its (value-domain)
    coefficient; ``witness_index`` is a 0-based coordinate where the best
    max-combination falls short of the target, or None when it is a member.
    """

    member: bool
    coefficients: dict
    witness_index: int | None
    candidate: MaxVector = field(repr=False)


def log_close(a, b, eps=None):
    """True when two log-domain values are equal within ``eps`` (bottoms are equal to each other)."""
    eps = get_eps(eps)
    if a == BOTTOM or b == BOTTOM:
        return a == b
    return abs(a - b) <= eps


def max_mat_vec(a, x):
    """Return ``A (x) x`` with ``(A (x) x)_i = max_j a_ij x_j``."""
    if a.n != x.n:
        raise DimensionError(f"dimension mismatch: {a.n}x{a.n} matrix, vector of length {x.n}")
    return MaxVector((a.log + x.log[None, :]).max(axis=1))


def max_mat_mul(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    return MaxMatrix(kernels.maxplus_matmul(a.log, b.log))


def max_oplus(a, b):
    """Entrywise maximum of two matrices."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    return MaxMatrix(np.maximum(a.log, b.log))


def max_power(a, k):
    """``A^k`` in max algebra; ``A^0`` is the identity. Uses repeated squaring."""
    if k < 0 or int(k) != k:
        raise ArgumentError(f"power must be a nonnegative integer, got {k!r}")
    k = int(k)
    result = None
    base = a.log
    while k:
        if k & 1:
            result = base if result is None else kernels.maxplus_matmul(result, base)
        k >>= 1
        if k:
            base = kernels.maxplus_matmul(base, base)
    if result is None:
        return MaxMatrix.identity(a.n)
    return MaxMatrix(result)


def kleene_star(a, mu=None, eps=None):
    """Kleene star ``I (+) A (+) A^2 (+) ... (+) A^(n-1)``.

    Defined only when mu(A) <= 1; pass ``mu`` if already known, otherwise
    the condition is checked here. Raises SpectralRadiusError when
    mu(A) exceeds 1 by more than the tolerance.
    """
    eps = get_eps(eps)
    n = a.n
    if mu is not None:
        if mu > 0 and np.log(mu) > eps:
            raise SpectralRadiusError(mu)
    # (I (+) A)^(n-1) = I (+) A (+) ... (+) A^(n-1)
    base = MaxMatrix(np.maximum(a.log, MaxMatrix.identity(n).log))
    star = max_power(base, n - 1)
    if mu is None:
        closed = kernels.maxplus_matmul(a.log, star.log)
        if np.diag(closed).max() > eps:
            from .graphkit import max_cycle_geometric_mean

            found = max_cycle_geometric_mean(a)
            if np.log(found) > eps:
                raise SpectralRadiusError(found)
    return star


def scale(v):
    """Return ``v / max_i v_i`` so the largest entry is 1."""
    top = v.log.max()
    if top == BOTTOM:
        raise ArgumentError("cannot scale the zero vector")
    return MaxVector(v.log - top)


def in_span(v, generators, eps=None):
    """Test whether ``v`` is a max-combination of ``generators``.

    Uses residuation: the largest admissible coefficient for generator x is
    ``min_i v_i / x_i``, and the max-combination u built from those
    coefficients satisfies ``u <= v``; v is a member iff ``u == v``.
    """
    eps = get_eps(eps)
    gens = list(generators)
    u = np.full(v.n, BOTTOM)
    coefficients = {}
    for idx, x in enumerate(gens):
        if x.n != v.n:
            raise DimensionError(f"generator {idx} has length {x.n}, expected {v.n}")
        if not x.is_positive() and not v.is_zero():
            raise UnsupportedInputError(
                f"generator {idx} has a zero entry; only strictly positive generators are supported"
            )
        with np.errstate(invalid="ignore"):
            ratios = np.where(x.log == BOTTOM, np.inf, v.log - x.log)
        alpha = float(ratios.min())
        coefficients[idx] = float(np.exp(alpha))
        if alpha != BOTTOM:
            u = np.maximum(u, x.log + alpha)
    with np.errstate(invalid="ignore"):
        gap = np.where(v.log == BOTTOM, 0.0, v.log - u)
    member = bool(gap.max() <= eps)
    witness = None if member else int(np.argmax(gap))
    return SpanCertificate(member, coefficients, witness, MaxVector(u))


def is_independent(vectors, eps=None):
    """True iff no vector is a max-combination of the others."""
    vecs = list(vectors)
    for i, v in enumerate(vecs):
        rest = vecs[:i] + vecs[i + 1 :]
        if in_span(v, rest, eps).member:
            return False
    return True


def eigen_residual(a, x, lam):
    """Worst relative violation ``|(A (x) x)_i - lam x_i| / (lam x_i)`` over x_i > 0."""
    if x.is_zero():
        raise ArgumentError("eigen_residual needs a nonzero vector")
    if not lam > 0:
        raise ArgumentError(f"eigenvalue must be positive, got {lam!r}")
    y = max_mat_vec(a, x).log
    support = x.log != BOTTOM
    rel = np.expm1(y[support] - (x.log[support] + np.log(lam)))
    return float(np.abs(rel).max())

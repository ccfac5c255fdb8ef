"""Exception hierarchy shared by every maxalg module."""


class MaxAlgError(Exception):
    """Base class for all library errors."""


class DimensionError(MaxAlgError, ValueError):
    """Operands have incompatible or invalid dimensions."""


class ArgumentError(MaxAlgError, ValueError):
    """An argument is outside the operation's domain."""


class UnsupportedInputError(MaxAlgError, ValueError):
    """Input is valid mathematically but not handled by this routine."""


class SpectralRadiusError(MaxAlgError):
    """The Kleene star was requested for a matrix with mu(A) > 1."""

    def __init__(self, mu):
        self.mu = mu
        super().__init__(f"Kleene star requires mu(A) <= 1, got mu(A) = {mu:.12g}")


class NoCircuitError(MaxAlgError):
    """The digraph has no circuit, so the maximum cycle mean is undefined."""


class ReducibleMatrixError(MaxAlgError):
    """The operation requires an irreducible matrix.

    ``components`` holds the strongly connected components of D(A)
    (0-based vertex tuples) for diagnostics.
    """

    def __init__(self, components, message=None):
        self.components = tuple(tuple(c) for c in components)
        if message is None:
            shown = ", ".join(
                "{" + ",".join(str(v + 1) for v in c) + "}" for c in self.components
            )
            message = f"matrix is reducible; strongly connected components: {shown}"
        super().__init__(message)


class CircuitCapError(MaxAlgError):
    """Circuit enumeration stopped at the cap before finishing."""

    def __init__(self, cap, found):
        self.cap = cap
        self.found = found
        super().__init__(
            f"circuit enumeration exceeded cap of {cap} circuits "
            f"(stopped after {found}); raise --cap to continue"
        )


class InconsistencyError(MaxAlgError):
    """An internal consistency check failed (a result contradicts theory)."""


class MatrixFileError(MaxAlgError, ValueError):
    """A matrix file could not be parsed; ``line`` is 1-based (0 if not line-specific)."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)

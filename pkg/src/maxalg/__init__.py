"""Max-algebra eigenvectors of irreducible nonnegative matrices.

The main entry point is :func:`principal_basis`, which computes a scaled
basis of the principal max-eigencone by the mutation-sunflower method;
:mod:`maxalg.oracle` holds the independent Kleene-star and brute-force
checks.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ArgumentError,
    CircuitCapError,
    DimensionError,
    InconsistencyError,
    MatrixFileError,
    MaxAlgError,
    NoCircuitError,
    ReducibleMatrixError,
    SpectralRadiusError,
    UnsupportedInputError,
)
from .maxcore import (  # noqa: E402
    BOTTOM,
    MaxMatrix,
    MaxVector,
    SpanCertificate,
    eigen_residual,
    in_span,
    is_independent,
    kleene_star,
    max_mat_mul,
    max_mat_vec,
    max_power,
    scale,
)
from .graphkit import (  # noqa: E402
    Circuit,
    CriticalStructure,
    WeightedDigraph,
    critical_structure,
    digraph_of,
    enumerate_elementary_circuits,
    is_irreducible,
    local_radii,
    local_radius,
    max_cycle_geometric_mean,
    strongly_connected_components,
)
from .sunflower import (  # noqa: E402
    EigenBasis,
    SunflowerMatrix,
    build_sunflower,
    normalize,
    principal_basis,
    sunflower_eigenvector,
)
from .oracle import bases_equivalent, brute_mu, kleene_basis, verify_pipeline  # noqa: E402

__all__ = [
    "__version__",
    "ArgumentError",
    "CircuitCapError",
    "DimensionError",
    "InconsistencyError",
    "MatrixFileError",
    "MaxAlgError",
    "NoCircuitError",
    "ReducibleMatrixError",
    "SpectralRadiusError",
    "UnsupportedInputError",
    "BOTTOM",
    "MaxMatrix",
    "MaxVector",
    "SpanCertificate",
    "eigen_residual",
    "in_span",
    "is_independent",
    "kleene_star",
    "max_mat_mul",
    "max_mat_vec",
    "max_power",
    "scale",
    "Circuit",
    "CriticalStructure",
    "WeightedDigraph",
    "critical_structure",
    "digraph_of",
    "enumerate_elementary_circuits",
    "is_irreducible",
    "local_radii",
    "local_radius",
    "max_cycle_geometric_mean",
    "strongly_connected_components",
    "EigenBasis",
    "SunflowerMatrix",
    "build_sunflower",
    "normalize",
    "principal_basis",
    "sunflower_eigenvector",
    "bases_equivalent",
    "brute_mu",
    "kleene_basis",
    "verify_pipeline",
]

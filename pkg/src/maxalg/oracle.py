"""Independent ground truth for the sunflower pipeline.

The Kleene-star basis here never looks at circuits or sunflower
matrices: critical vertices and their components are read off
Delta(A') itself (i is critical iff (A' Delta(A'))_ii = 1, and critical
i, j share a component iff Delta_ij Delta_ji = 1).
"""

from dataclasses import dataclass, field
import itertools
import math

import numpy as np

from . import kernels
from .config import DEFAULT_CIRCUIT_CAP, get_eps
from .errors import InconsistencyError, MaxAlgError, NoCircuitError
from .graphkit import (
    complete_circuits,
    is_irreducible,
    local_radii,
    log_max_cycle_mean,
    require_irreducible,
    strongly_connected_components,
)
from .maxcore import MaxMatrix, MaxVector, eigen_residual, kleene_star, scale
from .sunflower import EigenBasis, principal_basis


@dataclass(frozen=True)
class BasisComparison:
    """``matching[k]`` is the index in Y paired with X's k-th vector."""

    equivalent: bool
    matching: tuple
    max_log_deviation: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


def brute_mu(a, cap=DEFAULT_CIRCUIT_CAP):
    """mu(A) as the best geometric mean over all enumerated elementary circuits."""
    circuits = complete_circuits(a, cap)
    if not len(circuits):
        raise NoCircuitError("the digraph of the matrix has no circuit")
    return math.exp(float(circuits.geo_means.max()))


def _star_components(a_norm, star, eps):
    closed = kernels.maxplus_matmul(a_norm.log, star.log)
    crit = [i for i in range(a_norm.n) if abs(closed[i, i]) <= eps]
    comps = []
    placed = set()
    sl = star.log
    for i in crit:
        if i in placed:
            continue
        comp = [j for j in crit if abs(sl[i, j] + sl[j, i]) <= eps]
        placed.update(comp)
        comps.append(tuple(comp))
    return comps


def kleene_basis(a, eps=None, choose=min):
    """Eigencone basis from columns of the Kleene star of A / mu(A).

    One column per critical component; ``choose`` picks the representative
    vertex of each component (any choice gives a proportional column).
    """
    eps = get_eps(eps)
    require_irreducible(a)
    log_mu = log_max_cycle_mean(a)
    a_norm = MaxMatrix(a.log - log_mu)
    star = kleene_star(a_norm, mu=1.0, eps=eps)
    vectors = []
    cols = []
    for comp in _star_components(a_norm, star, eps):
        rep = choose(comp)
        col = MaxVector(star.log[:, rep])
        res = eigen_residual(a_norm, col, 1.0)
        if res > eps:
            raise InconsistencyError(
                f"Kleene star column {rep + 1} is not an eigenvector (residual {res:.3e})"
            )
        ref = scale(col)
        for j in comp:
            dev = log_deviation(ref, MaxVector(star.log[:, j]))
            if dev > eps:
                raise InconsistencyError(
                    f"columns {rep + 1} and {j + 1} of the same critical component "
                    f"are not proportional (deviation {dev:.3e})"
                )
        vectors.append(ref)
        cols.append(rep)
    return EigenBasis(mu=math.exp(log_mu), vectors=tuple(vectors), provenance=tuple(cols))


def log_deviation(x, y):
    """Worst entrywise |log x_i - log y_i - c| under the best common shift c.

    Infinite when the supports differ.
    """
    xs, ys = x.log, y.log
    fx, fy = np.isfinite(xs), np.isfinite(ys)
    if not np.array_equal(fx, fy):
        return math.inf
    if not fx.any():
        return 0.0
    d = xs[fx] - ys[fx]
    return float((d.max() - d.min()) / 2.0)


def _vectors(basis):
    return list(basis.vectors) if isinstance(basis, EigenBasis) else list(basis)


def bases_equivalent(x, y, eps=None):
    """Compare two bases up to scaling of each vector and permutation."""
    eps = get_eps(eps)
    xs, ys = _vectors(x), _vectors(y)
    if len(xs) != len(ys):
        return BasisComparison(False, (), math.inf)
    if not xs:
        return BasisComparison(True, (), 0.0)
    dev = np.array([[log_deviation(u, v) for v in ys] for u in xs])
    k = len(xs)
    if k <= 7:
        best, best_perm = math.inf, None
        for perm in itertools.permutations(range(k)):
            worst = max(dev[i, perm[i]] for i in range(k))
            if worst < best:
                best, best_perm = worst, perm
        matching = tuple(int(p) for p in best_perm)
    else:
        free = set(range(k))
        picks = []
        for i in range(k):
            j = min(free, key=lambda j: dev[i, j])
            free.remove(j)
            picks.append(j)
        matching = tuple(picks)
        best = max(dev[i, matching[i]] for i in range(k))
    return BasisComparison(bool(best <= eps), matching, float(best))


def _run(name, fn):
    try:
        passed, detail = fn()
    except MaxAlgError as exc:
        return CheckResult(name, False, {"error": f"{type(exc).__name__}: {exc}"})
    return CheckResult(name, bool(passed), detail)


def verify_pipeline(a, eps=None, cap=DEFAULT_CIRCUIT_CAP, basis_hook=None):
    """Cross-check the sunflower pipeline against the oracles.

    ``basis_hook``, if given, maps the sunflower EigenBasis to a (possibly
    altered) one before it is checked; it exists so tests can inject a
    corrupted eigenvector.
    """
    eps = get_eps(eps)
    checks = []
    if not is_irreducible(a):
        comps = [[v + 1 for v in c] for c in strongly_connected_components(a)]
        checks.append(CheckResult("irreducible", False, {"components": comps}))
        return VerificationReport(tuple(checks))
    checks.append(CheckResult("irreducible", True, {}))

    karp = math.exp(log_max_cycle_mean(a))

    def mu_check():
        brute = brute_mu(a, cap)
        dev = abs(math.log(karp) - math.log(brute))
        return dev <= eps, {"karp": karp, "brute": brute, "log_deviation": dev}

    checks.append(_run("mu_karp_vs_brute", mu_check))

    def radius_check():
        radii = local_radii(a, cap)
        dev = max(abs(math.log(r) - math.log(karp)) if r > 0 else math.inf for r in radii)
        return dev <= eps, {"local_radii": radii, "log_deviation": dev}

    checks.append(_run("local_radius", radius_check))

    state = {}

    def basis_check():
        basis = principal_basis(a, eps, cap)
        if basis_hook is not None:
            basis = basis_hook(basis)
        state["basis"] = basis
        return True, {
            "r": len(basis),
            "sources": [s.source_circuit.one_based() for s in basis.provenance],
        }

    checks.append(_run("sunflower_basis", basis_check))

    def cardinality_check():
        kb = kleene_basis(a, eps)
        state["kleene"] = kb
        sb = state["basis"]
        return len(sb) == len(kb), {"sunflower": len(sb), "critical_components": len(kb)}

    def residual_check():
        sb = state["basis"]
        res = [eigen_residual(a, v, karp) for v in sb.vectors]
        return max(res) <= eps, {"residuals": res}

    def equivalence_check():
        cmp = bases_equivalent(state["basis"], state["kleene"], eps)
        return cmp.equivalent, {
            "matching": list(cmp.matching),
            "max_log_deviation": cmp.max_log_deviation,
        }

    if "basis" in state:
        checks.append(_run("eigen_residuals", residual_check))
        checks.append(_run("cardinality", cardinality_check))
        if "kleene" in state:
            checks.append(_run("basis_equivalence", equivalence_check))
    return VerificationReport(tuple(checks))

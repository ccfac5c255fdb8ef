import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxalg import (
    ArgumentError,
    BOTTOM,
    DimensionError,
    MaxMatrix,
    MaxVector,
    SpectralRadiusError,
    UnsupportedInputError,
    eigen_residual,
    in_span,
    is_independent,
    kleene_star,
    max_mat_mul,
    max_mat_vec,
    max_power,
    scale,
)
from maxalg.errors import NoCircuitError
from maxalg.graphkit import max_cycle_geometric_mean
from maxalg.matrixfile import read_matrix
from maxalg.maxcore import log_close, max_oplus
from maxalg.sunflower import normalize

from conftest import EPS, log_array, log_equal
import known_values as kv


def value_matrices(n_min=1, n_max=6):
    entry = st.one_of(st.just(0.0), st.floats(1e-6, 1e6))

    @st.composite
    def build(draw):
        n = draw(st.integers(n_min, n_max))
        return np.array(draw(st.lists(entry, min_size=n * n, max_size=n * n))).reshape(n, n)
    return build()


def naive_matvec(a, x):
    n = len(x)
    return np.array([max(a[i, j] * x[j] for j in range(n)) for i in range(n)])


def naive_matmul(a, b):
    n = a.shape[0]
    return np.array([[max(a[i, k] * b[k, j] for k in range(n)) for j in range(n)] for i in range(n)])


def rel_close(got, want, rel=1e-12):
    got, want = np.asarray(got), np.asarray(want)
    zero = want == 0
    return bool(np.all(got[zero] == 0) and np.allclose(got[~zero], want[~zero], rtol=rel, atol=0))


def best_path_weights(vals):
    """Greatest i->j path weight by exhaustive search over simple paths (value domain)."""
    n = vals.shape[0]
    best = np.zeros((n, n))
    for s in range(n):
        best[s, s] = 1.0
        stack = [(s, 1.0, 1 << s)]
        while stack:
            v, w, seen = stack.pop()
            for t in range(n):
                if vals[v, t] > 0 and not seen >> t & 1:
                    wt = w * vals[v, t]
                    best[s, t] = max(best[s, t], wt)
                    stack.append((t, wt, seen | 1 << t))
    return best


# --- types -------------------------------------------------------------------

def test_roundtrip_values():
    vals = np.array([[0.0, 1e-6, 3.5], [1e6, 0.0, 2.0], [7.25, 1.0, 0.0]])
    a = MaxMatrix.from_values(vals)
    back = a.values()
    assert np.all(back[vals == 0] == 0)
    assert rel_close(back, vals)
    assert a.log[0, 0] == BOTTOM


def test_matrix_validation():
    with pytest.raises(DimensionError):
        MaxMatrix(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        MaxMatrix(np.zeros((0, 0)))
    with pytest.raises(ArgumentError):
        MaxMatrix.from_values([[-1.0]])
    with pytest.raises(ArgumentError):
        MaxMatrix([[np.nan]])


def test_immutable():
    a = MaxMatrix.from_values([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        a.log[0, 0] = 5.0
    v = MaxVector.from_values([1, 2])
    with pytest.raises(ValueError):
        v.log[0] = 1.0


def test_equality_and_hash():
    a = MaxMatrix.from_values([[1, 0], [2, 3]])
    b = MaxMatrix.from_values([[1, 0], [2, 3]])
    assert a == b and hash(a) == hash(b)


def test_log_close():
    assert log_close(BOTTOM, BOTTOM)
    assert not log_close(BOTTOM, 0.0)
    assert log_close(1.0, 1.0 + 1e-10)
    assert not log_close(1.0, 1.0 + 1e-8)


# --- max_mat_vec / mul / power -----------------------------------------------

def test_matvec_eigen_example(m3):
    y = max_mat_vec(m3, MaxVector.from_values([2, 2, 1]))
    assert np.allclose(y.values(), [4, 4, 2])


def test_matvec_zero_vector(m3):
    assert max_mat_vec(m3, MaxVector.zeros(3)).is_zero()


def test_matvec_random_against_naive():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.uniform(0, 10, size=(5, 5)) * (rng.random((5, 5)) < 0.7)
        x = rng.uniform(0, 10, size=5)
        got = max_mat_vec(MaxMatrix.from_values(a), MaxVector.from_values(x)).values()
        assert rel_close(got, naive_matvec(a, x))


@settings(max_examples=80, deadline=None)
@given(value_matrices())
def test_matvec_matmul_property(vals):
    a = MaxMatrix.from_values(vals)
    x = vals[:, 0][::-1].copy()
    assert rel_close(max_mat_vec(a, MaxVector.from_values(x)).values(), naive_matvec(vals, x))
    assert rel_close(max_mat_mul(a, a).values(), naive_matmul(vals, vals))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        max_mat_vec(MaxMatrix.identity(3), MaxVector.zeros(2))
    with pytest.raises(DimensionError):
        max_mat_mul(MaxMatrix.identity(3), MaxMatrix.identity(2))
    with pytest.raises(DimensionError):
        max_oplus(MaxMatrix.identity(3), MaxMatrix.identity(2))


def test_identity_neutral(m4):
    assert max_mat_mul(m4, MaxMatrix.identity(4)) == m4
    assert max_mat_mul(MaxMatrix.identity(4), m4) == m4


def test_square_of_normalized_3x3(m3):
    a_norm = normalize(m3, 2.0)
    sq = max_mat_mul(a_norm, a_norm)
    assert sq[0, 0] == pytest.approx(1.0)


def test_matmul_random_4x4_against_naive():
    rng = np.random.default_rng(5)
    a = rng.uniform(0, 3, (4, 4)) * (rng.random((4, 4)) < 0.6)
    b = rng.uniform(0, 3, (4, 4)) * (rng.random((4, 4)) < 0.6)
    got = max_mat_mul(MaxMatrix.from_values(a), MaxMatrix.from_values(b)).values()
    assert rel_close(got, naive_matmul(a, b))


def test_power_trivial(m4):
    assert max_power(m4, 0) == MaxMatrix.identity(4)
    assert max_power(m4, 1) == m4
    with pytest.raises(ArgumentError):
        max_power(m4, -1)


def test_power_matches_repeated_product(m4):
    p = m4
    for k in range(2, 7):
        p = max_mat_mul(m4, p)
        assert log_equal(max_power(m4, k).log, p.log)


def test_power_entry_of_normalized_4x4(m4):
    sq = max_power(normalize(m4, 4.0), 2)
    assert sq[3, 2] == pytest.approx(5 / 4)


# --- Kleene star -------------------------------------------------------------

def test_star_of_zero_matrix():
    assert kleene_star(MaxMatrix.zeros(3)) == MaxMatrix.identity(3)


@pytest.mark.parametrize("name", ["M3", "M4", "M10", "M15"])
def test_star_matches_published(name):
    a = read_matrix(getattr(kv, f"{name}_FILE"))
    mu = float(getattr(kv, f"{name}_MU"))
    star = kleene_star(normalize(a, mu))
    assert log_equal(star.log, log_array(getattr(kv, f"{name}_DELTA")))


def test_star_rejects_large_mu(m3):
    with pytest.raises(SpectralRadiusError) as info:
        kleene_star(m3)
    assert info.value.mu == pytest.approx(2.0)
    with pytest.raises(SpectralRadiusError):
        kleene_star(normalize(m3, 2.0), mu=2.0)


def _subunit_matrix(seed, n):
    rng = np.random.default_rng(seed)
    vals = rng.uniform(0.5, 4.0, (n, n)) * (rng.random((n, n)) < 0.5)
    a = MaxMatrix.from_values(vals)
    if not np.isfinite(a.log).any():
        return a
    try:
        mu = max_cycle_geometric_mean(a)
    except NoCircuitError:
        return a
    return MaxMatrix(a.log - math.log(mu) - math.log(1.0 + seed % 3))


@pytest.mark.parametrize("seed", range(25))
def test_star_is_best_path_weight(seed):
    a = _subunit_matrix(seed, 2 + seed % 6)
    star = kleene_star(a)
    best = best_path_weights(a.values())
    assert log_equal(star.log, log_array(best))


@pytest.mark.parametrize("seed", range(15))
def test_star_idempotent(seed):
    a = _subunit_matrix(seed, 3 + seed % 5)
    star = kleene_star(a)
    assert log_equal(max_mat_mul(star, star).log, star.log)
    assert np.all(np.abs(np.diag(star.log)) <= EPS)


# --- scaling, span, independence ---------------------------------------------

def test_scale_examples():
    s = scale(MaxVector.from_values([4, 5 / 4, 4, 5]))
    assert np.allclose(s.values(), [4 / 5, 1 / 4, 4 / 5, 1])
    assert scale(s) == s
    v = MaxVector.from_values([float(x) for x in kv.M10_BASIS[0]])
    assert np.allclose(scale(v).values(), v.values() / 1.4)
    with pytest.raises(ArgumentError):
        scale(MaxVector.zeros(3))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(1e-6, 1e6), min_size=1, max_size=8))
def test_scale_idempotent_property(vals):
    s = scale(MaxVector.from_values(vals))
    assert s.log.max() == 0.0
    assert scale(s) == s


X1 = MaxVector.from_values([2, 2, 1])
X2 = MaxVector.from_values([1, 1, 2])


def test_span_combination_of_both():
    cert = in_span(MaxVector.from_values([1, 1, 1]), [X1, X2])
    assert cert.member and cert.witness_index is None
    assert cert.coefficients[0] == pytest.approx(0.5)
    assert cert.coefficients[1] == pytest.approx(0.5)


def test_span_self_membership():
    cert = in_span(X1, [X1])
    assert cert.member and cert.coefficients[0] == pytest.approx(1.0)


def test_span_non_member_witness():
    cert = in_span(X1, [X2])
    assert not cert.member
    # 0-based index 0 is the first coordinate: alpha = 1/2 gives 1/2 < 2 there
    assert cert.witness_index == 0
    assert cert.coefficients[0] == pytest.approx(0.5)
    assert cert.candidate[0] == pytest.approx(0.5)


def test_span_rejects_generator_with_zero():
    with pytest.raises(UnsupportedInputError):
        in_span(X1, [MaxVector.from_values([1, 0, 1])])
    with pytest.raises(DimensionError):
        in_span(X1, [MaxVector.from_values([1, 1])])


def test_span_empty_generators():
    assert not in_span(X1, []).member
    assert in_span(MaxVector.zeros(3), []).member


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.floats(0.01, 100), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.floats(0.01, 100), min_size=4, max_size=4))
def test_residuation_property(gens, target):
    v = MaxVector.from_values(target)
    cert = in_span(v, [MaxVector.from_values(g) for g in gens])
    assert np.all(cert.candidate.log <= v.log + 1e-12)
    if cert.member:
        assert np.all(np.abs(cert.candidate.log - v.log) <= EPS)
    else:
        k = cert.witness_index
        assert v.log[k] - cert.candidate.log[k] > EPS


def test_independence_examples():
    assert is_independent([X1, X2])
    assert not is_independent([X1, X1.scaled_by(3.0)])
    half = MaxVector(np.maximum(X1.log, X2.log) + math.log(0.5))
    assert not is_independent([X1, X2, half])


# --- eigen residual ----------------------------------------------------------

def test_residual_examples(m3, m15):
    assert eigen_residual(m3, X1, 2.0) <= EPS
    x3 = MaxVector.from_values([float(v) for v in kv.M15_BASIS[2]])
    assert eigen_residual(m15, x3, 4.0) <= EPS
    assert eigen_residual(m3, MaxVector.from_values([1, 0.9, 1]), 2.0) > 1e-3


def test_residual_errors(m3):
    with pytest.raises(ArgumentError):
        eigen_residual(m3, MaxVector.zeros(3), 2.0)
    with pytest.raises(ArgumentError):
        eigen_residual(m3, X1, 0.0)


def test_concurrent_use(m15):
    a_norm = normalize(m15, 4.0)
    want = kleene_star(a_norm, mu=1.0)
    results = []

    def work():
        results.append(kleene_star(a_norm, mu=1.0) == want)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [True] * 8

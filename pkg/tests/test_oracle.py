import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from absppt.core import haar_unitary, partial_transpose, sym_eigenvalues, validate_spectrum
from absppt.errors import AbsPPTError, NotAViolation
from absppt.lmi import certify_abs_ppt, lambda_matrix, pair_margin, quadratic_form
from absppt.oracle import (
    build_counterexample,
    e_set,
    predicted_rank1_spectrum,
    random_falsify,
    rank1_pt_spectrum,
    rearrangement_min,
    vector_from_x,
)
from absppt.orderings import enumerate_sigma, is_compatible

from conftest import random_spectrum


def brute_min(a, b):
    return min(sum(x * y for x, y in zip(perm, b)) for perm in itertools.permutations(a))


def test_e_set_examples():
    assert sorted(e_set([1, 1])) == [-1, 1, 1, 1]
    assert sorted(e_set([2, 1])) == [-2, 1, 2, 4]
    assert e_set([3]) == [9]


def test_e_set_sign_count():
    x = [3.0, 2.0, 1.5, 0.5]
    vals = e_set(x)
    assert len(vals) == 16
    assert sum(v <= 0 for v in vals) == 6


def test_rank1_pt_examples():
    assert np.allclose(sorted(rank1_pt_spectrum([1, 0, 0, 1], 2, 2)), [-1, 1, 1, 1])
    for n, m in [(2, 3), (3, 2), (1, 4)]:
        e1 = np.zeros(n * m)
        e1[0] = 1
        assert np.allclose(rank1_pt_spectrum(e1, n, m), [1] + [0] * (n * m - 1))


def test_rank1_pt_zero_vector():
    assert np.array_equal(rank1_pt_spectrum(np.zeros(6), 2, 3), np.zeros(6))
    assert np.array_equal(predicted_rank1_spectrum(np.zeros(6), 2, 3), np.zeros(6))


@pytest.mark.parametrize("n,m", [(2, 3), (3, 2), (4, 2), (3, 4)])
def test_rank1_pt_matches_e_set(rng, n, m):
    for _ in range(50):
        b = rng.normal(size=n * m) + 1j * rng.normal(size=n * m)
        got = rank1_pt_spectrum(b, n, m)
        want = predicted_rank1_spectrum(b, n, m)
        assert np.abs(got - want).max() < 1e-8 * np.vdot(b, b).real


def test_vector_from_x_examples():
    assert np.array_equal(vector_from_x([1, 1], 2, 2), [1, 0, 0, 1])
    assert np.array_equal(vector_from_x([5], 1, 3), [5, 0, 0])
    assert np.array_equal(vector_from_x([2, 1], 2, 3), [2, 0, 0, 1, 0, 0])
    with pytest.raises(AbsPPTError):
        vector_from_x([1, 2, 3], 2, 3)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3), (4, 2)])
def test_vector_from_x_spectrum(rng, n, m):
    p = min(n, m)
    x = rng.normal(size=p)
    got = rank1_pt_spectrum(vector_from_x(x, n, m), n, m)
    want = np.sort(e_set(x) + [0.0] * (n * m - p * p))[::-1]
    assert np.allclose(np.sort(got), np.sort(want), atol=1e-12)


def test_rearrangement_examples():
    assert rearrangement_min([1, 0, 0, 0], [1, 1, 1, -1]) == -1
    assert rearrangement_min([3, 1], [5, 2]) == 11
    assert rearrangement_min([2, 2, 2], [1, -4, 7]) == 2 * 4
    with pytest.raises(AbsPPTError) as e:
        rearrangement_min([1, 2], [1])
    assert e.value.code == "LENGTH_MISMATCH"


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda N: st.tuples(st.lists(st.integers(-20, 20), min_size=N, max_size=N),
                        st.lists(st.integers(-20, 20), min_size=N, max_size=N))))
def test_rearrangement_equals_brute_force(ab):
    a, b = ab
    assert rearrangement_min(a, b) == brute_min(a, b)


def test_rearrangement_exact_with_fractions():
    a = [Fraction(1, 3), Fraction(2, 7), Fraction(-1, 5)]
    b = [Fraction(5, 2), Fraction(0), Fraction(-3, 11)]
    assert rearrangement_min(a, b) == brute_min(a, b)


def test_rearrangement_is_unitary_minimum(rng):
    for N in (2, 3, 4):
        a = rng.normal(size=N)
        b = rng.normal(size=N)
        best = rearrangement_min(a, b)
        sampled = []
        for s in range(1000):
            U = haar_unitary(N, seed=s + 1000 * N)
            sampled.append(np.real(np.trace(U @ np.diag(a) @ U.conj().T @ np.diag(b))))
        assert min(sampled) >= best - 1e-12
        # the permutation achieving the minimum is itself a unitary
        assert min(sampled) - best < 0.5 * (np.ptp(a) * np.ptp(b) + 1e-9)


def test_bridge_rearrangement_and_quadratic_form(rng):
    for n, m in [(2, 2), (2, 3), (3, 3), (3, 4)]:
        for _ in range(20):
            s = random_spectrum(rng, n, m)
            x = np.sort(rng.random(s.p))[::-1]
            mu = rank1_pt_spectrum(vector_from_x(x, n, m), n, m)
            pair = next(pr for pr in enumerate_sigma(s.p).pairs if is_compatible(pr, x))
            q = quadratic_form(lambda_matrix(s, pair), x)
            assert abs(rearrangement_min(s.values, mu) - q) < 1e-10


def test_counterexample_singlet():
    s = validate_spectrum([1, 0, 0, 0], 2, 2)
    (pair,) = enumerate_sigma(2).pairs
    w = build_counterexample(s, pair, [1, 1])
    expected = 0.5 * np.array([[0, 0, 0, 0], [0, 1, -1, 0], [0, -1, 1, 0], [0, 0, 0, 0]])
    assert np.allclose(w.M, expected, atol=1e-15)
    assert w.value == pytest.approx(-1)


def test_counterexample_pipeline():
    s = validate_spectrum([0.5, 0.25, 0.15, 0.10], 2, 2)
    v = certify_abs_ppt(s)
    assert not v.abs_ppt
    w = build_counterexample(s, v.failing_pair, v.witness_x)
    q = quadratic_form(lambda_matrix(s, v.failing_pair), v.witness_x)
    assert abs(w.value - q) < 1e-10 and w.value < 0
    assert np.allclose(sym_eigenvalues(w.M), s.values, atol=1e-12)


def test_counterexample_refused_for_abs_ppt(rng):
    for _ in range(20):
        s = random_spectrum(rng, 3, 3, kind="near_uniform")
        if not certify_abs_ppt(s).abs_ppt:
            continue
        for pair in enumerate_sigma(3).pairs:
            _, vecs = np.linalg.eigh(lambda_matrix(s, pair) + lambda_matrix(s, pair).T)
            for x in vecs.T:
                with pytest.raises(NotAViolation):
                    build_counterexample(s, pair, x)


def test_counterexample_rectangular(rng):
    found = 0
    for _ in range(100):
        n, m = [(2, 4), (4, 3), (3, 5)][rng.integers(3)]
        s = random_spectrum(rng, n, m)
        v = certify_abs_ppt(s)
        if v.abs_ppt:
            continue
        found += 1
        w = build_counterexample(s, v.failing_pair, v.witness_x)
        assert np.allclose(sym_eigenvalues(w.M), s.values, atol=1e-9)
        assert w.value < 0
        assert sym_eigenvalues(partial_transpose(w.M, n, m))[-1] < 0
    assert found > 10


def test_falsify_finds_pure_state_violation():
    s = validate_spectrum([1, 0, 0, 0], 2, 2)
    hit = random_falsify(s, 1000, seed=7)
    assert hit is not None and hit.min_eigenvalue < 0
    U = hit.U
    A = U @ np.diag(s.as_array()) @ U.conj().T
    assert sym_eigenvalues(partial_transpose(A, 2, 2))[-1] == pytest.approx(hit.min_eigenvalue, abs=1e-12)


def test_falsify_uniform_never():
    s = validate_spectrum([0.25] * 4, 2, 2)
    assert random_falsify(s, 500, seed=1) is None
    assert random_falsify(s, 0, seed=1) is None


def test_falsify_deterministic():
    s = validate_spectrum([0.7, 0.2, 0.1, 0, 0, 0], 2, 3)
    a = random_falsify(s, 300, seed=42)
    b = random_falsify(s, 300, seed=42)
    assert a is not None and a.trial == b.trial and np.array_equal(a.U, b.U)
    # batching does not change which trial is reported
    c = random_falsify(s, 300, seed=42, batch=7)
    assert c.trial == a.trial


def test_witness_is_min_eigenvector():
    s = validate_spectrum([1, 0.2, 0.1, 0, 0, 0, 0, 0, 0], 3, 3)
    v = certify_abs_ppt(s)
    lo, vec = pair_margin(s, v.failing_pair)
    assert lo == v.margin
    assert np.allclose(np.abs(vec), np.abs(v.witness_x))

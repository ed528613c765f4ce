"""Exact root-of-unity sums, Vandermonde products, Hadamard equality."""

import cmath
import math

import numpy as np
import pytest

from diskgeom import (
    ConditioningWarning,
    DomainError,
    PointTuple,
    fekete_witness_is_roots,
    hadamard_bound_check,
    identity_suite,
    roots_of_unity,
    roots_of_unity_sum,
    second_sum,
    vandermonde_check,
)

SEED = 20260815
SUM_TOL = 1e-12
SECOND_TOL = 1e-11


def brute_force_sum(n: int, j: int) -> complex:
    # Independent evaluation without the shared power table.
    total = 0.0 + 0.0j
    for k in range(1, n):
        a_k = cmath.exp(2j * cmath.pi * k / n)
        a_jk = cmath.exp(2j * cmath.pi * ((j * k) % n) / n)
        total += (1.0 - a_jk) / (1.0 - a_k)
    return total


def test_roots_of_unity_basic():
    w = roots_of_unity(6)
    assert w.shape == (6,)
    assert np.max(np.abs(w**6 - 1.0)) <= 1e-12
    assert abs(w[3] + 1.0) <= 1e-12


def test_sum_telescopes_to_n_minus_j():
    for n in (2, 3, 5, 8, 13, 32, 64):
        for j in range(1, n + 1):
            total, expected, residual = roots_of_unity_sum(n, j)
            assert expected == complex(n - j, 0.0)
            assert residual <= SUM_TOL * n
            assert abs(total - brute_force_sum(n, j)) <= 1e-9


def test_sum_rejects_out_of_range_j():
    with pytest.raises(DomainError):
        roots_of_unity_sum(5, 0)
    with pytest.raises(DomainError):
        roots_of_unity_sum(5, 6)


def test_second_sum_closed_form():
    for n in (2, 3, 7, 16, 64):
        for p in range(1, n + 1):
            total, expected, residual = second_sum(n, p)
            a_const = (n - 1) / 2.0
            assert expected.real == pytest.approx(p * a_const - (n - p / 2.0) * (p - 1))
            assert residual <= SECOND_TOL * n * n


def test_vandermonde_at_roots_of_unity():
    # |det V| at the n-th roots of unity is n^(n/2).
    for n in (2, 3, 5, 8, 16):
        t = PointTuple(tuple(roots_of_unity(n)))
        product, det_abs, match = vandermonde_check(t)
        assert match
        assert det_abs == pytest.approx(n ** (n / 2.0), rel=1e-9)
        assert product == pytest.approx(det_abs, rel=1e-9)


def test_vandermonde_random_tuples_match():
    rng = np.random.default_rng(SEED)
    for _ in range(25):
        n = int(rng.integers(2, 11))
        pts = rng.uniform(-0.7, 0.7, (n, 2))
        t = PointTuple(tuple(pts[:, 0] + 1j * pts[:, 1]))
        _, _, match = vandermonde_check(t)
        assert match


def test_vandermonde_warns_near_coincident():
    t = PointTuple((0.0, 1e-7, 0.5))
    with pytest.warns(ConditioningWarning):
        vandermonde_check(t)


def test_hadamard_equality_at_roots_of_unity():
    for n in (2, 4, 9):
        rotation = cmath.exp(0.37j)
        t = PointTuple(tuple(rotation * roots_of_unity(n)))
        report = hadamard_bound_check(t)
        assert report.passed
        assert report.equality


def test_hadamard_strict_inside_disk():
    t = PointTuple((0.1, 0.3 + 0.2j, -0.4j, 0.6))
    report = hadamard_bound_check(t)
    assert report.passed
    assert not report.equality
    assert report.slack > 0.0


def test_point_tuple_validation():
    with pytest.raises(DomainError):
        PointTuple((1.0,))
    with pytest.raises(DomainError):
        PointTuple((0.0, 1.5))
    with pytest.raises(DomainError):
        PointTuple((0.5, 0.5))


def test_fekete_witness_accepts_rotated_scaled_roots():
    for n in (3, 5, 8):
        pts = 0.9 * cmath.exp(0.41j) * roots_of_unity(n)
        assert fekete_witness_is_roots(tuple(pts), tol=1e-6)


def test_fekete_witness_accepts_shuffled_order():
    rng = np.random.default_rng(SEED + 2)
    pts = list(0.999 * roots_of_unity(6))
    rng.shuffle(pts)
    assert fekete_witness_is_roots(tuple(pts), tol=1e-6)


def test_fekete_witness_rejects_perturbed_tuple():
    pts = np.array(0.9 * roots_of_unity(5))
    pts[2] *= cmath.exp(0.1j)
    assert not fekete_witness_is_roots(tuple(pts), tol=1e-3)


def test_identity_suite_small():
    result = identity_suite(n_max=16, tuple_count=40, seed=SEED)
    assert result["lemma_ok"]
    assert result["second_sum_ok"]
    assert result["vandermonde_ok"]
    assert result["hadamard_ok"]
    assert result["lemma_residual"] <= 1e-12

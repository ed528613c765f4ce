"""Function specs: evaluation, derivatives, coefficients, serialization."""

import json
import math

import numpy as np
import pytest

from diskgeom import (
    AnnulusCover,
    DomainError,
    Moebius,
    Polynomial,
    PowerSeries,
    derivative,
    evaluate,
    sample_circle,
    scale_spec,
    second_derivative,
    spec_from_json,
    spec_hash,
    spec_to_json,
    taylor_coefficients,
)
from diskgeom._series import series_derivative, series_eval, series_exp, series_sqrt
from diskgeom.quadrature import integrate

EXACT = 1e-14
SERIES_TOL = 1e-12
SEED = 20260815


def test_polynomial_eval_matches_horner():
    p = Polynomial((1.0, -2.0, 0.5, 3.0j))
    z = 0.3 - 0.4j
    expected = 1.0 - 2.0 * z + 0.5 * z**2 + 3.0j * z**3
    assert abs(complex(evaluate(p, z)) - expected) <= EXACT


def test_polynomial_eval_vectorized():
    p = Polynomial((0.0, 1.0, 0.25))
    z = np.array([0.1, 0.2 + 0.1j, -0.5j])
    out = evaluate(p, z)
    assert out.shape == z.shape
    assert np.max(np.abs(out - (z + 0.25 * z**2))) <= EXACT


def test_moebius_known_value():
    # f(z) = (z - 0.5) / (1 - 0.5 z) sends 0.8 to 0.5.
    f = Moebius(0.0, 0.5, 1.0)
    assert abs(complex(evaluate(f, 0.8)) - 0.5) <= EXACT
    assert abs(complex(evaluate(f, 0.5))) <= EXACT


def test_moebius_derivative_at_zero():
    # f'(0) = c (1 - |b|^2) for the automorphism part.
    f = Moebius(0.2j, 0.5, 1.0)
    assert abs(complex(derivative(f, 0.0)) - 0.75) <= EXACT


def test_annulus_cover_eval_and_derivative():
    f = AnnulusCover(0.3)
    # f(0) = 1 and f'(0) = 2 i c.
    assert abs(complex(evaluate(f, 0.0)) - 1.0) <= EXACT
    assert abs(complex(derivative(f, 0.0)) - 0.6j) <= EXACT
    # |f| on the real axis stays 1: the cover winds along the unit circle.
    vals = evaluate(f, np.linspace(-0.9, 0.9, 11))
    assert np.max(np.abs(np.abs(vals) - 1.0)) <= 1e-12


def test_derivative_matches_finite_difference():
    rng = np.random.default_rng(SEED)
    specs = [
        Polynomial(tuple(rng.standard_normal(5) + 1j * rng.standard_normal(5))),
        Moebius(0.1, 0.3 - 0.2j, np.exp(0.7j)),
        AnnulusCover(0.8),
    ]
    h = 1e-6
    # Larger step for the second difference; h = 1e-6 is roundoff-bound.
    h2 = 1e-4
    for spec in specs:
        z = 0.21 + 0.13j
        fd = (complex(evaluate(spec, z + h)) - complex(evaluate(spec, z - h))) / (2 * h)
        assert abs(complex(derivative(spec, z)) - fd) <= 1e-7
        fd2 = (
            complex(evaluate(spec, z + h2))
            - 2 * complex(evaluate(spec, z))
            + complex(evaluate(spec, z - h2))
        ) / h2**2
        assert abs(complex(second_derivative(spec, z)) - fd2) <= 1e-5


def test_taylor_coefficients_annulus_cover():
    # Coefficients must reproduce the function near zero.
    f = AnnulusCover(0.5)
    coeffs = taylor_coefficients(f, 12)
    z = 0.1 + 0.05j
    direct = complex(evaluate(f, z))
    series = complex(series_eval(coeffs, z))
    assert abs(direct - series) <= 1e-12
    assert abs(coeffs[0] - 1.0) <= EXACT
    assert abs(coeffs[1] - 1.0j) <= EXACT


def test_taylor_coefficients_moebius_geometric_tail():
    # (z - b)/(1 - b z) for real b: a_n = (1 - b^2) b^(n-1) for n >= 1.
    b = 0.5
    f = Moebius(0.0, b, 1.0)
    coeffs = taylor_coefficients(f, 6)
    assert abs(coeffs[0] + b) <= EXACT
    for n in range(1, 6):
        assert abs(coeffs[n] - (1 - b * b) * b ** (n - 1)) <= SERIES_TOL


def test_evaluate_rejects_points_outside_disk():
    with pytest.raises(DomainError):
        evaluate(AnnulusCover(1.0), 1.0 + 0j)


def test_moebius_validation():
    with pytest.raises(DomainError):
        Moebius(0.0, 1.2, 1.0)
    with pytest.raises(DomainError):
        Moebius(0.0, 0.2, 2.0)


def test_sample_circle_shapes_and_values():
    p = Polynomial((0.0, 1.0))
    sample = sample_circle(p, 0.5, 64)
    assert sample.values.shape == (64,)
    assert np.max(np.abs(np.abs(sample.values) - 0.5)) <= EXACT


def test_scale_spec_divides_image():
    p = Polynomial((2.0, 4.0))
    q = scale_spec(p, 0.5)
    z = 0.3 + 0.2j
    assert abs(complex(evaluate(q, z)) - 0.5 * complex(evaluate(p, z))) <= EXACT


def test_spec_json_round_trip_and_hash():
    specs = [
        Polynomial((1.0, 2.0 - 1.0j)),
        PowerSeries((0.0, 1.0, 0.25j)),
        Moebius(0.1j, 0.4, np.exp(0.3j)),
        AnnulusCover(0.7),
    ]
    for spec in specs:
        data = json.loads(json.dumps(spec_to_json(spec)))
        again = spec_from_json(data)
        assert again == spec
        assert spec_hash(again) == spec_hash(spec)
        assert len(spec_hash(spec)) == 12


def test_spec_from_json_rejects_malformed():
    with pytest.raises(DomainError):
        spec_from_json({"kind": "polynomial"})
    with pytest.raises(DomainError):
        spec_from_json({"kind": "nonsense", "coeffs": [[0, 0]]})


def test_series_exp_against_exp():
    # exp of the series z: coefficients 1/k!.
    g = np.zeros(8, dtype=complex)
    g[1] = 1.0
    e = series_exp(g, 8)
    expected = np.array([1.0 / math.factorial(k) for k in range(8)])
    assert np.max(np.abs(e - expected)) <= SERIES_TOL


def test_series_sqrt_squares_back():
    rng = np.random.default_rng(SEED + 1)
    c = rng.standard_normal(10) + 1j * rng.standard_normal(10)
    c[0] = 1.5 + 0.2j
    s = series_sqrt(c, 10)
    square = np.convolve(s, s)[:10]
    assert np.max(np.abs(square - c[:10])) <= 1e-10


def test_series_derivative_shifts_degree():
    coeffs = np.array([5.0, 1.0, 2.0, 3.0])
    d = series_derivative(coeffs)
    assert np.allclose(d, [1.0, 4.0, 9.0])


def test_integrate_known_value():
    value, err = integrate(np.sin, 0.0, np.pi)
    assert abs(value - 2.0) <= 1e-10
    assert err <= 1e-8

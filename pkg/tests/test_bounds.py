"""Sharp inequality checks: pass/fail semantics and equality detection.

Equality witnesses are exact model maps: disk automorphisms for the
two-point bound, monomials for the coefficient bound, and the Blaschke
product z (z + a) / (1 + a z) for the second-order Schwarz bound.
"""

import json
import math

import numpy as np
import pytest

from diskgeom import (
    InequalityReport,
    Moebius,
    NormalizationError,
    Polynomial,
    PowerSeries,
    check_don,
    check_don_symmetric,
    check_growth,
    check_isoperimetric,
    check_polya_chain,
    check_poukka,
    check_schur,
    disk_functional_estimate,
    diameter,
    normalize_spec,
    report_to_json,
)

SEED = 20260815
EQ_TOL = 1e-6
IDENTITY = Polynomial((0.0, 1.0))
KOEBE_LIKE = Polynomial((0.0, 1.0, 0.2))
AUTOMORPHISM = Moebius(0.0, 0.5, 1.0)


def schur_extremal(a: float, count: int = 48) -> PowerSeries:
    # z (z + a) / (1 + a z): coefficients a, then (1 - a^2)(-a)^(n-2).
    coeffs = [0.0, a]
    for k in range(2, count):
        coeffs.append((1.0 - a * a) * (-a) ** (k - 2))
    return PowerSeries(tuple(coeffs))


def test_report_pass_semantics():
    rep = InequalityReport("X", lhs=1.0, rhs=0.5, slack=-0.5, equality=False, tol=1e-9)
    assert not rep.passed
    rep2 = InequalityReport("X", lhs=1.0, rhs=1.0 - 1e-12, slack=-1e-12,
                            equality=True, tol=1e-9)
    assert rep2.passed


def test_report_json_round_trip():
    rep = check_don(AUTOMORPHISM, 0.8, tol=EQ_TOL)
    payload = json.loads(report_to_json(rep))
    assert payload["name"] == "Don"
    assert payload["equality"] is True
    assert payload["context"]["tol"] == EQ_TOL
    # Serialization is key-sorted and stable.
    assert report_to_json(rep) == report_to_json(rep)


def test_disk_estimate_moebius_diameter():
    value, err = disk_functional_estimate(AUTOMORPHISM, "diam")
    assert abs(value - 2.0) <= max(1e-6, 3.0 * err)
    assert err <= 1e-3


def test_disk_estimate_identity_radius():
    value, err = disk_functional_estimate(IDENTITY, "rad")
    assert abs(value - 1.0) <= 1e-9
    assert err <= 1e-6


def test_disk_estimate_high_degree_monomial():
    # Steep boundary growth near r = 1 must survive the stability guard.
    value, _ = disk_functional_estimate(Polynomial((0.0,) * 8 + (1.0,)), "diam")
    assert abs(value - 2.0) <= 1e-4


def test_normalize_spec_diam():
    spec = normalize_spec(Polynomial((0.0, 3.0, 0.3)), "diam")
    value, err = disk_functional_estimate(spec, "diam")
    assert abs(value - 2.0) <= max(1e-8, 3.0 * err)


def test_check_growth_identity_equality():
    rep = check_growth(IDENTITY, 0.5, "rad", tol=EQ_TOL)
    assert rep.passed
    assert rep.equality
    rep_d = check_growth(AUTOMORPHISM, 0.4, "diam", tol=EQ_TOL)
    assert rep_d.passed
    assert rep_d.lhs <= rep_d.rhs + EQ_TOL


def test_check_growth_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        check_growth(Polynomial((0.0, 3.0)), 0.5, "rad")


def test_don_equality_at_special_point():
    # For (z - b)/(1 - b z) equality holds exactly at z = 2b/(1 + b^2).
    rep = check_don(AUTOMORPHISM, 0.8, tol=EQ_TOL)
    assert rep.passed
    assert rep.equality
    assert rep.slack == pytest.approx(0.0, abs=1e-12)


def test_don_strict_away_from_special_point():
    rep = check_don(AUTOMORPHISM, 0.3, tol=EQ_TOL)
    assert rep.passed
    assert not rep.equality
    assert rep.slack > 1e-4


def test_don_accepts_precomputed_diameter():
    rep = check_don(AUTOMORPHISM, 0.8, tol=EQ_TOL, diam_estimate=2.0)
    assert rep.passed
    assert rep.equality


def test_don_rejects_oversized_image():
    with pytest.raises(NormalizationError):
        check_don(Polynomial((0.0, 3.0)), 0.5)


def test_don_symmetric_sharp_at_centered_pairs():
    # Equality needs image points placed symmetrically about the image
    # disk center: preimages of +-t under the automorphism.
    b = 0.5
    for t in (0.2, 0.5, 0.8):
        z = (t + b) / (1.0 + b * t)
        w = (b - t) / (1.0 - b * t)
        rep = check_don_symmetric(AUTOMORPHISM, z, w, tol=1e-9, diam_estimate=2.0)
        assert rep.passed
        assert rep.equality
        assert rep.lhs == pytest.approx(2.0 * t, abs=1e-12)
        assert rep.context["rhs_identity_gap"] <= 1e-12


def test_don_symmetric_strict_at_generic_pairs():
    rng = np.random.default_rng(SEED)
    for _ in range(10):
        z = complex(*rng.uniform(-0.6, 0.6, 2))
        w = complex(*rng.uniform(-0.6, 0.6, 2))
        if abs(z - w) < 1e-3:
            continue
        rep = check_don_symmetric(AUTOMORPHISM, z, w, tol=1e-9, diam_estimate=2.0)
        assert rep.passed
        assert rep.slack >= 0.0


def test_don_symmetric_strict_for_koebe_like():
    spec = normalize_spec(KOEBE_LIKE, "diam")
    rep = check_don_symmetric(spec, 0.5, -0.5, tol=EQ_TOL)
    assert rep.passed
    assert not rep.equality


def test_poukka_equality_for_monomials():
    for n in (1, 2, 5):
        coeffs = (0.0,) * n + (1.0,)
        rep = check_poukka(Polynomial(coeffs), n, tol=EQ_TOL)
        assert rep.passed
        assert rep.equality


def test_poukka_strict_for_generic_polynomial():
    rep = check_poukka(Polynomial((0.2, 0.5, 0.1, 0.05)), 2, tol=EQ_TOL)
    assert rep.passed
    assert not rep.equality
    assert rep.slack > 0.1


def test_schur_equality_square_map():
    for r in (0.25, 0.5, 0.75):
        rep = check_schur(Polynomial((0.0, 0.0, 1.0)), r, tol=EQ_TOL)
        assert rep.passed
        assert rep.equality
        assert rep.lhs == pytest.approx(r * r, abs=1e-9)


def test_schur_equality_blaschke_extremal():
    rep = check_schur(schur_extremal(0.5), 0.6, tol=EQ_TOL)
    assert rep.passed
    assert rep.equality
    assert rep.lhs == pytest.approx(0.27 / 0.7, abs=1e-8)


def test_schur_strict_for_small_multiple():
    rep = check_schur(Polynomial((0.0, 0.0, 0.5)), 0.5, tol=EQ_TOL)
    assert rep.passed
    assert not rep.equality


def test_schur_rejects_unbounded():
    with pytest.raises(NormalizationError):
        check_schur(Polynomial((0.0, 3.0)), 0.5)


def test_isoperimetric_disk_equality():
    r = 0.5
    rep = check_isoperimetric(math.pi * r * r, 2.0 * math.pi * r, tol=1e-9)
    assert rep.passed
    assert rep.equality


def test_isoperimetric_fails_on_impossible_values():
    rep = check_isoperimetric(10.0, 1.0, tol=1e-9)
    assert not rep.passed
    assert rep.slack < 0.0


def test_polya_chain_identity():
    polya, areadn = check_polya_chain(IDENTITY, 0.5, n=4, m=1024, seed=SEED)
    assert polya.name == "Polya" and areadn.name == "AreaDn"
    assert polya.passed and areadn.passed
    # Disk case: the whole chain collapses to equality.
    assert polya.equality and areadn.equality


def test_polya_chain_koebe_like():
    polya, areadn = check_polya_chain(KOEBE_LIKE, 0.6, n=5, m=1024, seed=SEED)
    assert polya.passed and areadn.passed
    assert polya.context["area_method"] == "series"


def test_diameter_estimate_consistency():
    # The open-disk estimate dominates every fixed-radius diameter.
    est, err = disk_functional_estimate(KOEBE_LIKE, "diam")
    inner = diameter(KOEBE_LIKE, 0.9).value
    assert est + 3.0 * err >= inner

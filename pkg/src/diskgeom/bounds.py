"""Sharp-inequality checkers with equality detection.

Each checker returns an InequalityReport with lhs, rhs, slack and an
equality flag at an explicit tolerance.  Open-disk quantities such as
Diam f(D) are estimated by polynomial extrapolation of the functional
over radii approaching 1, with a quadratic-versus-cubic stability guard;
sampling alone cannot reach the open-disk sup.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analytic import (
    FunctionSpec,
    Polynomial,
    PowerSeries,
    derivative,
    evaluate,
    sample_circle,
    scale_spec,
    second_derivative,
    taylor_coefficients,
)
from .errors import DomainError, NormalizationError
from .functionals import (
    area,
    area_univalent_series,
    circle_image_length,
    diameter,
    disk_n_diameter,
    is_univalent_sampled,
    n_diameter,
    radius,
)

REPORT_NAMES = (
    "SchwarzGrowth",
    "LandauToeplitz",
    "NDiamGrowth",
    "CapGrowth",
    "AreaGrowth",
    "PerimGrowth",
    "Don",
    "Poukka",
    "Schur",
    "Isoperimetric",
    "Polya",
    "AreaDn",
    "Hadamard",
    "DensityLower",
)

DEFAULT_EQUALITY_TOL = 1e-6
# Radii used to extrapolate open-disk functionals to r = 1.
EXTRAPOLATION_RADII = (0.996, 0.997, 0.998, 0.999)
# Relative disagreement between quadratic and cubic extrapolation that
# marks the estimate unstable.
EXTRAPOLATION_GUARD = 5e-3
_DISK_VALUES = {"rad": 1.0, "diam": 2.0, "cap": 1.0, "area": np.pi, "perim": 2.0 * np.pi}

_GROWTH_NAMES = {
    "rad": "SchwarzGrowth",
    "diam": "LandauToeplitz",
    "ndiam": "NDiamGrowth",
    "cap": "CapGrowth",
    "area": "AreaGrowth",
    "perim": "PerimGrowth",
}


@dataclass(frozen=True)
class InequalityReport:
    """One inequality instance: passes when slack >= -tol."""

    name: str
    lhs: float
    rhs: float
    slack: float
    equality: bool
    tol: float
    context: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol


def report_to_json(report: InequalityReport) -> str:
    payload = {
        "name": report.name,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "slack": report.slack,
        "equality": report.equality,
        "context": dict(report.context, tol=report.tol),
    }
    return json.dumps(payload, sort_keys=True)


def _make_report(name: str, lhs: float, rhs: float, tol: float, context: dict) -> InequalityReport:
    slack = rhs - lhs
    return InequalityReport(
        name=name, lhs=float(lhs), rhs=float(rhs), slack=float(slack),
        equality=bool(abs(slack) <= tol), tol=float(tol), context=context,
    )


def _neville_at_one(radii, values) -> float:
    xs = [1.0 - r for r in radii]
    table = list(values)
    k = len(table)
    for level in range(1, k):
        for i in range(k - level):
            table[i] = (xs[i + level] * table[i] - xs[i] * table[i + 1]) / (
                xs[i + level] - xs[i]
            )
    return float(table[0])


def disk_functional_estimate(
    spec: FunctionSpec,
    kind: str,
    n: int = 4,
    m: int = 8192,
    resolution: int = 1024,
    restarts: int = 8,
    seed: int = 0,
):
    """Open-disk functional of f(D), extrapolated from radii near 1.

    Returns (value, abs_error).  Smooth boundary-driven kinds (rad, diam,
    ndiam, perim) use cubic extrapolation over four radii with the
    quadratic comparison as a stability guard; area uses the rasterizer
    at the largest radius; cap reports the bracket midpoint there.
    """
    if kind == "area":
        fv = area(spec, EXTRAPOLATION_RADII[-1], resolution=resolution)
        return fv.value, fv.abs_error
    if kind == "cap":
        from .functionals import capacity_bracket

        fv = capacity_bracket(
            spec, EXTRAPOLATION_RADII[-1], n=n, m=m, resolution=resolution,
            restarts=restarts, seed=seed, area_method="raster",
        )
        return fv.value, fv.abs_error
    if kind == "rad":
        fvs = [radius(spec, r, m=m) for r in EXTRAPOLATION_RADII]
    elif kind == "diam":
        fvs = [diameter(spec, r, m=m) for r in EXTRAPOLATION_RADII]
    elif kind == "ndiam":
        fvs = [
            n_diameter(spec, r, n, m=m, restarts=restarts, seed=seed)
            for r in EXTRAPOLATION_RADII
        ]
    elif kind == "perim":
        fvs = [circle_image_length(spec, r) for r in EXTRAPOLATION_RADII]
    else:
        raise DomainError(f"unknown functional kind {kind!r}")
    values = [fv.value for fv in fvs]
    cubic = _neville_at_one(EXTRAPOLATION_RADII, values)
    quad = _neville_at_one(EXTRAPOLATION_RADII[1:], values[1:])
    scale = max(abs(cubic), 1e-300)
    gap = abs(cubic - quad)
    if gap > EXTRAPOLATION_GUARD * scale:
        raise NormalizationError(
            f"open-disk {kind} extrapolation unstable: cubic {cubic:.6g} vs "
            f"quadratic {quad:.6g}"
        )
    err = gap + 3.0 * max(fv.abs_error for fv in fvs)
    return cubic, err


def normalize_spec(spec: FunctionSpec, kind: str = "diam", n: int = 4):
    """Rescale a coefficient-backed spec so its open-disk functional hits
    the disk value (Diam 2, Rad 1, and so on).  Returns the new spec."""
    target = _DISK_VALUES.get(kind)
    if kind == "ndiam":
        target = disk_n_diameter(n)
    if target is None:
        raise DomainError(f"no disk normalization target for kind {kind!r}")
    value, _ = disk_functional_estimate(spec, kind, n=n)
    if value <= 0.0:
        raise DomainError("cannot normalize a degenerate spec")
    factor = target / value if kind != "area" else math.sqrt(target / value)
    return scale_spec(spec, factor)


def check_growth(
    spec: FunctionSpec, r: float, kind: str, tol: float = DEFAULT_EQUALITY_TOL, n: int = 4
) -> InequalityReport:
    """Schwarz-type growth inequality: functional of f(r D) against the
    disk benchmark, for specs normalized to the unit-disk value.

    Raises NormalizationError when the extrapolated unit-disk functional
    deviates from the disk value by more than one percent.
    """
    if kind not in _GROWTH_NAMES:
        raise DomainError(f"unknown functional kind {kind!r}")
    disk_target = disk_n_diameter(n) if kind == "ndiam" else _DISK_VALUES[kind]
    est, est_err = disk_functional_estimate(spec, kind, n=n)
    if abs(est - disk_target) > 0.01 * disk_target + 3.0 * est_err:
        raise NormalizationError(
            f"unit-disk {kind} is {est:.6g}, expected {disk_target:.6g}; "
            "rescale the spec first"
        )
    if kind == "rad":
        fv, rhs = radius(spec, r), r
    elif kind == "diam":
        fv, rhs = diameter(spec, r), 2.0 * r
    elif kind == "ndiam":
        fv, rhs = n_diameter(spec, r, n), disk_n_diameter(n) * r
    elif kind == "cap":
        from .functionals import capacity_bracket

        fv, rhs = capacity_bracket(spec, r, n=n), r
    elif kind == "area":
        fv, rhs = area(spec, r), np.pi * r * r
    else:
        fv, rhs = circle_image_length(spec, r), 2.0 * np.pi * r
    context = {
        "kind": kind, "r": r, "disk_estimate": est, "estimate_error": fv.abs_error,
    }
    return _make_report(_GROWTH_NAMES[kind], fv.value, rhs, max(tol, 3.0 * fv.abs_error), context)


# ---- pointwise sharp bounds ----


def check_don(
    spec: FunctionSpec,
    z: complex,
    tol: float = DEFAULT_EQUALITY_TOL,
    diam_estimate: Optional[float] = None,
) -> InequalityReport:
    """Two-point bound |f(z) - f(0)| <= 2|z|/(1 + sqrt(1 - |z|^2)) for
    maps with Diam f(D) <= 2.

    The diameter precondition is checked by extrapolation unless a
    precomputed estimate is supplied.  Equality holds only for disk
    automorphism images at the single point z = 2b/(1 + |b|^2).
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("z must lie in the open unit disk")
    if diam_estimate is None:
        diam_estimate, diam_err = disk_functional_estimate(spec, "diam")
    else:
        diam_err = 0.0
    if diam_estimate > 2.0 + 0.01 * 2.0 + 3.0 * diam_err:
        raise NormalizationError(
            f"Diam f(D) estimate {diam_estimate:.6g} exceeds 2; rescale the spec"
        )
    lhs = abs(complex(evaluate(spec, z)) - complex(evaluate(spec, 0.0)))
    az = abs(z)
    rhs = 2.0 * az / (1.0 + math.sqrt(1.0 - az * az))
    context = {"z": [z.real, z.imag], "diam_estimate": diam_estimate}
    return _make_report("Don", lhs, rhs, tol, context)


def check_don_symmetric(
    spec: FunctionSpec,
    z: complex,
    w: complex,
    tol: float = DEFAULT_EQUALITY_TOL,
    diam_estimate: Optional[float] = None,
) -> InequalityReport:
    """Symmetric two-point bound |f(z) - f(w)| <= Diam f(D) d/(1+sqrt(1-d^2))
    with d the pseudohyperbolic distance of z and w.

    The algebraically equivalent closed form with the sqrt((1-|z|^2)(1-|w|^2))
    denominator is evaluated as well; their gap is reported in the context.
    """
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainError("z and w must lie in the open unit disk")
    if diam_estimate is None:
        diam_estimate, _ = disk_functional_estimate(spec, "diam")
    lhs = abs(complex(evaluate(spec, z)) - complex(evaluate(spec, w)))
    denom = 1.0 - np.conj(w) * z
    delta = abs(z - w) / abs(denom)
    rhs = diam_estimate * delta / (1.0 + math.sqrt(max(1.0 - delta * delta, 0.0)))
    alt = (
        diam_estimate
        * abs(z - w)
        / (abs(denom) + math.sqrt(max((1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2), 0.0)))
    )
    context = {
        "z": [z.real, z.imag], "w": [w.real, w.imag],
        "diam_estimate": diam_estimate, "rhs_identity_gap": abs(rhs - alt),
    }
    return _make_report("Don", lhs, rhs, tol, context)


def check_poukka(
    spec: FunctionSpec, n: int, tol: float = DEFAULT_EQUALITY_TOL
) -> InequalityReport:
    """Coefficient bound |f^(n)(0)| / n! <= Diam f(D) / 2.

    Equality characterizes monomial-plus-constant maps f(0) + c z^n.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    coeff = taylor_coefficients(spec, n + 1)[n]
    diam_est, diam_err = disk_functional_estimate(spec, "diam")
    lhs = abs(coeff)
    rhs = 0.5 * diam_est
    context = {"n": n, "coeff": [coeff.real, coeff.imag], "diam_error": diam_err}
    return _make_report("Poukka", lhs, rhs, max(tol, 3.0 * diam_err), context)


def _circle_max(spec: FunctionSpec, r: float, m: int, shift: complex, slope: complex):
    """Max of |f(z) - shift - slope z| on |z| = r with a second-order
    error bound and parabolic refinement."""
    angles = 2.0 * np.pi * np.arange(m) / m
    zs = r * np.exp(1j * angles)
    g = np.abs(evaluate(spec, zs) - shift - slope * zs)
    k = int(np.argmax(g))
    value = float(g[k])
    dtheta = 2.0 * np.pi / m
    gm, gp = g[(k - 1) % m], g[(k + 1) % m]
    denom = gm - 2.0 * g[k] + gp
    if denom < 0.0:
        off = 0.5 * (gm - gp) / denom * dtheta
        if abs(off) <= dtheta:
            zz = r * np.exp(1j * (angles[k] + off))
            cand = abs(complex(evaluate(spec, zz)) - shift - slope * zz)
            value = max(value, cand)
    d1 = np.abs(derivative(spec, zs) - slope)
    d2 = np.abs(second_derivative(spec, zs))
    curv = r * r * float(np.max(d2)) + r * float(np.max(d1))
    curv += (r * float(np.max(d1))) ** 2 / max(value, 1e-300)
    err = 0.125 * curv * dtheta * dtheta + 1e-14 * (1.0 + value)
    return value, err


def check_schur(
    spec: FunctionSpec, r: float, tol: float = DEFAULT_EQUALITY_TOL, m: int = 8192
) -> InequalityReport:
    """Second-order Schwarz bound for maps with sup |(f(z) - f(0))/z| <= 1:
    max over |z| <= r of |f(z) - f(0) - f'(0) z| against
    (1 - |f'(0)|^2) r^2 / (1 - |f'(0)| r).
    """
    if not (0.0 < r < 1.0):
        raise DomainError("r must lie in (0, 1)")
    f0 = complex(evaluate(spec, 0.0))
    probe = sample_circle(spec, 0.999, m)
    ratio = np.abs(probe.values - f0) / 0.999
    if float(np.max(ratio)) > 1.0 + max(tol, 1e-9):
        raise NormalizationError(
            f"sup |(f(z) - f(0))/z| is about {float(np.max(ratio)):.6g}, above 1"
        )
    a = complex(derivative(spec, 0.0))
    lhs, err = _circle_max(spec, r, m, f0, a)
    rhs = (1.0 - abs(a) ** 2) * r * r / (1.0 - abs(a) * r)
    context = {"r": r, "fprime0": [a.real, a.imag], "lhs_error": err}
    return _make_report("Schur", lhs, rhs, max(tol, 3.0 * err), context)


def check_isoperimetric(
    area_value: float, length_value: float, tol: float = DEFAULT_EQUALITY_TOL
) -> InequalityReport:
    """Classical isoperimetric inequality 4 pi Area <= Length^2."""
    lhs = 4.0 * np.pi * area_value
    rhs = length_value * length_value
    return _make_report("Isoperimetric", lhs, rhs, tol, {})


def check_polya_chain(
    spec: FunctionSpec,
    r: float,
    n: int = 4,
    tol: float = DEFAULT_EQUALITY_TOL,
    m: int = 4096,
    resolution: int = 512,
    restarts: int = 8,
    seed: int = 0,
    area_method: str = "auto",
) -> list:
    """Capacity chain on the image set: Area <= pi Cap^2 <= pi (d_n / n^(1/(n-1)))^2.

    Returns the Polya report (against the capacity upper bound) and the
    n-diameter report, with estimator errors folded into each tolerance.
    """
    if area_method == "auto":
        area_method = (
            "series"
            if isinstance(spec, (Polynomial, PowerSeries)) and is_univalent_sampled(spec, r)
            else "raster"
        )
    if area_method == "series":
        a = area_univalent_series(spec, r)
    else:
        a = area(spec, r, resolution=resolution)
    dn = n_diameter(spec, r, n, m=m, restarts=restarts, seed=seed)
    norm = disk_n_diameter(n)
    cap_upper = dn.value / norm + dn.abs_error / norm
    rhs_polya = np.pi * cap_upper * cap_upper
    rhs_dn = np.pi * (dn.value / norm) ** 2
    rhs_err = 2.0 * np.pi * (dn.value / norm) * (dn.abs_error / norm)
    context = {"r": r, "n": n, "area_method": area_method, "area_error": a.abs_error}
    polya = _make_report(
        "Polya", a.value, rhs_polya, max(tol, 3.0 * (a.abs_error + rhs_err)), dict(context)
    )
    areadn = _make_report(
        "AreaDn", a.value, rhs_dn, max(tol, 3.0 * (a.abs_error + rhs_err)), dict(context)
    )
    return [polya, areadn]

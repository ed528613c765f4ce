"""Function specs on the unit disk and their pointwise operations.

A spec is one of four declarative variants (polynomial, truncated power
series, disk automorphism, annulus covering map).  Everything downstream
works through ``evaluate``/``derivative``/``sample_circle`` so the
functional estimators never special-case the variant.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._series import series_derivative, series_eval, series_exp
from .errors import DomainError, UnsupportedError

# Points must stay strictly inside the unit disk by this margin.
DISK_MARGIN = 1e-12
# Circle samples stay a bit further in so downstream refinement has room.
CIRCLE_MARGIN = 1e-9


@dataclass(frozen=True)
class Polynomial:
    """f(z) = sum_k coeffs[k] z^k, coefficients ascending."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise DomainError("polynomial needs at least one coefficient")


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series; truncation degree is len(coeffs) - 1."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise DomainError("series needs at least one coefficient")

    @property
    def truncation_degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class Moebius:
    """f(z) = c (z - b) / (1 - conj(b) z) + a with |b| < 1 and |c| = 1."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        if abs(self.b) >= 1.0:
            raise DomainError("moebius parameter b must lie in the open disk")
        if abs(abs(self.c) - 1.0) > 1e-12:
            raise DomainError("moebius parameter c must be unimodular")


@dataclass(frozen=True)
class AnnulusCover:
    """f(z) = exp(i c log((1+z)/(1-z))), principal branch, c > 0.

    Maps the disk onto the annulus exp(-pi c / 2) < |w| < exp(pi c / 2).
    """

    c: float

    def __post_init__(self):
        object.__setattr__(self, "c", float(self.c))
        if not self.c > 0.0:
            raise DomainError("annulus cover parameter c must be positive")


FunctionSpec = Union[Polynomial, PowerSeries, Moebius, AnnulusCover]


@dataclass(frozen=True)
class BoundarySample:
    """Image samples of a circle |z| = r under a spec."""

    r: float
    angles: np.ndarray
    values: np.ndarray


def _check_in_disk(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1.0 - DISK_MARGIN):
        raise DomainError("evaluation point must satisfy |z| < 1 - 1e-12")


def evaluate(spec: FunctionSpec, z):
    """Evaluate f at a point or ndarray of points strictly inside the disk."""
    z = np.asarray(z, dtype=complex)
    _check_in_disk(z)
    if isinstance(spec, (Polynomial, PowerSeries)):
        out = series_eval(np.asarray(spec.coeffs), z)
    elif isinstance(spec, Moebius):
        out = spec.c * (z - spec.b) / (1.0 - np.conj(spec.b) * z) + spec.a
    elif isinstance(spec, AnnulusCover):
        # log((1+z)/(1-z)) = 2 atanh(z) on the disk (principal branch).
        out = np.exp(2j * spec.c * np.arctanh(z))
    else:
        raise UnsupportedError(f"unknown spec type {type(spec)!r}")
    return out if out.shape else complex(out)


def derivative(spec: FunctionSpec, z, order: int = 1):
    """Derivative of given order.

    Term-wise for polynomial/series at any point.  For the moebius and
    annulus-cover variants, order 1 uses the closed form at any point;
    higher orders are only supported at z = 0 (coefficient extraction).
    """
    if order < 1:
        raise DomainError("derivative order must be >= 1")
    z = np.asarray(z, dtype=complex)
    _check_in_disk(z)
    if isinstance(spec, (Polynomial, PowerSeries)):
        dc = series_derivative(np.asarray(spec.coeffs), order)
        out = series_eval(dc, z)
        return out if out.shape else complex(out)
    if order == 1:
        if isinstance(spec, Moebius):
            out = spec.c * (1.0 - abs(spec.b) ** 2) / (1.0 - np.conj(spec.b) * z) ** 2
        elif isinstance(spec, AnnulusCover):
            out = evaluate(spec, z) * (2j * spec.c) / (1.0 - z * z)
        else:
            raise UnsupportedError(f"unknown spec type {type(spec)!r}")
        return out if out.shape else complex(out)
    if np.any(z != 0):
        raise UnsupportedError(
            "derivatives of order > 1 are only supported at z = 0 for this variant"
        )
    # n-th derivative at 0 is n! a_n
    value = taylor_coefficients(spec, order + 1)[order] * math.factorial(order)
    return np.full(z.shape, value, dtype=complex) if z.shape else complex(value)


def taylor_coefficients(spec: FunctionSpec, count: int) -> np.ndarray:
    """First ``count`` Taylor coefficients of f about 0."""
    if count < 1:
        raise DomainError("count must be >= 1")
    if isinstance(spec, (Polynomial, PowerSeries)):
        c = np.zeros(count, dtype=complex)
        src = np.asarray(spec.coeffs)
        upto = min(count, src.shape[0])
        c[:upto] = src[:upto]
        return c
    if isinstance(spec, Moebius):
        # (z-b)/(1-conj(b)z) = -b + (1-|b|^2) sum_{n>=1} conj(b)^(n-1) z^n
        c = np.zeros(count, dtype=complex)
        c[0] = spec.c * (-spec.b) + spec.a
        bbar = np.conj(spec.b)
        fac = spec.c * (1.0 - abs(spec.b) ** 2)
        for n in range(1, count):
            c[n] = fac * bbar ** (n - 1)
        return c
    if isinstance(spec, AnnulusCover):
        # f = exp(g) with g = 2 i c atanh(z): g_k = 2ic/k for odd k.
        g = np.zeros(count, dtype=complex)
        for k in range(1, count, 2):
            g[k] = 2j * spec.c / k
        return series_exp(g, count)
    raise UnsupportedError(f"unknown spec type {type(spec)!r}")


def second_derivative(spec: FunctionSpec, z):
    """f'' at arbitrary points (internal; used for discretization estimates)."""
    z = np.asarray(z, dtype=complex)
    _check_in_disk(z)
    if isinstance(spec, (Polynomial, PowerSeries)):
        dc = series_derivative(np.asarray(spec.coeffs), 2)
        out = series_eval(dc, z)
    elif isinstance(spec, Moebius):
        bbar = np.conj(spec.b)
        out = 2.0 * bbar * spec.c * (1.0 - abs(spec.b) ** 2) / (1.0 - bbar * z) ** 3
    elif isinstance(spec, AnnulusCover):
        w = 2j * spec.c / (1.0 - z * z)
        out = evaluate(spec, z) * (w * w + 2j * spec.c * 2.0 * z / (1.0 - z * z) ** 2)
    else:
        raise UnsupportedError(f"unknown spec type {type(spec)!r}")
    return out if out.shape else complex(out)


def sample_circle(spec: FunctionSpec, r: float, m: int) -> BoundarySample:
    """Image of m equally spaced points on |z| = r, angles 2 pi k / m."""
    if not 0.0 < r <= 1.0 - CIRCLE_MARGIN:
        raise DomainError("circle radius must satisfy 0 < r <= 1 - 1e-9")
    if m < 1:
        raise DomainError("need at least one sample")
    angles = 2.0 * np.pi * np.arange(m) / m
    values = evaluate(spec, r * np.exp(1j * angles))
    return BoundarySample(r=float(r), angles=angles, values=np.asarray(values))


def scale_spec(spec: FunctionSpec, s: complex) -> FunctionSpec:
    """Return the spec of s * f; only coefficient-backed variants support it."""
    if isinstance(spec, Polynomial):
        return Polynomial(tuple(s * c for c in spec.coeffs))
    if isinstance(spec, PowerSeries):
        return PowerSeries(tuple(s * c for c in spec.coeffs))
    raise UnsupportedError("only polynomial/series specs can be rescaled exactly")


# ---- JSON wire format ----


def _c2j(w: complex) -> list:
    w = complex(w)
    return [w.real, w.imag]


def _j2c(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(re, im)


def spec_to_json(spec: FunctionSpec) -> dict:
    """Serializable dict; complex numbers as [re, im] pairs."""
    if isinstance(spec, Polynomial):
        return {"kind": "polynomial", "coeffs": [_c2j(c) for c in spec.coeffs]}
    if isinstance(spec, PowerSeries):
        return {"kind": "series", "coeffs": [_c2j(c) for c in spec.coeffs]}
    if isinstance(spec, Moebius):
        return {"kind": "moebius", "a": _c2j(spec.a), "b": _c2j(spec.b), "c": _c2j(spec.c)}
    if isinstance(spec, AnnulusCover):
        return {"kind": "annulus_cover", "c": spec.c}
    raise UnsupportedError(f"unknown spec type {type(spec)!r}")


def spec_from_json(data: dict) -> FunctionSpec:
    """Inverse of spec_to_json; raises DomainError on malformed input."""
    try:
        kind = data["kind"]
        if kind == "polynomial":
            return Polynomial(tuple(_j2c(c) for c in data["coeffs"]))
        if kind == "series":
            return PowerSeries(tuple(_j2c(c) for c in data["coeffs"]))
        if kind == "moebius":
            return Moebius(_j2c(data["a"]), _j2c(data["b"]), _j2c(data["c"]))
        if kind == "annulus_cover":
            return AnnulusCover(float(data["c"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed spec JSON: {exc}") from exc
    raise DomainError(f"unknown spec kind {kind!r}")


def spec_hash(spec: FunctionSpec) -> str:
    """Short content hash of the canonical JSON form (provenance tag)."""
    blob = json.dumps(spec_to_json(spec), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]

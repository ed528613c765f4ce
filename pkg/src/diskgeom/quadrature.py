"""Thin wrapper over adaptive Gauss-Kronrod quadrature with error control."""

from __future__ import annotations

from scipy.integrate import quad

from .errors import QuadratureError

DEFAULT_QUAD_TOL = 1e-8


def integrate(fn, a: float, b: float, abs_tol: float = DEFAULT_QUAD_TOL):
    """Integrate fn over [a, b]; returns (value, error_estimate).

    Raises QuadratureError when the returned error estimate misses the
    requested absolute tolerance by more than a factor of ten.
    """
    if b <= a:
        return 0.0, 0.0
    value, err = quad(fn, a, b, epsabs=abs_tol, epsrel=abs_tol, limit=400)
    if err > 10.0 * abs_tol * max(1.0, abs(value)):
        raise QuadratureError(
            f"quadrature error estimate {err:.3e} exceeds tolerance {abs_tol:.3e}"
        )
    return value, err

"""Normalized growth curves phi(r) and their discrete-grid verdicts.

Each functional F of the image f(r D) is divided by its value for the
identity map (F of r D itself), giving a curve that is constant exactly
for linear f, increasing otherwise, and log-convex in log r for the
radius, n-diameter, and capacity families.  Verdict tolerances are
coupled to the propagated estimator errors, never absolute constants.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .analytic import (
    FunctionSpec,
    Polynomial,
    PowerSeries,
    derivative,
    spec_hash,
)
from .errors import DomainError, GridError
from .functionals import (
    DEFAULT_RESOLUTION,
    DEFAULT_RESTARTS,
    DEFAULT_SAMPLES,
    FunctionalValue,
    area,
    area_univalent_series,
    capacity_bracket,
    circle_image_length,
    diameter,
    disk_n_diameter,
    is_univalent_sampled,
    n_diameter,
    radius,
)

KINDS = ("rad", "diam", "ndiam", "cap", "area", "perim")
DEFAULT_GRID_POINTS = 17
DEFAULT_GRID_RANGE = (0.05, 0.95)
# Relative allowance when comparing phi(1e-3) with the analytic r->0 limit.
LIMIT_REL_TOL = 0.01
LIMIT_RADIUS = 1e-3


def default_grid(
    points: int = DEFAULT_GRID_POINTS,
    r_min: float = DEFAULT_GRID_RANGE[0],
    r_max: float = DEFAULT_GRID_RANGE[1],
) -> np.ndarray:
    """Geometric grid in (0, 1); log-uniform so convexity checks are
    plain second-difference tests."""
    if not (0.0 < r_min < r_max < 1.0):
        raise DomainError("grid range must satisfy 0 < r_min < r_max < 1")
    if points < 3:
        raise DomainError("need at least 3 grid points")
    return np.geomspace(r_min, r_max, points)


@dataclass(frozen=True)
class MonotoneVerdict:
    ok: bool
    strict: bool
    first_violation: Optional[int]
    min_forward_diff: float
    tol: float


@dataclass(frozen=True)
class ConvexVerdict:
    ok: bool
    worst_second_diff: float
    worst_index: Optional[int]
    loglog_applicable: bool
    loglog_ok: Optional[bool]
    loglog_worst: Optional[float]
    tol: float


@dataclass(frozen=True)
class GrowthCurve:
    """phi values over a radius grid with errors and convexity verdicts."""

    kind: str
    r_grid: tuple
    phi: tuple
    abs_errors: tuple
    normalization: str
    spec_hash: str
    verdicts: dict
    n: Optional[int] = None
    flags: tuple = ()


@dataclass(frozen=True)
class LimitCheck:
    kind: str
    value: float
    target: float
    abs_diff: float
    tol: float
    ok: bool


_NORMALIZATION = {
    "rad": "r",
    "diam": "2r",
    "ndiam": "n^(1/(n-1)) r",
    "cap": "r",
    "area": "pi r^2",
    "perim": "2 pi r",
}


def _functional_at(
    spec: FunctionSpec,
    kind: str,
    r: float,
    n: int,
    m: int,
    resolution: int,
    restarts: int,
    seed: int,
    area_method: str,
    quad_tol: float,
) -> FunctionalValue:
    if kind == "rad":
        return radius(spec, r, m=m)
    if kind == "diam":
        return diameter(spec, r, m=m)
    if kind == "ndiam":
        return n_diameter(spec, r, n, m=m, restarts=restarts, seed=seed)
    if kind == "cap":
        return capacity_bracket(
            spec, r, n=n, m=m, resolution=resolution, restarts=restarts,
            seed=seed, area_method=area_method,
        )
    if kind == "area":
        if area_method == "series":
            return area_univalent_series(spec, r)
        return area(spec, r, resolution=resolution)
    if kind == "perim":
        return circle_image_length(spec, r, quad_tol=quad_tol)
    raise DomainError(f"unknown functional kind {kind!r}")


def _normalizer(kind: str, r: float, n: int) -> float:
    if kind == "rad" or kind == "cap":
        return r
    if kind == "diam":
        return 2.0 * r
    if kind == "ndiam":
        return disk_n_diameter(n) * r
    if kind == "area":
        return np.pi * r * r
    if kind == "perim":
        return 2.0 * np.pi * r
    raise DomainError(f"unknown functional kind {kind!r}")


def phi_curve(
    spec: FunctionSpec,
    kind: str,
    r_grid: Optional[Sequence[float]] = None,
    *,
    n: int = 4,
    m: int = DEFAULT_SAMPLES,
    resolution: int = DEFAULT_RESOLUTION,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    area_method: str = "auto",
    quad_tol: float = 1e-10,
    jobs: int = 1,
) -> GrowthCurve:
    """Normalized growth curve of one functional kind over a radius grid.

    area_method "auto" uses the exact coefficient series when the spec is
    coefficient-backed and passes the sampled univalence check on the
    largest grid radius, otherwise the rasterizer.  The capacity curve
    takes the bracket's upper endpoint as its value, so its verdicts test
    the estimator, not the true capacity; the curve carries a
    cap_upper_estimate flag as a reminder.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown functional kind {kind!r}")
    grid = default_grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    if grid.size < 3 or np.any(np.diff(grid) <= 0.0):
        raise DomainError("r_grid must be strictly increasing with >= 3 points")
    if grid[0] <= 0.0 or grid[-1] >= 1.0:
        raise DomainError("r_grid must lie inside (0, 1)")

    flags: tuple = ()
    if kind in ("area", "cap") and area_method == "auto":
        series_ok = isinstance(spec, (Polynomial, PowerSeries)) and bool(
            is_univalent_sampled(spec, float(grid[-1]))
        )
        area_method = "series" if series_ok else "raster"
        flags = flags + (f"area_method={area_method}",)
    if kind == "cap":
        flags = flags + ("cap_upper_estimate",)

    def _point(r: float) -> FunctionalValue:
        return _functional_at(
            spec, kind, r, n, m, resolution, restarts, seed, area_method, quad_tol
        )

    # Points are independent; results are assembled in grid order, so the
    # output is identical for any job count.
    radii = [float(r) for r in grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_point, radii))
    else:
        values = [_point(r) for r in radii]

    phi = np.empty(grid.size)
    errs = np.empty(grid.size)
    for i, (r, fv) in enumerate(zip(radii, values)):
        norm = _normalizer(kind, r, n)
        if kind == "cap":
            phi[i] = fv.interval[1] / norm
            errs[i] = fv.abs_error / norm
        else:
            phi[i] = fv.value / norm
            errs[i] = fv.abs_error / norm

    curve = GrowthCurve(
        kind=kind,
        r_grid=tuple(float(r) for r in grid),
        phi=tuple(float(p) for p in phi),
        abs_errors=tuple(float(e) for e in errs),
        normalization=_NORMALIZATION[kind],
        spec_hash=spec_hash(spec),
        verdicts={},
        n=n if kind == "ndiam" or kind == "cap" else None,
        flags=flags,
    )
    tol_mono = 3.0 * float(np.max(errs[:-1] + errs[1:]))
    mono = check_monotone(curve, tol_mono)
    verdicts = {
        "monotone": {
            "ok": mono.ok,
            "strict": mono.strict,
            "min_forward_diff": mono.min_forward_diff,
            "tol": mono.tol,
        }
    }
    log_uniform = _log_spacing_uniform(grid)
    if log_uniform and np.all(phi > 0.0):
        rel = errs / phi
        tol_conv = 3.0 * float(np.max(rel[:-2] + 2.0 * rel[1:-1] + rel[2:]))
        conv = check_log_convex(curve, tol_conv)
        verdicts["log_convex"] = {
            "ok": conv.ok,
            "worst_second_diff": conv.worst_second_diff,
            "tol": conv.tol,
        }
        verdicts["loglog_convex"] = {
            "applicable": conv.loglog_applicable,
            "ok": conv.loglog_ok,
            "worst_second_diff": conv.loglog_worst,
        }
    elif np.all(phi == 0.0):
        verdicts["log_convex"] = {"ok": True, "worst_second_diff": 0.0, "tol": 0.0}
        verdicts["loglog_convex"] = {"applicable": False, "ok": None, "worst_second_diff": None}
    curve.verdicts.update(verdicts)
    return curve


def _log_spacing_uniform(grid: np.ndarray, rel_tol: float = 1e-9) -> bool:
    steps = np.diff(np.log(grid))
    return bool(np.max(np.abs(steps - steps[0])) <= rel_tol * abs(steps[0]))


def check_monotone(curve: GrowthCurve, tol: float) -> MonotoneVerdict:
    """Non-decreasing within tol; strict when every forward step beats tol."""
    phi = np.asarray(curve.phi)
    diffs = np.diff(phi)
    ok = bool(np.all(diffs >= -tol))
    first = None
    if not ok:
        first = int(np.nonzero(diffs < -tol)[0][0])
    strict = bool(np.all(diffs > tol))
    return MonotoneVerdict(
        ok=ok, strict=strict, first_violation=first,
        min_forward_diff=float(np.min(diffs)), tol=tol,
    )


def check_log_convex(curve: GrowthCurve, tol: float) -> ConvexVerdict:
    """Second differences of log phi against log r are >= -tol.

    Requires a geometric grid (uniform log spacing within 1e-9), which
    turns convexity in log r into a plain second-difference sign test.
    Also reports convexity of log log phi when phi > 1 throughout.
    """
    grid = np.asarray(curve.r_grid)
    if not _log_spacing_uniform(grid):
        raise GridError("log-convexity check needs a geometric radius grid")
    phi = np.asarray(curve.phi)
    if np.any(phi <= 0.0):
        if np.all(phi == 0.0):
            return ConvexVerdict(True, 0.0, None, False, None, None, tol)
        raise DomainError("phi must be positive for log-convexity checks")
    logphi = np.log(phi)
    second = logphi[2:] - 2.0 * logphi[1:-1] + logphi[:-2]
    worst_idx = int(np.argmin(second)) + 1
    worst = float(np.min(second))
    ok = bool(worst >= -tol)
    loglog_applicable = bool(np.all(phi > 1.0))
    loglog_ok = None
    loglog_worst = None
    if loglog_applicable:
        ll = np.log(logphi)
        second_ll = ll[2:] - 2.0 * ll[1:-1] + ll[:-2]
        loglog_worst = float(np.min(second_ll))
        loglog_ok = bool(loglog_worst >= -tol)
    return ConvexVerdict(
        ok=ok, worst_second_diff=worst, worst_index=worst_idx,
        loglog_applicable=loglog_applicable, loglog_ok=loglog_ok,
        loglog_worst=loglog_worst, tol=tol,
    )


def limit_at_zero(spec: FunctionSpec, kind: str, **knobs) -> LimitCheck:
    """phi at r = 1e-3 against the analytic limit |f'(0)| (its square for
    area).  The comparison allows one percent relative slack to absorb
    the genuine O(r) deviation at the probe radius."""
    if kind not in KINDS:
        raise DomainError(f"unknown functional kind {kind!r}")
    target = abs(complex(derivative(spec, 0.0)))
    if kind == "area":
        target = target * target
    r = LIMIT_RADIUS
    fv = _functional_at(
        spec, kind, r,
        n=knobs.get("n", 4), m=knobs.get("m", DEFAULT_SAMPLES),
        resolution=knobs.get("resolution", DEFAULT_RESOLUTION),
        restarts=knobs.get("restarts", DEFAULT_RESTARTS),
        seed=knobs.get("seed", 0),
        area_method=knobs.get("area_method", "auto" if kind != "area" else "raster"),
        quad_tol=knobs.get("quad_tol", 1e-10),
    )
    value = (fv.interval[1] if kind == "cap" else fv.value) / _normalizer(
        kind, r, knobs.get("n", 4)
    )
    tol = LIMIT_REL_TOL * (1.0 + abs(target)) + 3.0 * fv.abs_error / _normalizer(
        kind, r, knobs.get("n", 4)
    )
    diff = abs(value - target)
    return LimitCheck(kind=kind, value=value, target=target, abs_diff=diff, tol=tol,
                      ok=bool(diff <= tol))


def write_curve_csv(curve: GrowthCurve, path_or_file) -> None:
    """Serialize a curve to CSV with columns r, phi, abs_error."""

    def _write(handle) -> None:
        writer = csv.writer(handle)
        writer.writerow([f"kind={curve.kind}", f"spec={curve.spec_hash}"])
        writer.writerow(["r", "phi", "abs_error"])
        for r, p, e in zip(curve.r_grid, curve.phi, curve.abs_errors):
            writer.writerow([f"{r:.17g}", f"{p:.17g}", f"{e:.17g}"])

    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        with open(path_or_file, "w", newline="") as handle:
            _write(handle)
    else:
        _write(path_or_file)

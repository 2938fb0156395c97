"""Gromov width and cube capacity of convex or concave toric domains.

For such domains both capacities are read off the moment region:

    c_1(X_Ω)   = max{ r : r·Ω_1 ⊂ Ω }   (largest simplex {Σx_i < r} inside Ω)
    c_inf(X_Ω) = max{ r : r·Ω_inf ⊂ Ω } (largest cube [0, r[^n inside Ω)

Since Ω satisfies the box condition, the cube fits iff its far corner does,
so c_inf is the gauge along (1, …, 1).  The simplex fits iff every ray meets
the boundary beyond the simplex face, so c_1 is the minimum of the gauge over
simplex-normalised directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CapacityDomainError
from .region import (
    Box,
    LpBall,
    RegionSpec,
    direction_grid,
    effective_flags,
    gauges,
    minimize_over_simplex,
    validate_flags,
)


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    DIAGONAL_GAUGE = "diagonal_gauge"
    SIMPLEX_MIN_GAUGE = "simplex_min_gauge"


@dataclass(frozen=True)
class CapacityReport:
    c1: float
    c_infinity: float
    method: Method
    c_infinity_method: Method
    error_bound: float
    c1_error: float = 0.0
    c_infinity_error: float = 0.0

    def to_json(self):
        return {
            "c1": self.c1,
            "c_infinity": self.c_infinity,
            "method": self.method.value,
            "c_infinity_method": self.c_infinity_method.value,
            "error_bound": self.error_bound,
            "c1_error": self.c1_error,
            "c_infinity_error": self.c_infinity_error,
        }


def require_capacity_domain(region: RegionSpec) -> frozenset:
    """Return the validated flags, or refuse if the formulas do not apply."""
    flags = effective_flags(region)
    if "balanced" in flags and flags & {"convex", "concave"}:
        return flags
    report = validate_flags(region)
    failed = [c.flag for c in report.checks if c.claimed and not c.passed]
    detail = f"; claims that failed validation: {failed}" if failed else ""
    raise CapacityDomainError(
        "capacity formulas hold only for convex or concave toric domains; "
        f"validated flags are {sorted(flags)}{detail}"
    )


def _gromov_width(region, numeric=False, grid_size=None):
    flags = require_capacity_domain(region)
    kind = region.kind
    if not numeric:
        if isinstance(kind, LpBall):
            return kind.radius, 0.0, Method.CLOSED_FORM
        if isinstance(kind, Box):
            return min(kind.half_widths), 0.0, Method.CLOSED_FORM
    how = "bisect" if numeric else "auto"
    n = region.dim
    if "convex" in flags:
        # 1/g is convex on the simplex, so g is minimal at a vertex
        values, err = gauges(region, np.eye(n), how)
        return float(values.min()), err, Method.SIMPLEX_MIN_GAUGE
    grid = direction_grid(n, grid_size, symmetric="symmetric" in flags)
    errs = [0.0]

    def g(d):
        v, e = gauges(region, d, how)
        errs.append(e)
        return v

    found = minimize_over_simplex(g, n, grid)
    return found.value, max(errs) + found.spread, Method.SIMPLEX_MIN_GAUGE


def _cube_capacity(region, numeric=False):
    require_capacity_domain(region)
    kind = region.kind
    n = region.dim
    if not numeric:
        if isinstance(kind, LpBall):
            return kind.radius * n ** (-1.0 / kind.p), 0.0, Method.CLOSED_FORM
        if isinstance(kind, Box):
            return min(kind.half_widths), 0.0, Method.CLOSED_FORM
    values, err = gauges(region, np.ones((1, n)), "bisect" if numeric else "auto")
    return float(values[0]), err, Method.DIAGONAL_GAUGE


def gromov_width(region: RegionSpec, *, numeric: bool = False, grid_size: int | None = None) -> float:
    """c_1 of the toric domain over ``region``.

    ``numeric=True`` skips closed forms and bisects the membership predicate.
    Raises :class:`CapacityDomainError` unless the region is a validated
    convex or concave balanced region.
    """
    return _gromov_width(region, numeric, grid_size)[0]


def cube_capacity(region: RegionSpec, *, numeric: bool = False) -> float:
    """c_inf of the toric domain over ``region``: its diagonal gauge."""
    return _cube_capacity(region, numeric)[0]


def capacities(region: RegionSpec, *, numeric: bool = False, grid_size: int | None = None) -> CapacityReport:
    c1, e1, m1 = _gromov_width(region, numeric, grid_size)
    cb, eb, mb = _cube_capacity(region, numeric)
    return CapacityReport(c1, cb, m1, mb, max(e1, eb), e1, eb)


@dataclass(frozen=True)
class Obstruction:
    """A capacity of the source exceeds the same capacity of the target.

    By monotonicity of capacities this rules out any symplectic embedding.
    """

    which: str
    inner_value: float
    outer_value: float
    error_bound: float

    def to_json(self):
        return {
            "type": "capacity_obstruction",
            "which": self.which,
            "inner_value": self.inner_value,
            "outer_value": self.outer_value,
            "error_bound": self.error_bound,
        }


def capacity_monotonicity_certificate(
    inner: RegionSpec, outer: RegionSpec, *, numeric: bool = False
) -> Obstruction | None:
    """Obstruction to ``X_inner ↪ X_outer`` from c_1 or c_inf, or None.

    Fires only when the gap strictly exceeds the summed error bounds (plus a
    relative rounding floor).
    """
    a = capacities(inner, numeric=numeric)
    b = capacities(outer, numeric=numeric)
    pairs = (
        ("c1", a.c1, b.c1, a.c1_error + b.c1_error),
        ("c_inf", a.c_infinity, b.c_infinity, a.c_infinity_error + b.c_infinity_error),
    )
    for which, vi, vo, err in pairs:
        floor = 1e-12 * max(abs(vi), abs(vo), 1.0)
        if vi - vo > err + floor:
            return Obstruction(which, vi, vo, err)
    return None


def lp_cube_capacity(n: int, p: float, radius: float = 1.0) -> float:
    """Closed form n^{-1/p}·radius, with 1/inf = 0."""
    return radius * (1.0 if math.isinf(p) else n ** (-1.0 / p))


__all__ = [
    "CapacityReport",
    "Method",
    "Obstruction",
    "capacities",
    "capacity_monotonicity_certificate",
    "cube_capacity",
    "gromov_width",
    "lp_cube_capacity",
    "require_capacity_domain",
]

"""Balanced regions through their positive parts.

A balanced region ``A`` of R^n is determined by ``|A| = A ∩ R^n_{>=0}``, so a
:class:`RegionSpec` always describes the open set ``Ω = |A|``.  Every Ω here
satisfies the box condition ``x ∈ Ω ⇒ [0,x_1]×…×[0,x_n] ⊂ Ω`` and is therefore
star-shaped about the origin; most questions reduce to the radial gauge

    g_Ω(u) = sup{ t >= 0 : t·u ∈ Ω }.

Regions are open: boundary points are outside.  Floating point cannot decide
openness, so :func:`classify_point` reports points within ``tol`` of the
boundary separately.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable, ClassVar, Sequence

import numpy as np
from scipy.interpolate import LinearNDInterpolator
from scipy.stats import qmc

from .errors import GaugeError, RegionError

FLAGS = ("balanced", "symmetric", "convex", "concave")

BOUNDARY_TOL = 1e-9
GAUGE_TOL = 1e-12
MAX_BISECT = 200
CURVE_TOL = 1e-12


def _p_to_json(p):
    return "inf" if math.isinf(p) else p


def _p_from_json(value):
    if isinstance(value, str):
        if value.lower() in ("inf", "infinity", "∞"):
            return math.inf
        raise RegionError(f"bad exponent {value!r}")
    return float(value)


def lp_norm(points, p):
    points = np.asarray(points, dtype=float)
    if math.isinf(p):
        return np.abs(points).max(axis=-1)
    if p == 1:
        return np.abs(points).sum(axis=-1)
    if p == 2:
        return np.sqrt((points * points).sum(axis=-1))
    # scale first so large p does not overflow
    peak = np.abs(points).max(axis=-1)
    safe = np.where(peak > 0, peak, 1.0)
    ratio = np.abs(points) / safe[..., None]
    return np.where(peak > 0, safe * (ratio**p).sum(axis=-1) ** (1.0 / p), 0.0)


# --------------------------------------------------------------------------
# region kinds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LpBall:
    """Positive part of the open L^p ball of the given radius."""

    p: float
    radius: float = 1.0

    type_name: ClassVar[str] = "lp_ball"

    def __post_init__(self):
        if not (self.p >= 1):
            raise RegionError(f"L^p exponent must lie in [1, inf], got {self.p}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise RegionError(f"radius must be positive and finite, got {self.radius}")

    def check_dim(self, n):
        pass

    def bbox(self, n):
        return np.full(n, self.radius)

    def margin(self, points):
        return self.radius - lp_norm(points, self.p)

    def gauge(self, dirs):
        return self.radius / lp_norm(dirs, self.p)

    def scaled(self, r):
        return LpBall(self.p, self.radius * r)

    def natural_flags(self, n):
        flags = {"balanced", "symmetric", "convex"}
        if self.p == 1 or n == 1:
            flags.add("concave")
        return frozenset(flags)

    def to_json(self):
        return {"type": self.type_name, "p": _p_to_json(self.p), "radius": self.radius}


@dataclass(frozen=True)
class Box:
    """Positive part of an axis-aligned box: ``{0 <= x_i < a_i}``."""

    half_widths: tuple

    type_name: ClassVar[str] = "box"

    def __post_init__(self):
        widths = tuple(float(a) for a in self.half_widths)
        if not widths or any(not (a > 0 and math.isfinite(a)) for a in widths):
            raise RegionError(f"half widths must be positive, got {self.half_widths}")
        object.__setattr__(self, "half_widths", widths)

    def check_dim(self, n):
        if len(self.half_widths) != n:
            raise RegionError(f"box has {len(self.half_widths)} half widths, dimension is {n}")

    def bbox(self, n):
        return np.array(self.half_widths)

    def margin(self, points):
        return (np.array(self.half_widths) - np.asarray(points)).min(axis=-1)

    def gauge(self, dirs):
        dirs = np.asarray(dirs, dtype=float)
        with np.errstate(divide="ignore"):
            ratios = np.where(dirs > 0, np.array(self.half_widths) / dirs, np.inf)
        return ratios.min(axis=-1)

    def scaled(self, r):
        return Box(tuple(a * r for a in self.half_widths))

    def natural_flags(self, n):
        flags = {"balanced", "convex"}
        if len(set(self.half_widths)) == 1:
            flags.add("symmetric")
        if n == 1:
            flags.add("concave")
        return frozenset(flags)

    def to_json(self):
        return {"type": self.type_name, "half_widths": list(self.half_widths)}


@dataclass(frozen=True)
class BoundaryCurve:
    """Graph-like curve α ↦ (x(α), y(α)) with x increasing and y decreasing.

    Endpoints must be ``(0, y_max)`` and ``(x_max, 0)``; the region is the part
    of the quadrant below the curve.
    """

    name: str
    x: Callable
    y: Callable
    alpha_range: tuple
    x_max: float
    y_max: float


def _bidisk_x(alpha):
    return 2.0 * (np.sin(alpha) - alpha * np.cos(alpha))


def _bidisk_y(alpha):
    return 2.0 * (np.sin(alpha) + (np.pi - alpha) * np.cos(alpha))


CURVES = {
    "bidisk": BoundaryCurve(
        name="bidisk",
        x=_bidisk_x,
        y=_bidisk_y,
        alpha_range=(0.0, math.pi),
        x_max=2.0 * math.pi,
        y_max=2.0 * math.pi,
    ),
}


@dataclass(frozen=True)
class MonotoneBoundary2D:
    """Planar region under a named monotone boundary curve, scaled by ``scale``.

    Membership of (a, b) solves x(α) = a/scale by bisection on α and accepts
    iff b < scale·y(α).  No closed-form gauge: rays are bisected.
    """

    curve: str
    scale: float = 1.0

    type_name: ClassVar[str] = "monotone_boundary_2d"

    def __post_init__(self):
        if self.curve not in CURVES:
            raise RegionError(f"unknown boundary curve {self.curve!r}; known: {sorted(CURVES)}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise RegionError(f"scale must be positive, got {self.scale}")

    @property
    def spec(self) -> BoundaryCurve:
        return CURVES[self.curve]

    def check_dim(self, n):
        if n != 2:
            raise RegionError("monotone boundary regions are planar (dimension 2)")

    def bbox(self, n):
        c = self.spec
        return np.array([c.x_max, c.y_max]) * self.scale

    def alpha_for_x(self, a):
        """Solve x(α) = a for each entry of ``a`` (unscaled curve units)."""
        c = self.spec
        lo = np.full(np.shape(a), c.alpha_range[0])
        hi = np.full(np.shape(a), c.alpha_range[1])
        steps = math.ceil(math.log2((c.alpha_range[1] - c.alpha_range[0]) / CURVE_TOL))
        for _ in range(min(steps, MAX_BISECT)):
            mid = 0.5 * (lo + hi)
            below = c.x(mid) < a
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def margin(self, points):
        points = np.asarray(points, dtype=float)
        c = self.spec
        a = points[..., 0] / self.scale
        b = points[..., 1] / self.scale
        inside_x = a < c.x_max
        alpha = self.alpha_for_x(np.where(inside_x, a, 0.0))
        m = c.y(alpha) - b
        return self.scale * np.where(inside_x, m, np.minimum(m, c.x_max - a))

    def gauge(self, dirs):
        return None

    def scaled(self, r):
        return MonotoneBoundary2D(self.curve, self.scale * r)

    def natural_flags(self, n):
        return frozenset()

    def to_json(self):
        return {"type": self.type_name, "curve": self.curve, "scale": self.scale}


@dataclass(frozen=True)
class GaugeTable:
    """Region given by sampled gauge values on simplex directions.

    Directions are normalised to the simplex; the gauge is interpolated
    piecewise linearly in simplex coordinates (np.interp for n = 2, a Delaunay
    triangulation above).  This is a model of a region, only as accurate as
    the table it came from.
    """

    directions: tuple
    values: tuple

    type_name: ClassVar[str] = "gauge_table"

    def __post_init__(self):
        dirs = np.asarray(self.directions, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if dirs.ndim != 2 or len(dirs) != len(vals) or len(vals) == 0:
            raise RegionError("gauge table needs an (m, n) direction array and m values")
        if np.any(dirs < 0) or np.any(dirs.sum(axis=1) <= 0):
            raise RegionError("gauge table directions must be nonnegative and nonzero")
        if np.any(~np.isfinite(vals)) or np.any(vals <= 0):
            raise RegionError("gauge table values must be positive and finite")
        dirs = dirs / dirs.sum(axis=1, keepdims=True)
        object.__setattr__(self, "directions", tuple(map(tuple, dirs.tolist())))
        object.__setattr__(self, "values", tuple(vals.tolist()))

    @cached_property
    def _interpolant(self):
        dirs = np.asarray(self.directions)
        vals = np.asarray(self.values)
        n = dirs.shape[1]
        if n == 1:
            return lambda u: np.full(len(u), vals.max())
        if n == 2:
            order = np.argsort(dirs[:, 0])
            xs, ys = dirs[order, 0], vals[order]
            if xs[0] > 0 or xs[-1] < 1:
                raise RegionError("2-D gauge table must contain both axis directions")
            return lambda u: np.interp(u[:, 0], xs, ys)
        interp = LinearNDInterpolator(dirs[:, :-1], vals)

        def evaluate(u):
            out = interp(u[:, :-1])
            if np.any(np.isnan(out)):
                raise RegionError("direction outside the gauge table's triangulation")
            return out

        return evaluate

    def check_dim(self, n):
        if len(self.directions[0]) != n:
            raise RegionError("gauge table directions do not match the dimension")

    def bbox(self, n):
        # gauge on raw direction e_i equals the table value at the vertex
        return self.gauge(np.eye(n)) * (1 + 1e-12)

    def gauge(self, dirs):
        dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
        s = dirs.sum(axis=1)
        return self._interpolant(dirs / s[:, None]) / s

    def margin(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        s = points.sum(axis=1)
        u = np.where(s[:, None] > 0, points / np.where(s > 0, s, 1.0)[:, None], 1.0 / points.shape[1])
        return self._interpolant(u) - s

    def scaled(self, r):
        return GaugeTable(self.directions, tuple(v * r for v in self.values))

    def natural_flags(self, n):
        return frozenset()

    def to_json(self):
        return {"type": self.type_name, "directions": [list(d) for d in self.directions], "values": list(self.values)}


KINDS = {k.type_name: k for k in (LpBall, Box, MonotoneBoundary2D, GaugeTable)}


@dataclass(frozen=True)
class RegionSpec:
    """An open region Ω ⊂ R^n_{>=0} satisfying the box condition.

    ``flags`` are *claims*; :func:`validate_flags` checks them by sampling and
    :func:`effective_flags` keeps only the claims that survive.
    """

    dim: int
    kind: LpBall | Box | MonotoneBoundary2D | GaugeTable
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise RegionError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        flags = frozenset(self.flags)
        unknown = flags - set(FLAGS)
        if unknown:
            raise RegionError(f"unknown flags {sorted(unknown)}")
        object.__setattr__(self, "flags", flags)
        self.kind.check_dim(self.dim)

    def bbox(self):
        return self.kind.bbox(self.dim)


@dataclass(frozen=True)
class Direction:
    """A ray direction in the closed positive orthant."""

    components: tuple
    normalization: str = "raw"

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=float)
        if comps.ndim != 1 or np.any(comps < 0) or not np.any(comps > 0):
            raise RegionError("direction components must be nonnegative and not all zero")
        if self.normalization not in ("raw", "simplex"):
            raise RegionError(f"unknown normalization {self.normalization!r}")
        if self.normalization == "simplex":
            comps = comps / comps.sum()
        object.__setattr__(self, "components", tuple(comps.tolist()))

    @classmethod
    def simplex(cls, components):
        return cls(tuple(components), "simplex")

    @classmethod
    def axis(cls, n, i):
        comps = [0.0] * n
        comps[i] = 1.0
        return cls(tuple(comps), "simplex")

    def as_array(self):
        return np.array(self.components)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def lp_ball(n, p, radius=1.0):
    kind = LpBall(float(p), float(radius))
    return RegionSpec(n, kind, kind.natural_flags(n))


def box(half_widths):
    kind = Box(tuple(half_widths))
    n = len(kind.half_widths)
    return RegionSpec(n, kind, kind.natural_flags(n))


def gauge_table(directions, values, flags=()):
    kind = GaugeTable(tuple(map(tuple, np.asarray(directions, dtype=float).tolist())), tuple(values))
    return RegionSpec(len(kind.directions[0]), kind, frozenset(flags))


def scale(region: RegionSpec, r: float) -> RegionSpec:
    """Return ``r·Ω``; every gauge scales by ``r``."""
    if not (r > 0 and math.isfinite(r)):
        raise RegionError(f"scale factor must be positive, got {r}")
    return RegionSpec(region.dim, region.kind.scaled(float(r)), region.flags)


# --------------------------------------------------------------------------
# membership
# --------------------------------------------------------------------------


def _points(region, point):
    pts = np.asarray(point, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != region.dim:
        raise RegionError(f"expected points of dimension {region.dim}, got shape {np.shape(point)}")
    if np.any(pts < 0) or np.any(np.isnan(pts)):
        raise RegionError("points of a positive part must have nonnegative coordinates")
    return pts, single


def membership_margin(region: RegionSpec, point) -> np.ndarray | float:
    """Signed slack of ``point``: positive inside, negative outside.

    The scale is that of the kind's defining inequality, not a Euclidean
    distance.
    """
    pts, single = _points(region, point)
    m = np.asarray(region.kind.margin(pts), dtype=float)
    return float(m[0]) if single else m


def contains(region: RegionSpec, point) -> bool | np.ndarray:
    """True iff the point lies in the open region (boundary counts as outside).

    Accepts a single point or an ``(m, n)`` array of points.
    """
    m = membership_margin(region, point)
    return bool(m > 0) if np.ndim(m) == 0 else m > 0


def contains_balanced(region: RegionSpec, point) -> bool | np.ndarray:
    """Membership in the full balanced region A, from any signed point."""
    return contains(region, np.abs(np.asarray(point, dtype=float)))


class PointClass(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


def classify_point(region: RegionSpec, point, tol: float = BOUNDARY_TOL) -> PointClass:
    m = membership_margin(region, point)
    if abs(m) <= tol:
        return PointClass.BOUNDARY
    return PointClass.INSIDE if m > 0 else PointClass.OUTSIDE


# --------------------------------------------------------------------------
# radial gauge
# --------------------------------------------------------------------------


def _directions(region, dirs):
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if dirs.shape[1] != region.dim:
        raise RegionError(f"expected directions of dimension {region.dim}, got {dirs.shape[1]}")
    if np.any(dirs < 0) or np.any(dirs.max(axis=1) <= 0):
        raise RegionError("directions must be nonnegative and nonzero")
    return dirs


def _bisect_gauge(region, dirs):
    box_ = region.bbox()
    with np.errstate(divide="ignore", over="ignore"):
        hi = np.where(dirs > 0, box_ / dirs, np.inf).min(axis=1)
    # pad so rounding cannot put the bracket end a few ulp inside the box
    hi = hi * (1.0 + 1e-9)
    if np.any(region.kind.margin(hi[:, None] * dirs) > 0):
        bad = np.flatnonzero(region.kind.margin(hi[:, None] * dirs) > 0)
        raise GaugeError(
            "bounding box does not enclose the region",
            {"directions": dirs[bad].tolist(), "upper": hi[bad].tolist()},
        )
    lo = np.zeros_like(hi)
    steps = math.ceil(math.log2(max(float(hi.max()), GAUGE_TOL) / GAUGE_TOL)) + 1
    for _ in range(min(steps, MAX_BISECT)):
        mid = 0.5 * (lo + hi)
        inside = region.kind.margin(mid[:, None] * dirs) > 0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    width = hi - lo
    if np.any(width > GAUGE_TOL):
        worst = int(np.argmax(width))
        raise GaugeError(
            "gauge bisection did not converge",
            {"direction": dirs[worst].tolist(), "bracket": [lo[worst], hi[worst]], "iterations": MAX_BISECT},
        )
    return 0.5 * (lo + hi)


def gauges(region: RegionSpec, dirs, method: str = "auto") -> tuple[np.ndarray, float]:
    """Vectorised gauge on the rows of ``dirs`` plus an absolute error bound.

    ``method="bisect"`` ignores any closed form and bisects the membership
    predicate along each ray.
    """
    dirs = _directions(region, dirs)
    if method not in ("auto", "closed", "bisect"):
        raise ValueError(f"unknown gauge method {method!r}")
    if method != "bisect":
        closed = region.kind.gauge(dirs)
        if closed is not None:
            return np.asarray(closed, dtype=float), 0.0
        if method == "closed":
            raise RegionError(f"{region.kind.type_name} regions have no closed-form gauge")
    return _bisect_gauge(region, dirs), GAUGE_TOL


def radial_gauge(region: RegionSpec, direction, method: str = "auto") -> float:
    """``sup{t >= 0 : t·u ∈ Ω}`` for a single direction ``u``."""
    if isinstance(direction, Direction):
        direction = direction.as_array()
    values, _ = gauges(region, np.asarray(direction, dtype=float)[None, :], method)
    return float(values[0])


def has_closed_gauge(region: RegionSpec) -> bool:
    return region.kind.gauge(np.eye(region.dim)) is not None


# --------------------------------------------------------------------------
# direction grids and minimisation over the simplex
# --------------------------------------------------------------------------


def direction_grid(n: int, size: int | None = None, symmetric: bool = False) -> np.ndarray:
    """Deterministic grid on the standard simplex.

    Vertices come first, then the barycentre, then a Halton sequence mapped to
    the simplex by sorted spacings.  ``symmetric`` folds every point into the
    order cell u_1 >= … >= u_n.
    """
    if n == 1:
        return np.ones((1, 1))
    size = 512 * n if size is None else int(size)
    if size < 1:
        raise ValueError("grid size must be positive")
    cube = qmc.Halton(d=n - 1, scramble=False).random(size + 1)[1:]
    cuts = np.sort(cube, axis=1)
    edges = np.hstack([np.zeros((size, 1)), cuts, np.ones((size, 1))])
    interior = np.diff(edges, axis=1)
    grid = np.vstack([np.eye(n), np.full((1, n), 1.0 / n), interior])
    if symmetric:
        grid = -np.sort(-grid, axis=1)
        _, first = np.unique(np.round(grid, 15), axis=0, return_index=True)
        grid = grid[np.sort(first)]
    return grid


@dataclass(frozen=True)
class SimplexMin:
    direction: np.ndarray
    value: float
    step: float
    spread: float
    evaluations: int


def _compass_moves(n):
    moves = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = np.zeros(n)
                m[i], m[j] = 1.0, -1.0
                moves.append(m)
    return np.array(moves)


TIE = 1e-13


def _compass(f, U, V, h0, h_min=1e-11, max_iter=2000):
    """Multi-start compass search; all starts share one ``f`` call per sweep.

    Moves are u + s(e_i - e_j) with s = min(h, u_j), so iterates stay on the
    simplex and can reach its faces exactly.
    """
    k, n = U.shape
    moves = _compass_moves(n)
    m = len(moves)
    H = np.full(k, h0)
    spread = np.zeros(k)
    evals = 0
    src = np.argmax(moves < 0, axis=1)
    for _ in range(max_iter):
        active = np.flatnonzero(H >= h_min)
        if len(active) == 0:
            break
        steps = np.minimum(H[active, None], U[active][:, src])
        cands = U[active][:, None, :] + steps[:, :, None] * moves[None, :, :]
        cands = np.maximum(cands, 0.0)
        valid = steps > 0
        flat = cands.reshape(-1, n)
        vals = np.full(flat.shape[0], np.inf)
        ok = valid.reshape(-1)
        if not ok.any():
            break
        vals[ok] = f(flat[ok])
        evals += int(ok.sum())
        vals = vals.reshape(len(active), m)
        best = np.argmin(vals, axis=1)
        for row, idx in enumerate(active):
            finite = np.isfinite(vals[row])
            spread[idx] = float(np.max(np.abs(vals[row][finite] - V[idx]))) if finite.any() else 0.0
            v = vals[row, best[row]]
            if v < V[idx] - TIE * max(1.0, abs(V[idx])):
                U[idx] = cands[row, best[row]]
                V[idx] = v
            else:
                H[idx] *= 0.5
    return U, V, H, spread, evals


def minimize_over_simplex(f, n, grid=None, starts=4) -> SimplexMin:
    """Minimise a vectorised ``f`` over simplex directions.

    Grid scan followed by a compass search from the best ``starts`` grid
    points.  This is a local search: a global minimum is only found if the
    grid resolves its basin.  Ties resolve to the earliest grid point.
    """
    grid = direction_grid(n) if grid is None else grid
    vals = np.asarray(f(grid), dtype=float)
    # values within TIE of each other count as equal, so ties go to grid order
    key = np.round((vals - vals.min()) / (TIE * max(1.0, abs(vals.min()))))
    order = np.lexsort((np.arange(len(vals)), key))
    if n == 1:
        return SimplexMin(grid[order[0]].copy(), float(vals[order[0]]), 0.0, 0.0, len(grid))
    picks = order[:starts]
    h0 = len(grid) ** (-1.0 / (n - 1))
    U, V, H, spread, evals = _compass(f, grid[picks].copy(), vals[picks].copy(), h0)
    i = int(np.flatnonzero(V <= V.min() + TIE * max(1.0, abs(V.min())))[0])
    return SimplexMin(U[i], float(V[i]), float(H[i]), float(spread[i]), len(grid) + evals)


# --------------------------------------------------------------------------
# inclusion
# --------------------------------------------------------------------------


class Inclusion(str, Enum):
    INCLUDED = "Included"
    NOT_INCLUDED = "NotIncluded"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class InclusionResult:
    status: Inclusion
    min_margin: float
    direction: tuple
    witness: tuple | None
    touching: bool
    grid_size: int
    error_bound: float

    def __bool__(self):
        return self.status is Inclusion.INCLUDED

    def to_json(self):
        return {
            "status": self.status.value,
            "min_margin": self.min_margin,
            "direction": list(self.direction),
            "witness": None if self.witness is None else list(self.witness),
            "touching": self.touching,
            "grid_size": self.grid_size,
            "error_bound": self.error_bound,
        }


def includes(
    inner: RegionSpec,
    outer: RegionSpec,
    tol: float = 1e-6,
    *,
    grid_size: int | None = None,
    boundary_tol: float = BOUNDARY_TOL,
) -> InclusionResult:
    """Semidecide ``inner ⊂ outer`` by gauge dominance over simplex directions.

    For star-shaped open sets inclusion is equivalent to g_inner <= g_outer
    everywhere, so a tangency (margin 0) still counts as inclusion.  The
    margin is relative, g_outer/g_inner - 1, which makes it independent of
    how directions are normalised.

    * worst margin >= -(boundary_tol + gauge error): ``Included``
    * worst margin < -tol and a witness point checks out: ``NotIncluded``
    * anything in between: ``Inconclusive``
    """
    if inner.dim != outer.dim:
        raise RegionError(f"dimension mismatch: {inner.dim} vs {outer.dim}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = inner.dim
    symmetric = "symmetric" in effective_flags(inner) and "symmetric" in effective_flags(outer)
    grid = direction_grid(n, grid_size, symmetric)
    errs = []

    def margin(d):
        go, eo = gauges(outer, d)
        gi, ei = gauges(inner, d)
        errs.append(float(np.max((eo + ei) / gi)))
        return go / gi - 1.0

    found = minimize_over_simplex(margin, n, grid)
    err = max(errs)
    u = found.direction
    m = found.value
    common = dict(min_margin=m, direction=tuple(u.tolist()), grid_size=len(grid), error_bound=err)
    if m >= -(boundary_tol + err):
        return InclusionResult(Inclusion.INCLUDED, witness=None, touching=m <= boundary_tol + err, **common)
    if m < -tol - err:
        gi = gauges(inner, u[None, :])[0][0]
        go = gauges(outer, u[None, :])[0][0]
        witness = 0.5 * (gi + go) * u
        if contains(inner, witness) and not contains(outer, witness):
            return InclusionResult(Inclusion.NOT_INCLUDED, witness=tuple(witness.tolist()), touching=False, **common)
    return InclusionResult(Inclusion.INCONCLUSIVE, witness=None, touching=False, **common)


# --------------------------------------------------------------------------
# flag validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FlagCheck:
    flag: str
    claimed: bool
    passed: bool
    samples: int
    counterexample: tuple | None = None

    def to_json(self):
        return {
            "flag": self.flag,
            "claimed": self.claimed,
            "passed": self.passed,
            "samples": self.samples,
            "counterexample": None if self.counterexample is None else [list(p) for p in self.counterexample],
        }


@dataclass(frozen=True)
class FlagReport:
    checks: tuple

    def __getitem__(self, flag) -> FlagCheck:
        for c in self.checks:
            if c.flag == flag:
                return c
        raise KeyError(flag)

    @property
    def ok(self) -> bool:
        """True when every claimed flag passed."""
        return all(c.passed for c in self.checks if c.claimed)

    def to_json(self):
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _sample_members(region, rng, count, tol):
    hi = region.bbox()
    found = []
    total = 0
    for _ in range(50):
        pts = rng.uniform(0.0, 1.0, size=(4 * count, region.dim)) * hi
        keep = pts[region.kind.margin(pts) > tol]
        found.append(keep)
        total += len(keep)
        if total >= count:
            break
    return np.vstack(found)[:count]


def _sample_nonmembers(region, rng, count, tol):
    hi = 1.5 * region.bbox()
    pts = rng.uniform(0.0, 1.0, size=(8 * count, region.dim)) * hi
    return pts[region.kind.margin(pts) < -tol][:count]


def _first_failure(bad, *arrays):
    idx = np.flatnonzero(bad)
    if len(idx) == 0:
        return None
    i = idx[0]
    return tuple(tuple(a[i].tolist()) for a in arrays)


def validate_flags(region: RegionSpec, sample_budget: int = 2000, seed: int = 0, tol: float = BOUNDARY_TOL) -> FlagReport:
    """Stochastic check of the four region properties.

    Every flag is checked; ``claimed`` records whether the region asserts it.
    A failure carries the sampled point and the point that broke the rule.
    Violations count only when they clear the boundary tolerance.
    """
    if sample_budget < 1:
        raise ValueError("sample_budget must be at least 1")
    rng = np.random.default_rng(seed)
    margin = region.kind.margin
    n = region.dim
    members = _sample_members(region, rng, sample_budget, tol)
    checks = []

    # box condition: shrinking coordinates keeps a point inside
    shrunk = members * rng.uniform(0.0, 1.0, size=members.shape)
    bad = margin(shrunk) < -tol
    checks.append(FlagCheck("balanced", "balanced" in region.flags, not bad.any(), len(members), _first_failure(bad, members, shrunk)))

    perm = np.argsort(rng.uniform(size=members.shape), axis=1)
    permuted = np.take_along_axis(members, perm, axis=1)
    bad = margin(permuted) < -tol if n > 1 else np.zeros(len(members), bool)
    checks.append(FlagCheck("symmetric", "symmetric" in region.flags, not bad.any(), len(members), _first_failure(bad, members, permuted)))

    half = len(members) // 2
    a, b = members[:half], members[half : 2 * half]
    mid = 0.5 * (a + b)
    bad = margin(mid) < -tol
    checks.append(FlagCheck("convex", "convex" in region.flags, not bad.any(), half, _first_failure(bad, a, b, mid)))

    outside = _sample_nonmembers(region, rng, sample_budget, tol)
    half = len(outside) // 2
    a, b = outside[:half], outside[half : 2 * half]
    mid = 0.5 * (a + b)
    bad = margin(mid) > tol
    checks.append(FlagCheck("concave", "concave" in region.flags, not bad.any(), half, _first_failure(bad, a, b, mid)))

    return FlagReport(tuple(checks))


@lru_cache(maxsize=256)
def effective_flags(region: RegionSpec) -> frozenset:
    """Claimed flags that survive :func:`validate_flags` at the default budget."""
    report = validate_flags(region)
    return frozenset(c.flag for c in report.checks if c.claimed and c.passed)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------


def region_to_json(region: RegionSpec) -> dict:
    return {"dim": region.dim, "kind": region.kind.to_json(), "flags": sorted(region.flags)}


def region_from_json(doc: dict) -> RegionSpec:
    try:
        dim = doc["dim"]
        kind_doc = dict(doc["kind"])
        flags = doc.get("flags", [])
        type_name = kind_doc.pop("type")
    except (KeyError, TypeError) as exc:
        raise RegionError(f"malformed region document: {exc}") from exc
    if type_name not in KINDS:
        raise RegionError(f"unknown region kind {type_name!r}; known: {sorted(KINDS)}")
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise RegionError(f"dim must be an integer, got {dim!r}")
    if not isinstance(flags, (list, tuple)):
        raise RegionError("flags must be a list")
    try:
        if type_name == "lp_ball":
            kind = LpBall(_p_from_json(kind_doc["p"]), float(kind_doc.get("radius", 1.0)))
        elif type_name == "box":
            kind = Box(tuple(float(a) for a in kind_doc["half_widths"]))
        elif type_name == "monotone_boundary_2d":
            kind = MonotoneBoundary2D(str(kind_doc["curve"]), float(kind_doc.get("scale", 1.0)))
        else:
            kind = GaugeTable(tuple(map(tuple, kind_doc["directions"])), tuple(kind_doc["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, RegionError):
            raise
        raise RegionError(f"malformed {type_name} parameters: {exc}") from exc
    return RegionSpec(dim, kind, frozenset(flags))


def load_region(path) -> RegionSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RegionError(f"{path}: invalid JSON ({exc})") from exc
    return region_from_json(doc)


def dump_region(region: RegionSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(region_to_json(region), fh, indent=2)
        fh.write("\n")


__all__ = [
    "FLAGS",
    "Box",
    "Direction",
    "FlagCheck",
    "FlagReport",
    "GaugeTable",
    "Inclusion",
    "InclusionResult",
    "LpBall",
    "MonotoneBoundary2D",
    "PointClass",
    "RegionSpec",
    "box",
    "classify_point",
    "contains",
    "contains_balanced",
    "direction_grid",
    "dump_region",
    "effective_flags",
    "gauge_table",
    "gauges",
    "includes",
    "load_region",
    "lp_ball",
    "membership_margin",
    "minimize_over_simplex",
    "radial_gauge",
    "region_from_json",
    "region_to_json",
    "scale",
    "validate_flags",
]

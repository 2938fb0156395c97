"""Independent reference computations used by the tests.

Nothing here calls the package's gauge, bisection or quadrature code.
"""

import math

import mpmath as mp
import numpy as np


def lp_inside(points, p, radius=1.0):
    """Open L^p ball membership written out directly."""
    pts = np.abs(np.asarray(points, dtype=float))
    if math.isinf(p):
        return pts.max(axis=-1) < radius
    return (pts**p).sum(axis=-1) < radius**p


_ALPHA = np.linspace(0.0, math.pi, 200_001)
_CURVE_X = 2 * (np.sin(_ALPHA) - _ALPHA * np.cos(_ALPHA))
_CURVE_Y = 2 * (np.sin(_ALPHA) + (math.pi - _ALPHA) * np.cos(_ALPHA))


def bidisk_inside(points):
    """Membership in the bidisk region via a densely sampled boundary and linear interpolation."""
    pts = np.asarray(points, dtype=float)
    x, y = pts[..., 0], pts[..., 1]
    ceiling = np.interp(x, _CURVE_X, _CURVE_Y, right=-1.0)
    return (x < 2 * math.pi) & (y < ceiling)


class Raster:
    """N×N grid of node values on [0, extent]²."""

    def __init__(self, inside, extent, cells=400):
        self.h = extent / cells
        ticks = np.arange(cells + 1) * self.h
        self.x, self.y = np.meshgrid(ticks, ticks, indexing="ij")
        self.mask = inside(np.stack([self.x, self.y], axis=-1))

    def c1(self):
        """Smallest x + y over grid nodes outside the region."""
        return float((self.x + self.y)[~self.mask].min())

    def c_inf(self):
        """Largest diagonal node inside the region."""
        diag = np.diag(self.mask)
        k = int(np.argmin(diag)) if not diag.all() else len(diag)
        return (k - 1) * self.h

    def inside_nodes(self):
        return np.stack([self.x[self.mask], self.y[self.mask]], axis=-1)


def raster_included(inner, outer, extent, cells=400):
    """Every inner grid node lies in the outer region."""
    r = Raster(inner, extent, cells)
    return bool(np.all(outer(r.inside_nodes())))


def action_mp(eps, c, dps=30):
    """I_ε(c) with mpmath at ``dps`` digits, splitting near the turning point.

    The radicand is clamped at 0 since rounding can make it negative at b.
    """
    with mp.workdps(dps):
        eps, c = mp.mpf(eps), mp.mpf(c)
        b = mp.sqrt(1 - eps / (2 * c))
        f = lambda x: mp.sqrt(max(0, 2 * c - eps / (1 - x * x)))  # noqa: E731
        return float(4 * mp.quad(f, [0, b / 2, b * 0.99, b]))


def action_scaled_mp(eps, c, dps=30):
    """The same action through 4√(2c−ε) ∫ √(1 − εx²/((2c−ε)(1−x²))) dx."""
    with mp.workdps(dps):
        eps, c = mp.mpf(eps), mp.mpf(c)
        b = mp.sqrt(1 - eps / (2 * c))
        k = 2 * c - eps
        f = lambda x: mp.sqrt(max(0, 1 - eps * x * x / (k * (1 - x * x))))  # noqa: E731
        return float(4 * mp.sqrt(k) * mp.quad(f, [0, b / 2, b * 0.99, b]))

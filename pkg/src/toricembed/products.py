"""Four-dimensional lagrangian products of L^p disks.

Covers the equivalence relation on products of scaled L^p disks, the moment
region Ω_0 of the lagrangian bidisk B²_2 ×_L B²_2, and the rigidity table
over exponents in {1, 2, ∞}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

from .embed import BIDISK_INTO_SIMPLEX, holder_min_scale
from .region import CURVES, InclusionResult, MonotoneBoundary2D, RegionSpec, includes, lp_ball, scale

EXPONENTS = (1.0, 2.0, math.inf)

# the four non-rigid problems among B²_p ×_L B²_q ↪? B²_r ×_L B²_s
NOT_RIGID = frozenset({(1.0, math.inf, 2.0, 2.0), (math.inf, 1.0, 2.0, 2.0), (2.0, 2.0, 1.0, math.inf), (2.0, 2.0, math.inf, 1.0)})

_REL = 1e-12


@dataclass(frozen=True)
class Disk2Spec:
    p: float
    radius: float = 1.0

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"exponent must lie in [1, inf], got {self.p}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ProductSpec:
    first: Disk2Spec
    second: Disk2Spec


# rotation classes: None means every rotation works, otherwise the angle mod π/2
_ANY = None


def _match(d1: Disk2Spec, d2: Disk2Spec):
    """(a, class) with d1 = a·U·d2 for every U in the class, or None.

    r·B_1 and (r/√2)·Rot(π/4)·B_inf are the same diamond; all other pairs of
    distinct exponents have different shapes.
    """
    ratio = d1.radius / d2.radius
    if d1.p == d2.p:
        return ratio, (_ANY if d1.p == 2 else 0.0)
    if (d1.p, d2.p) == (1.0, math.inf):
        return ratio / math.sqrt(2.0), math.pi / 4
    if (d1.p, d2.p) == (math.inf, 1.0):
        return ratio * math.sqrt(2.0), math.pi / 4
    return None


def _compatible(m1, m2) -> bool:
    if m1 is None or m2 is None:
        return False
    (a, u1), (b, u2) = m1, m2
    if u1 is not _ANY and u2 is not _ANY and u1 != u2:
        return False
    return abs(a * b - 1.0) <= _REL


def equivalent(P1: ProductSpec, P2: ProductSpec) -> bool:
    """Is P1 = (a U × a^{-1} U)·P2 for some a > 0 and rotation U, possibly with factors swapped?"""
    direct = _compatible(_match(P1.first, P2.first), _match(P1.second, P2.second))
    swapped = _compatible(_match(P1.second, P2.first), _match(P1.first, P2.second))
    return direct or swapped


class Rigidity(str, Enum):
    RIGID = "Rigid"
    NOT_RIGID = "NotRigid"


def _exponent(v) -> float:
    if isinstance(v, str):
        v = v.strip().lower()
        v = math.inf if v in ("inf", "infinity", "∞") else float(v)
    v = float(v)
    if v not in EXPONENTS:
        raise ValueError(f"exponent must be one of 1, 2, inf; got {v}")
    return v


def rigidity_classify(p, q, r, s) -> Rigidity:
    """B²_p ×_L B²_q ↪? B²_r ×_L B²_s for exponents in {1, 2, ∞}."""
    key = tuple(_exponent(v) for v in (p, q, r, s))
    return Rigidity.NOT_RIGID if key in NOT_RIGID else Rigidity.RIGID


def rigidity_table():
    """All 81 rows ``(p, q, r, s, Rigidity)`` in lexicographic exponent order."""
    return [(*t, rigidity_classify(*t)) for t in itertools.product(EXPONENTS, repeat=4)]


BIDISK_FLAGS = frozenset({"balanced", "symmetric", "concave"})


def bidisk_region(scale_factor: float = 1.0) -> RegionSpec:
    """Ω_0, bounded by the axes and γ(α) = 2(sin α − α cos α, sin α + (π−α) cos α)."""
    return RegionSpec(2, MonotoneBoundary2D("bidisk", scale_factor), BIDISK_FLAGS)


def bidisk_curve(num: int = 257):
    """Samples (α, x, y) of the boundary curve, α evenly spaced on [0, π]."""
    curve = CURVES["bidisk"]
    alpha = np.linspace(*curve.alpha_range, num)
    return alpha, curve.x(alpha), curve.y(alpha)


def bidisk_diagonal_minimum():
    """Golden-section minimum of x + y = 2(2 sin α + (π − 2α) cos α) on [0, π].

    Returns ``(alpha, value)``; the value equals c_1(Ω_0).
    """
    f = lambda a: 2.0 * (2.0 * math.sin(a) + (math.pi - 2.0 * a) * math.cos(a))  # noqa: E731
    res = minimize_scalar(f, bracket=(0.0, 1.0, math.pi), method="golden", tol=1e-12)
    return float(res.x), float(res.fun)


def bidisk_optimal_scales(p: float) -> dict:
    """Rigid thresholds for B²_2×_L B²_2 against B²_inf ×_L a·B²_p, p in [2, ∞].

    Into the polydisk needs a ≥ 1 (from c_1); from it needs a ≥ 2/2^{1/p}
    (from c_inf).
    """
    if not p >= 2:
        raise ValueError(f"thresholds are known only for p >= 2, got {p}")
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    return {"into_polydisk": 1.0, "from_polydisk": 2.0 / 2.0**inv_p}


@dataclass(frozen=True)
class NonRigidityReport:
    simplex_in_bidisk: InclusionResult
    a_min: float
    b_min: float
    product: float
    flexible_factor: float
    a_check: tuple
    b_check: tuple

    @property
    def ok(self) -> bool:
        return (
            self.simplex_in_bidisk.status.value == "Included"
            and self.product >= math.sqrt(2.0)
            and math.sqrt(2.0) > self.flexible_factor
            and all(self.a_check)
            and all(self.b_check)
        )

    def to_json(self):
        return {
            "simplex_in_bidisk": self.simplex_in_bidisk.to_json(),
            "a_min": self.a_min,
            "b_min": self.b_min,
            "product": self.product,
            "flexible_factor": self.flexible_factor,
            "a_check": list(self.a_check),
            "b_check": list(self.b_check),
            "ok": self.ok,
        }


def _threshold_check(p, q, r, rel=1e-3):
    """Inclusion fails just below r and holds just above it."""
    inner = lp_ball(2, p)
    below = includes(inner, lp_ball(2, q, r * (1 - rel)))
    above = includes(inner, lp_ball(2, q, r * (1 + rel)))
    return below.status.value == "NotIncluded", above.status.value == "Included"


def nonrigidity_witnesses() -> NonRigidityReport:
    """Recheck both non-rigidity chains.

    4Ω²_1 ⊂ Ω_0 through the inclusion oracle, and the covering factors
    B²_1 ⊂ a·B²_2, B²_inf ⊂ b·B²_2 whose product a·b = √2 already exceeds the
    flexible factor 3√3/4 obtained from X_{Ω_0} ↪ X_{3√3·Ω²_1}.
    """
    inc = includes(scale(lp_ball(2, 1.0), 4.0), bidisk_region())
    a = holder_min_scale(2, 1.0, 2.0)
    b = holder_min_scale(2, math.inf, 2.0)
    return NonRigidityReport(
        simplex_in_bidisk=inc,
        a_min=a,
        b_min=b,
        product=a * b,
        flexible_factor=BIDISK_INTO_SIMPLEX / 4.0,
        a_check=_threshold_check(1.0, 2.0, a),
        b_check=_threshold_check(math.inf, 2.0, b),
    )


__all__ = [
    "BIDISK_FLAGS",
    "Disk2Spec",
    "EXPONENTS",
    "NOT_RIGID",
    "NonRigidityReport",
    "ProductSpec",
    "Rigidity",
    "bidisk_curve",
    "bidisk_diagonal_minimum",
    "bidisk_optimal_scales",
    "bidisk_region",
    "equivalent",
    "nonrigidity_witnesses",
    "rigidity_classify",
    "rigidity_table",
]

"""Regularised billiard in the interval and its action variables.

For ε > 0 the system H_ε(x, y) = (y² + ε/(1 - x²))/2 on ]-1, 1[ × R has image
[ε/2, ∞[ and a single elliptic minimum at the origin.  Its action

    I_ε(c) = 4 ∫_0^{√(1-ε/2c)} √(2c - ε/(1-x²)) dx

is a diffeomorphism [ε/2, ∞[ → [0, ∞[, decreasing in ε, and tends to
I_0(c) = 4√(2c) as ε → 0.  The n-fold product Φ_ε = (H_ε, …, H_ε) and the
sets P_ε = Φ_ε^{-1}(I_0^{-1}(4|A|)) exhaust B^n_inf ×_L A from inside.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, DomainError
from .quadrature import tanh_sinh
from .region import RegionSpec, contains

THRESHOLD_GAP = 1e-12
MAX_BRACKET_DOUBLINGS = 200


@dataclass(frozen=True)
class QuadratureConfig:
    scheme: str = "double_exponential"
    abs_tol: float = 1e-10
    max_levels: int = 12

    def __post_init__(self):
        if self.scheme != "double_exponential":
            raise ValueError(f"unsupported quadrature scheme {self.scheme!r}")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_levels < 1:
            raise ValueError("max_levels must be at least 1")


@dataclass(frozen=True)
class BilliardParams:
    epsilon: float
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")


def _check_cube(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(np.abs(x) < 1)):
        raise DomainError("positions must lie in the open cube |x_i| < 1")
    return x


def hamiltonian(epsilon: float, x, y):
    """H_ε(x, y) = (y² + ε/(1 - x²))/2, elementwise."""
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    x = _check_cube(x)
    y = np.asarray(y, dtype=float)
    out = 0.5 * (y * y + epsilon / ((1.0 - x) * (1.0 + x)))
    return float(out) if out.ndim == 0 else out


def action(params: BilliardParams, c: float) -> tuple[float, float]:
    """I_ε(c) and a bound on its absolute quadrature error.

    With b = √(1 - ε/2c) the integrand is rewritten as
    √(2c (b-x)(b+x) / ((1-x)(1+x))) and 1 - x as (1 - b) + (b - x), so the
    square-root zero at b and the near-pole at 1 (for small ε) are evaluated
    from endpoint distances rather than by subtraction.
    """
    eps = params.epsilon
    c = float(c)
    if not c >= eps / 2:
        raise DomainError(f"action needs c >= epsilon/2 = {eps / 2:g}, got {c:g}")
    gap = c - eps / 2
    if gap < THRESHOLD_GAP:
        return 0.0, 0.0
    b = math.sqrt(gap / c)
    one_minus_b = (eps / (2.0 * c)) / (1.0 + b)
    two_c = 2.0 * c

    def integrand(x, da, db):
        return np.sqrt(two_c * db * (b + x) / ((one_minus_b + db) * (1.0 + x)))

    q = params.quadrature
    res = tanh_sinh(integrand, 0.0, b, abs_tol=q.abs_tol / 4.0, max_levels=q.max_levels)
    return 4.0 * res.value, 4.0 * res.error


def action_limit(c):
    """I_0(c) = 4√(2c)."""
    c_arr = np.asarray(c, dtype=float)
    if np.any(~(c_arr >= 0)):
        raise DomainError("action_limit needs c >= 0")
    out = 4.0 * np.sqrt(2.0 * c_arr)
    return float(out) if out.ndim == 0 else out


def action_limit_inverse(a):
    """I_0^{-1}(a) = a²/32."""
    a_arr = np.asarray(a, dtype=float)
    if np.any(~(a_arr >= 0)):
        raise DomainError("action values are nonnegative")
    out = a_arr * a_arr / 32.0
    return float(out) if out.ndim == 0 else out


def action_inverse(params: BilliardParams, a: float) -> float:
    """The unique c >= ε/2 with I_ε(c) = a.

    The bracket starts at [ε/2, ε/2 + max(1, a²/32)] and doubles its width
    until it straddles a; the root is then polished with Brent's method.
    """
    eps = params.epsilon
    if not a >= 0:
        raise DomainError(f"action values are nonnegative, got {a}")
    lo = eps / 2
    if a == 0:
        return lo
    width = max(1.0, a * a / 32.0)
    hi = lo + width
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if action(params, hi)[0] >= a:
            break
        lo = hi
        width *= 2.0
        hi = lo + width
    else:
        raise BracketError(f"no upper bracket for a={a:g} after {MAX_BRACKET_DOUBLINGS} doublings (hi={hi:g})")
    return brentq(lambda c: action(params, c)[0] - a, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def moment_map_phi(epsilon: float, xs, ys) -> np.ndarray:
    """Φ_ε(x, y) = (H_ε(x_1, y_1), …, H_ε(x_n, y_n))."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape:
        raise DomainError(f"position and momentum shapes differ: {xs.shape} vs {ys.shape}")
    return np.asarray(hamiltonian(epsilon, xs, ys))


def p_epsilon_contains(a: RegionSpec, epsilon: float, xs, ys):
    """Membership of (x, y) in P_ε, i.e. (4√(y_i² + ε/(1-x_i²)))_i ∈ 4|A|.

    Accepts one point (1-D arrays) or a batch of shape (m, n).
    """
    from .embed import lagrangian_to_toric

    phi = moment_map_phi(epsilon, xs, ys)
    image = action_limit(phi)
    return contains(lagrangian_to_toric(a), image)


def torus_action_image(params: BilliardParams, cs) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise actions (I_ε(c_1), …, I_ε(c_n)) and their error bounds."""
    results = [action(params, c) for c in np.asarray(cs, dtype=float).ravel()]
    values = np.array([r[0] for r in results]).reshape(np.shape(cs))
    errors = np.array([r[1] for r in results]).reshape(np.shape(cs))
    return values, errors


@dataclass(frozen=True)
class ActionProfile:
    """Samples (c, I(c), error) of I_ε; ``epsilon == 0`` holds the limit I_0."""

    epsilon: float
    samples: tuple

    def __post_init__(self):
        for c, _, _ in self.samples:
            if c < self.epsilon / 2:
                raise DomainError(f"profile sample c={c:g} below epsilon/2")

    def rows(self):
        return [(self.epsilon, c, value, err) for c, value, err in self.samples]


def action_profile(epsilon: float, cs, quadrature: QuadratureConfig | None = None) -> ActionProfile:
    if epsilon == 0:
        return ActionProfile(0.0, tuple((float(c), action_limit(c), 0.0) for c in cs))
    params = BilliardParams(epsilon, quadrature or QuadratureConfig())
    return ActionProfile(float(epsilon), tuple((float(c), *action(params, c)) for c in cs))


def profiles_to_csv(profiles) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["epsilon", "c", "I", "err"])
    for profile in profiles:
        for row in profile.rows():
            writer.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()


def sup_gap(params: BilliardParams, cs) -> float:
    """max over the grid of I_0(c) - I_ε(c)."""
    return max(action_limit(c) - action(params, c)[0] for c in cs)


def finite_difference_hessian(epsilon: float, x: float = 0.0, y: float = 0.0, h: float = 1e-4) -> np.ndarray:
    def H(dx, dy):
        return hamiltonian(epsilon, x + dx, y + dy)

    hxx = (H(h, 0) - 2 * H(0, 0) + H(-h, 0)) / h**2
    hyy = (H(0, h) - 2 * H(0, 0) + H(0, -h)) / h**2
    hxy = (H(h, h) - H(h, -h) - H(-h, h) + H(-h, -h)) / (4 * h**2)
    return np.array([[hxx, hxy], [hxy, hyy]])


@dataclass(frozen=True)
class BasicPropertiesReport:
    epsilon: float
    min_sampled_value: float
    value_at_origin: float
    image_ok: bool
    gradient_at_origin: tuple
    hessian_eigenvalues: tuple
    elliptic_ok: bool
    value_near_wall: float
    proper_ok: bool

    @property
    def ok(self):
        return self.image_ok and self.elliptic_ok and self.proper_ok


def basic_properties(epsilon: float, samples: int = 10_000, seed: int = 0) -> BasicPropertiesReport:
    """Sampled checks of the elementary facts about H_ε.

    Image contained in [ε/2, ∞[ with the minimum at the origin; vanishing
    gradient and positive definite Hessian there (central differences); and
    growth towards the walls |x| → 1.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, samples)
    x = x[np.abs(x) < 1]
    y = rng.normal(0, 3, len(x))
    values = hamiltonian(epsilon, x, y)
    at_origin = hamiltonian(epsilon, 0.0, 0.0)
    h = 1e-6
    grad = (
        (hamiltonian(epsilon, h, 0.0) - hamiltonian(epsilon, -h, 0.0)) / (2 * h),
        (hamiltonian(epsilon, 0.0, h) - hamiltonian(epsilon, 0.0, -h)) / (2 * h),
    )
    eig = np.linalg.eigvalsh(finite_difference_hessian(epsilon))
    wall = hamiltonian(epsilon, 1 - 1e-7, 0.0)
    return BasicPropertiesReport(
        epsilon=epsilon,
        min_sampled_value=float(values.min()),
        value_at_origin=at_origin,
        image_ok=bool(values.min() >= epsilon / 2) and math.isclose(at_origin, epsilon / 2),
        gradient_at_origin=grad,
        hessian_eigenvalues=tuple(eig.tolist()),
        elliptic_ok=bool(np.all(eig > 0)) and max(map(abs, grad)) < 1e-6,
        value_near_wall=wall,
        proper_ok=wall > 1e6 * epsilon,
    )

"""Embedding oracle for toric domains X_Ω ↪ X_Ω'.

Within the four rigid cases an embedding exists iff Ω ⊂ Ω', so the verdict
comes from the inclusion test.  Outside them only a capacity obstruction can
be reported.  A numerically inconclusive inclusion is never turned into a
verdict.

Cases, checked in order (unit simplex/cube sources and targets are accepted
at any scale, since rescaling both sides by the same factor preserves both
embedding and inclusion):

    i    Ω ∈ {Ω_1, Ω_inf}, Ω' convex or concave
    ii   Ω convex symmetric, Ω' ∈ {Ω_1, Ω_inf}
    iii  Ω convex symmetric, Ω' concave symmetric
    iv   Ω = Ω_p, Ω' = r·Ω_q
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .capacity import Obstruction, capacity_monotonicity_certificate
from .errors import CapacityDomainError, RegionError
from .region import (
    Box,
    Inclusion,
    InclusionResult,
    LpBall,
    MonotoneBoundary2D,
    RegionSpec,
    effective_flags,
    includes,
    scale,
)

# X_{Ω_0} ↪ X_{3√3·Ω^2_1} is known from the ECH computation for the
# lagrangian bidisk; used only as an annotation, never recomputed
BIDISK_INTO_SIMPLEX = 3.0 * math.sqrt(3.0)


class Verdict(str, Enum):
    EMBEDS = "Embeds"
    NOT_EMBEDS = "NotEmbeds"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class InclusionWitness:
    inclusion: InclusionResult
    normalization: float = 1.0

    def to_json(self):
        return {"type": "inclusion", "normalization": self.normalization, **self.inclusion.to_json()}


@dataclass(frozen=True)
class ScopeExplanation:
    reason: str
    notes: tuple = ()
    inclusion: InclusionResult | None = None
    obstruction: Obstruction | None = None

    def to_json(self):
        doc = {"type": "scope", "reason": self.reason, "notes": list(self.notes)}
        if self.inclusion is not None:
            doc["inclusion"] = self.inclusion.to_json()
        if self.obstruction is not None:
            doc["obstruction"] = self.obstruction.to_json()
        return doc


@dataclass(frozen=True)
class EmbedVerdict:
    verdict: Verdict
    case_used: str
    certificate: InclusionWitness | Obstruction | ScopeExplanation
    notes: tuple = field(default=())

    def to_json(self):
        doc = {"verdict": self.verdict.value, "case": self.case_used, "certificate": self.certificate.to_json()}
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def unit_model(region: RegionSpec):
    """``("simplex" | "cube", r)`` if the region is r·Ω_1 or r·Ω_inf, else None."""
    kind = region.kind
    if isinstance(kind, LpBall):
        if kind.p == 1:
            return "simplex", kind.radius
        if math.isinf(kind.p):
            return "cube", kind.radius
    if isinstance(kind, Box) and len(set(kind.half_widths)) == 1:
        return "cube", kind.half_widths[0]
    return None


def classify_case(omega: RegionSpec, omega_prime: RegionSpec) -> str:
    """First matching rigid case: ``"i"``-``"iv"``, or ``"none"``."""
    f = effective_flags(omega)
    g = effective_flags(omega_prime)
    if "balanced" not in f or "balanced" not in g:
        return "none"
    if unit_model(omega) and g & {"convex", "concave"}:
        return "i"
    convex_symmetric = {"convex", "symmetric"} <= f
    if convex_symmetric and unit_model(omega_prime):
        return "ii"
    if convex_symmetric and {"concave", "symmetric"} <= g:
        return "iii"
    if isinstance(omega.kind, LpBall) and isinstance(omega_prime.kind, LpBall):
        return "iv"
    return "none"


def _obstruction(omega, omega_prime):
    try:
        return capacity_monotonicity_certificate(omega, omega_prime)
    except CapacityDomainError:
        return None


def _known_facts(omega, omega_prime):
    notes = []
    k, kp = omega.kind, omega_prime.kind
    if isinstance(k, MonotoneBoundary2D) and k.curve == "bidisk" and isinstance(kp, LpBall) and kp.p == 1:
        known = BIDISK_INTO_SIMPLEX * k.scale
        status = "at least" if kp.radius >= known else "below"
        notes.append(
            f"a known construction embeds X_(bidisk region) into the simplex region of radius {known:.6g} "
            f"(3*sqrt(3) times the bidisk scale), while inclusion would need radius {2 * math.pi * k.scale:.6g}; "
            f"the target radius {kp.radius:.6g} is {status} the known embedding radius"
        )
    return tuple(notes)


def decide_embedding(
    omega: RegionSpec,
    omega_prime: RegionSpec,
    *,
    tol: float = 1e-6,
    grid_size: int | None = None,
    obstruction_verdict: bool = False,
) -> EmbedVerdict:
    """Decide ``X_Ω ↪ X_Ω'`` inside the rigid cases, with a certificate.

    Outside the cases the answer is OutOfScope, with any capacity obstruction
    attached to the explanation.  ``obstruction_verdict=True`` instead turns
    such an obstruction into NotEmbeds with case ``"none"``.
    """
    if omega.dim != omega_prime.dim:
        raise RegionError(f"dimension mismatch: {omega.dim} vs {omega_prime.dim}")
    case = classify_case(omega, omega_prime)
    obstruction = _obstruction(omega, omega_prime)

    if case == "none":
        if obstruction is not None and obstruction_verdict:
            return EmbedVerdict(Verdict.NOT_EMBEDS, "none", obstruction)
        return EmbedVerdict(
            Verdict.OUT_OF_SCOPE,
            "none",
            ScopeExplanation(
                "no rigid case applies to this pair", _known_facts(omega, omega_prime), obstruction=obstruction
            ),
        )

    normalization = 1.0
    if case == "i":
        normalization = 1.0 / unit_model(omega)[1]
    elif case == "ii":
        normalization = 1.0 / unit_model(omega_prime)[1]

    inc = includes(omega, omega_prime, tol, grid_size=grid_size)
    if inc.status is Inclusion.INCLUDED:
        if obstruction is not None:
            raise RuntimeError(f"inclusion and capacity obstruction disagree: {inc} vs {obstruction}")
        return EmbedVerdict(Verdict.EMBEDS, case, InclusionWitness(inc, normalization))
    if inc.status is Inclusion.NOT_INCLUDED:
        cert = obstruction if obstruction is not None else InclusionWitness(inc, normalization)
        return EmbedVerdict(Verdict.NOT_EMBEDS, case, cert)
    return EmbedVerdict(
        Verdict.OUT_OF_SCOPE,
        case,
        ScopeExplanation("inclusion test inconclusive at the requested tolerance", inclusion=inc),
    )


def holder_min_scale(n: int, p: float, q: float) -> float:
    """Smallest r with Ω^n_p ⊂ r·Ω^n_q: 1 if p <= q, else n^{1/q - 1/p}."""
    if n < 1:
        raise ValueError("n must be positive")
    if not (p >= 1 and q >= 1):
        raise ValueError("exponents must lie in [1, inf]")
    if p <= q:
        return 1.0
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    return float(n) ** (inv_q - inv_p)


def lagrangian_to_toric(a: RegionSpec) -> RegionSpec:
    """Moment region 4|A| of the toric model of B^n_inf ×_L A."""
    if "balanced" not in effective_flags(a):
        raise RegionError("lagrangian_to_toric needs a validated balanced region")
    return scale(a, 4.0)


__all__ = [
    "BIDISK_INTO_SIMPLEX",
    "EmbedVerdict",
    "InclusionWitness",
    "ScopeExplanation",
    "Verdict",
    "classify_case",
    "decide_embedding",
    "holder_min_scale",
    "lagrangian_to_toric",
    "unit_model",
]

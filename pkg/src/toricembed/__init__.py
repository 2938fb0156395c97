"""Symplectic capacities and embedding decisions for toric domains."""

from .billiard import (
    ActionProfile,
    BilliardParams,
    QuadratureConfig,
    action,
    action_inverse,
    action_limit,
    action_profile,
    hamiltonian,
    moment_map_phi,
    p_epsilon_contains,
    torus_action_image,
)
from .capacity import CapacityReport, Obstruction, capacities, capacity_monotonicity_certificate, cube_capacity, gromov_width
from .embed import EmbedVerdict, Verdict, classify_case, decide_embedding, holder_min_scale, lagrangian_to_toric
from .errors import (
    BracketError,
    CapacityDomainError,
    DomainError,
    GaugeError,
    QuadratureError,
    RegionError,
    ToricEmbedError,
)
from .products import (
    Disk2Spec,
    ProductSpec,
    Rigidity,
    bidisk_optimal_scales,
    bidisk_region,
    equivalent,
    nonrigidity_witnesses,
    rigidity_classify,
)
from .region import (
    Box,
    Direction,
    GaugeTable,
    Inclusion,
    InclusionResult,
    LpBall,
    MonotoneBoundary2D,
    RegionSpec,
    box,
    contains,
    includes,
    lp_ball,
    radial_gauge,
    region_from_json,
    region_to_json,
    scale,
    validate_flags,
)

__version__ = "0.1.0"

import itertools
import math

import numpy as np
import pytest

from toricembed.capacity import capacities
from toricembed.embed import lagrangian_to_toric
from toricembed.products import (
    NOT_RIGID,
    Disk2Spec,
    ProductSpec,
    Rigidity,
    bidisk_curve,
    bidisk_diagonal_minimum,
    bidisk_optimal_scales,
    bidisk_region,
    equivalent,
    nonrigidity_witnesses,
    rigidity_classify,
    rigidity_table,
)
from toricembed.region import contains, lp_ball, radial_gauge

INF = math.inf


def P(p, q, a=1.0, b=1.0):
    return ProductSpec(Disk2Spec(p, a), Disk2Spec(q, b))


# -- bidisk region ----------------------------------------------------------


def test_curve_endpoints_and_monotonicity():
    alpha, x, y = bidisk_curve(2001)
    assert (x[0], y[0]) == (0.0, pytest.approx(2 * math.pi))
    assert (x[-1], y[-1]) == (pytest.approx(2 * math.pi), pytest.approx(0.0, abs=1e-12))
    assert np.all(np.diff(x) > 0) and np.all(np.diff(y) < 0)


def test_curve_derivative_matches_formula():
    alpha, x, y = bidisk_curve(4001)
    h = alpha[1] - alpha[0]
    dx = np.gradient(x, h)[1:-1]
    dy = np.gradient(y, h)[1:-1]
    a = alpha[1:-1]
    assert np.max(np.abs(dx - 2 * a * np.sin(a))) < 1e-5
    assert np.max(np.abs(dy + 2 * (math.pi - a) * np.sin(a))) < 1e-5


def test_curve_symmetry():
    alpha, x, y = bidisk_curve(1001)
    assert np.allclose(x, y[::-1], atol=1e-12)


def test_bidisk_region_examples():
    reg = bidisk_region()
    assert contains(reg, [2 - 1e-6, 2 - 1e-6])
    assert not contains(reg, [2 + 1e-6, 2 + 1e-6])
    assert radial_gauge(reg, [1, 0]) == pytest.approx(2 * math.pi, abs=1e-10)
    assert radial_gauge(reg, [0, 1]) == pytest.approx(2 * math.pi, abs=1e-10)
    rep = capacities(reg, numeric=True)
    assert rep.c1 == pytest.approx(4.0, abs=1e-6)
    assert rep.c_infinity == pytest.approx(2.0, abs=1e-6)


def test_diagonal_minimum():
    alpha, value = bidisk_diagonal_minimum()
    assert alpha == pytest.approx(math.pi / 2, abs=1e-6)
    assert value == pytest.approx(4.0, abs=1e-12)
    _, x, y = bidisk_curve(100001)
    assert np.min(x + y) == pytest.approx(4.0, abs=1e-8)


# -- equivalence ------------------------------------------------------------


def test_equivalence_examples():
    assert equivalent(P(2, 1), P(1, 2))
    a = 1 / math.sqrt(2)
    assert equivalent(P(1, 1), P(INF, INF, a * a, 1.0))
    assert not equivalent(P(2, 2), P(2, INF))


def test_equivalence_chain_through_square():
    # B_1 = a·U·B_inf with a = 1/√2, and B_2 is rotation invariant
    a = 1 / math.sqrt(2)
    chain = [P(2, 1), P(INF, 2, 1.0, a), P(INF, 2, a, 1.0), P(1, 2)]
    for x, y in itertools.combinations(chain, 2):
        assert equivalent(x, y)
    assert not equivalent(P(2, 1), P(INF, 2))


def test_reciprocal_scaling():
    assert equivalent(P(3, 2, 2.0, 1.0), P(3, 2, 1.0, 2.0))
    assert not equivalent(P(3, 2, 2.0, 1.0), P(3, 2, 1.0, 1.0))
    assert equivalent(P(2, INF, 4.0, 0.5), P(2, INF, 1.0, 2.0))
    assert not equivalent(P(1.5, 2), P(3, 2))


DISKS = [Disk2Spec(p, r) for p in (1.0, 2.0, INF) for r in (0.5, 1.0, 2.0)]
PRODUCTS = [ProductSpec(a, b) for a in DISKS for b in DISKS]


def test_equivalence_relation():
    m = len(PRODUCTS)
    rel = np.array([[equivalent(a, b) for b in PRODUCTS] for a in PRODUCTS])
    assert rel.diagonal().all()
    assert np.array_equal(rel, rel.T)
    # transitivity: the boolean square of the relation adds nothing
    reach = (rel.astype(int) @ rel.astype(int)) > 0
    assert np.array_equal(reach, rel)
    assert m == 81


def test_equivalent_products_have_equal_volume():
    # equivalence preserves the product of areas
    def area(d):
        unit = {1.0: 2.0, 2.0: math.pi, INF: 4.0}[d.p]
        return unit * d.radius**2

    for a, b in itertools.combinations(PRODUCTS, 2):
        if equivalent(a, b):
            assert area(a.first) * area(a.second) == pytest.approx(area(b.first) * area(b.second))


def test_disk_validation():
    with pytest.raises(ValueError):
        Disk2Spec(0.5)
    with pytest.raises(ValueError):
        Disk2Spec(2.0, 0.0)


# -- rigidity ---------------------------------------------------------------


def test_rigidity_examples():
    assert rigidity_classify(1, INF, 2, 2) is Rigidity.NOT_RIGID
    assert rigidity_classify(2, 2, 2, 2) is Rigidity.RIGID
    assert rigidity_classify(INF, 2, 2, 2) is Rigidity.RIGID
    assert rigidity_classify("inf", 1, "2", 2) is Rigidity.NOT_RIGID


def test_rigidity_table():
    table = rigidity_table()
    assert len(table) == 81
    flagged = {row[:4] for row in table if row[4] is Rigidity.NOT_RIGID}
    assert flagged == set(NOT_RIGID)
    assert len(flagged) == 4


def test_rigidity_swap_symmetry():
    for p, q, r, s, c in rigidity_table():
        assert rigidity_classify(q, p, r, s) is c
        assert rigidity_classify(p, q, s, r) is c


def test_rigidity_rejects_other_exponents():
    with pytest.raises(ValueError):
        rigidity_classify(3, 2, 2, 2)


# -- witnesses and thresholds -----------------------------------------------


def test_nonrigidity_witnesses():
    rep = nonrigidity_witnesses()
    assert rep.ok
    assert rep.a_min == 1.0
    assert rep.b_min == pytest.approx(math.sqrt(2), rel=1e-15)
    assert rep.product >= math.sqrt(2) > rep.flexible_factor
    assert rep.flexible_factor == pytest.approx(1.299038105676658, rel=1e-15)
    assert rep.simplex_in_bidisk.status.value == "Included"


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0, 10.0, INF])
def test_optimal_scales_match_capacities(p):
    s = bidisk_optimal_scales(p)
    assert s["into_polydisk"] == 1.0
    inv = 0.0 if math.isinf(p) else 1 / p
    assert s["from_polydisk"] == pytest.approx(2 / 2**inv)
    # c_1 of the bidisk against c_1 of the target, and c_inf the other way
    bid = capacities(bidisk_region())
    target = capacities(lagrangian_to_toric(lp_ball(2, p)))
    assert bid.c1 / target.c1 == pytest.approx(s["into_polydisk"], abs=1e-9)
    assert target.c_infinity / bid.c_infinity == pytest.approx(s["from_polydisk"], abs=1e-9)


def test_optimal_scales_examples():
    assert bidisk_optimal_scales(2)["from_polydisk"] == pytest.approx(math.sqrt(2))
    assert bidisk_optimal_scales(INF)["from_polydisk"] == 2.0
    with pytest.raises(ValueError):
        bidisk_optimal_scales(1.5)

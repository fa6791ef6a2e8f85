import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skein_cluster.coeff import ScalarQ, mono, qbinom, qbrace
from skein_cluster.quantum_cluster import QTElement, dilog
from skein_cluster.torus_skein import (
    LINKING_LATTICE,
    BiSeries,
    SkeinElement,
    ad_baxter,
    ad_closed,
    ad_series_oracle,
    adjoint_pentagon_check,
    baxter_biseries,
    baxter_series,
    conjugate_by_baxter,
    det,
    mul,
    normal_order,
    normal_order_random,
    pentagon_check,
    reduce_to_linking,
    slope_less,
)

P = SkeinElement.gen


def word(*vs, c=1):
    return SkeinElement({tuple(vs): c})


def test_slope_order():
    assert slope_less((1, 0), (0, 1))
    assert slope_less((1, 1), (2, 2))
    assert not slope_less((0, -1), (1, 0))


def test_slope_order_is_total_on_small_vectors():
    vecs = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)]
    for u in vecs:
        for v in vecs:
            if u != v:
                assert slope_less(u, v) != slope_less(v, u)


def test_normal_order_examples():
    assert normal_order([(0, 1), (1, 0)]) == word((1, 0), (0, 1)) - P((1, 1), qbrace(1))
    assert normal_order([(1, 0), (0, 1)]) == word((1, 0), (0, 1))
    assert normal_order([(1, 1), (1, 0)]) == word((1, 0), (1, 1)) - P((2, 1), qbrace(1))


def test_mul_examples():
    e = P((2, 3), mono(a=1)) + word((1, 0), (0, 1))
    assert mul(SkeinElement.one(), e) == e
    assert mul(P((0, 1)), P((0, 2))) == word((0, 1), (0, 2))
    assert mul(P((0, 1)), P((1, 0))) == normal_order([(0, 1), (1, 0)])


vec = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda v: v != (0, 0))


@given(st.lists(vec, min_size=1, max_size=5), st.integers(0, 10 ** 6))
def test_normal_order_confluent(w, seed):
    ref = normal_order(w)
    alt = SkeinElement(normal_order_random(w, random.Random(seed)))
    assert ref == alt


@given(st.lists(vec, min_size=1, max_size=5))
def test_normal_order_preserves_degree(w):
    total = (sum(v[0] for v in w), sum(v[1] for v in w))
    for wd, _ in normal_order(w).items():
        assert (sum(v[0] for v in wd), sum(v[1] for v in wd)) == total


@given(st.lists(vec, min_size=1, max_size=3), st.lists(vec, min_size=1, max_size=3),
       st.lists(vec, min_size=1, max_size=2))
def test_multiplication_associative(a, b, c):
    x, y, z = normal_order(a), normal_order(b), normal_order(c)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


def test_baxter_low_coefficients():
    b = baxter_biseries((1, 0), (0, 1), order=2)
    assert b[(0, 0)] == SkeinElement.one()
    assert b[(1, 0)] == P((1, 0), ScalarQ(1) / qbrace(1))
    expected = (word((1, 0), (1, 0), c=ScalarQ(Fraction(1, 2)) / (qbrace(1) * qbrace(1)))
                - P((2, 0), ScalarQ(Fraction(1, 2)) / qbrace(2)))
    assert b[(2, 0)] == expected


def test_baxter_inverse():
    for x in ((1, 0), (1, 1), (-1, 2)):
        prod = baxter_series(x, 4, sign=1) * baxter_series(x, 4, sign=-1)
        assert prod == BiSeries.one(4)


def test_ad_closed_examples():
    assert [c for _, c in ad_closed((1, 0), (0, 1), 3)] == [1, 1, 0, 0]
    assert [c for _, c in ad_closed((0, 1), (1, 0), 4)] == [1, -1, 1, -1, 1]
    assert [c for _, c in ad_closed((1, 0), (2, 0), 3)] == [1, 0, 0, 0]


@pytest.mark.parametrize("y,order", [((0, 1), 5), ((0, -1), 5), ((0, 3), 4), ((1, -2), 4), ((2, 0), 4)])
def test_ad_closed_matches_oracle(y, order):
    assert ad_closed((1, 0), y, order) == ad_series_oracle((1, 0), y, order)


def test_ad_closed_is_qbinomial():
    for n, c in ad_closed((1, 0), (3, 2), 4):
        assert c == qbinom(2, n)


def test_ad_multiplicative():
    e = normal_order([(0, 1), (-1, 1)])
    start = BiSeries(3, {(0, 0): e})
    assert ad_baxter((1, 0), (1, 0), start) == conjugate_by_baxter((1, 0), (1, 0), start)


def test_adjoint_pentagon():
    assert adjoint_pentagon_check((1, 0), (0, 1), 4)


def test_pentagon_examples():
    rep = pentagon_check((1, 0), (0, 1), 4)
    assert rep["pass"] and rep["firstFail"] is None and rep["checked"] == 15
    assert pentagon_check((1, 1), (0, 1), 3)["pass"]
    bad = pentagon_check((1, 0), (0, 1), 2, "swapped")
    assert not bad["pass"] and bad["firstFail"] == [1, 1]


def test_pentagon_needs_unimodular_pair():
    with pytest.raises(ValueError):
        pentagon_check((2, 0), (0, 1), 2)


def test_det():
    assert det((1, 0), (0, 1)) == 1
    assert det((0, 1), (1, 0)) == -1


def test_reduce_to_linking_examples():
    assert reduce_to_linking(P((1, 0))) == QTElement.monomial(LINKING_LATTICE, (1, 0))
    got = reduce_to_linking(word((1, 0), (0, 1)))
    assert got == QTElement.monomial(LINKING_LATTICE, (1, 1), mono(s=1))


def test_reduce_to_linking_recovers_dilogarithm():
    b = baxter_series((0, 1), 5)
    phi = dilog(LINKING_LATTICE, (0, 1), 5)
    for n in range(1, 6):
        expected = QTElement.monomial(LINKING_LATTICE, (0, n), phi.terms[(0, n)])
        assert reduce_to_linking(b[(n, 0)]) == expected

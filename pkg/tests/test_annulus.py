import pytest

from skein_cluster.annulus import (
    act_generator,
    apply_baxter_module,
    apply_kappa,
    unknot_value,
)
from skein_cluster.coeff import LaurentPoly, ScalarQ, SingularSubstitution, mono, qbrace, qint, substitute
from skein_cluster.partitions import ModuleVector, partitions_upto, power_times_schur

W = ModuleVector.basis
a = mono(a=1)


def test_vertical_generator_adds_a_box():
    assert act_generator(0, 1, W(())) == W((1,))


def test_horizontal_generator_on_empty_is_unknot():
    assert act_generator(1, 0, W(())) == W((), unknot_value())


def test_hybrid_single_strip():
    assert act_generator(1, 1, W(())) == W((1,), a)


def test_hybrid_two_box_strip():
    expected = W((2,), a * mono(s=1)) - W((1, 1), a * mono(s=-1))
    assert act_generator(1, 2, W(())) == expected


@pytest.mark.parametrize("lam", partitions_upto(5))
def test_vertical_action_is_power_sum_multiplication(lam):
    for n in range(1, 4):
        assert act_generator(0, n, W(lam)) == power_times_schur(n, lam)


def _bracket(x, y, v):
    return act_generator(*x, act_generator(*y, v)) - act_generator(*y, act_generator(*x, v))


def _det(x, y):
    return x[0] * y[1] - x[1] * y[0]


@pytest.mark.parametrize("x,y", [((1, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1)),
                                 ((-1, 0), (0, 1)), ((1, 1), (1, 2))])
def test_commutators_on_module(x, y):
    d = _det(x, y)
    xy = (x[0] + y[0], x[1] + y[1])
    for lam in partitions_upto(4):
        v = W(lam)
        assert _bracket(x, y, v) == act_generator(*xy, v).scale(qbrace(d)), lam


def test_apply_kappa_examples():
    assert apply_kappa(1, W(())) == W(())
    assert apply_kappa(1, W((2,))) == W((2,), mono(s=2))
    assert apply_kappa(-1, W((1, 1))) == W((1, 1), mono(s=2))


def test_baxter_module_examples():
    one = W(())
    first = W(()) + W((1,), ScalarQ(1) / qbrace(1))
    assert apply_baxter_module((0, 1), 1, False, 1, one) == first
    assert apply_baxter_module((0, 1), 0, False, 3, W((2,))) == W((2,))
    assert apply_baxter_module((1, 1), mono(a=-1), False, 1, one) == first


def test_baxter_module_inverse_undoes():
    v = apply_baxter_module((1, 1), mono(g=1), False, 4, W(()))
    back = apply_baxter_module((1, 1), mono(g=1), True, 4, v)
    assert back == W(())


def test_unknot_value():
    u = unknot_value()
    assert u == (a - mono(a=-1)) / qbrace(1)
    s = LaurentPoly.var("s")
    assert substitute(u, {"a": s ** 2}) == qint(2)
    assert substitute(u, {"a": s}) == 1


def test_unknot_value_at_s_one_is_singular():
    with pytest.raises(SingularSubstitution):
        substitute(unknot_value(), {"s": 1})

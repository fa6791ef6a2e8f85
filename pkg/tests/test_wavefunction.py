import pytest

from skein_cluster.annulus import act_generator
from skein_cluster.coeff import ScalarQ, mono, qbrace
from skein_cluster.partitions import ModuleVector, partitions_upto
from skein_cluster.wavefunction import (
    UNKNOT_FORMS,
    ad_kappa_check,
    apply_kappa,
    canoe_face_residual,
    inverse_identity_check,
    topological_vertex,
    unknot_residual,
    unknot_wavefunction,
    wavefunction_framed,
)

W = ModuleVector.basis


def test_vertex_examples():
    for p in (-2, 0, 3):
        assert topological_vertex((), p) == 1
    assert topological_vertex((1,), 0) == ScalarQ(1) / qbrace(1)
    assert topological_vertex((2,), -1) == mono(s=-1) / (qbrace(1) * qbrace(2))


def test_framed_wavefunction_examples():
    psi = wavefunction_framed(0, 4)
    for lam in partitions_upto(4):
        assert psi[lam] == topological_vertex(lam, -1)
    for p in (-1, 1, 2):
        assert wavefunction_framed(p, 2)[()] == 1
    assert wavefunction_framed(1, 2)[(1,)] == ScalarQ(1) / qbrace(1)


@pytest.mark.parametrize("p", [-1, 0, 1, 2])
def test_framed_wavefunction_matches_vertex(p):
    psi = wavefunction_framed(p, 5)
    for lam in partitions_upto(5):
        assert psi[lam] == topological_vertex(lam, p - 1), lam


def test_framing_change_is_kappa_twist():
    psi0 = wavefunction_framed(0, 4)
    psi2 = wavefunction_framed(2, 4)
    assert apply_kappa(2, psi0) == psi2


def test_canoe_residual():
    assert canoe_face_residual(0).is_zero()
    assert canoe_face_residual(1).is_zero()
    assert canoe_face_residual(5).is_zero()
    flipped = canoe_face_residual(1, middle_sign=1)
    assert not flipped.is_zero()
    assert min(lam.size for lam, _ in flipped.items()) <= 1


def test_inverse_identity():
    assert inverse_identity_check(0, 0)
    assert inverse_identity_check(0, 4)
    assert inverse_identity_check(1, 4)
    assert inverse_identity_check(2, 3)


def test_unknot_residual():
    assert unknot_residual(0).is_zero()
    assert unknot_residual(3).is_zero()
    assert unknot_residual(3, form="closed").is_zero()


def test_unknot_wrong_specialisation_detected():
    bad = unknot_residual(1, psi_a_L=0)
    assert not bad.is_zero()
    assert max(lam.size for lam, _ in bad.items()) <= 1
    # substituting a_L = 0 on both sides is still a solution
    assert unknot_residual(2, a_L=0).is_zero()


def test_unknot_single_parameter_form():
    # the form with one Q_(0,1) factor per side only works on the diagonal a_L = a
    assert not unknot_residual(2, form="printed").is_zero()
    assert unknot_residual(3, form="printed", a_L=mono(a=1)).is_zero()


def test_unknot_forms_agree():
    assert unknot_wavefunction(3, "derived") == unknot_wavefunction(3, "closed")
    with pytest.raises(ValueError):
        unknot_wavefunction(2, "bogus")
    assert set(UNKNOT_FORMS) == {"derived", "closed", "printed"}


def test_ad_kappa():
    lhs = apply_kappa(1, act_generator(0, 1, apply_kappa(-1, W(()))))
    assert lhs == W((1,))
    assert act_generator(1, 1, W(())).scale(mono(a=-1)) == W((1,))
    assert ad_kappa_check(1, 2, 4)
    assert ad_kappa_check(-2, 3, 4)
    with pytest.raises(ValueError):
        ad_kappa_check(1, 0, 2)

"""Genus-one brane wavefunctions in the solid-torus skein module.

The framed one-leg vertex is produced by a Baxter operator acting on the
empty diagram; the remaining functions return residuals of the difference
equations those wavefunctions are supposed to satisfy.
"""
from __future__ import annotations

from typing import Optional

from .annulus import act_generator, apply_baxter_module, apply_kappa, unknot_value
from .coeff import ScalarQ, mono
from .partitions import ModuleVector, Partition, kappa, partitions_upto, principal_specialization

__all__ = [
    "topological_vertex",
    "wavefunction_framed",
    "canoe_face_residual",
    "inverse_identity_check",
    "unknot_wavefunction",
    "unknot_residual",
    "ad_kappa_check",
    "UNKNOT_FORMS",
]

UNKNOT_FORMS = ("derived", "closed", "printed")


def topological_vertex(lam, p: int) -> ScalarQ:
    """q^{p kappa/2} s_lambda(q^rho)."""
    lam = Partition(lam)
    return mono(s=p * kappa(lam)) * principal_specialization(lam)


def wavefunction_framed(p: int, max_boxes: int) -> ModuleVector:
    """Q_{(p,1)}(a^{-p}) applied to the empty diagram."""
    if max_boxes < 0:
        raise ValueError("max_boxes must be non-negative")
    return apply_baxter_module((p, 1), mono(a=-p), False, max_boxes, ModuleVector.basis(()))


def _operator(v: ModuleVector, terms, max_boxes: int) -> ModuleVector:
    """Apply sum c * P_x (with x=None for the unknot scalar) and truncate."""
    out = ModuleVector()
    for x, c in terms:
        if x is None:
            img = v.scale(unknot_value())
        else:
            img = act_generator(x[0], x[1], v)
        out = out + img.scale(c)
    return out.truncate(max_boxes)


def canoe_face_residual(max_boxes: int, middle_sign: int = -1) -> ModuleVector:
    """(a^{-1} O - a^{-1} P_{(1,0)} + P_{(0,1)}) applied to the framing -1 vertex.

    ``middle_sign`` flips the sign of the P_{(1,0)} term for sensitivity tests.
    """
    psi = wavefunction_framed(0, max_boxes + 1)
    ainv = mono(a=-1)
    return _operator(psi, [(None, ainv), ((1, 0), ainv * middle_sign), ((0, 1), 1)], max_boxes)


def inverse_identity_check(p: int, max_boxes: int) -> bool:
    """Q_{(p,1)}(-t)^{-1} . 1 == Q_{(p+1,1)}(t a^{-1}) . 1 with t = g."""
    empty = ModuleVector.basis(())
    t = mono(g=1)
    lhs = apply_baxter_module((p, 1), -t, True, max_boxes, empty)
    rhs = apply_baxter_module((p + 1, 1), t * mono(a=-1), False, max_boxes, empty)
    return lhs == rhs


def unknot_wavefunction(gamma_order: int, form: str = "derived", a_L=None) -> ModuleVector:
    """Candidate solution of the unknot-conormal equation, expanded in g.

    derived:  Q_{(0,1)}(-g a)^{-1} Q_{(-1,1)}(g a_L a^{-1})^{-1} . 1
    closed:   Q_{(0,1)}(-g a)^{-1} Q_{(0,1)}(-g a_L a^{-2}) . 1
    printed:  Q_{(0,1)}(-g a^{-1}) Q_{(0,1)}(-g a)^{-1} . 1, which only
              solves the equation once a_L = a.
    Every Baxter factor here adds one box per power of g, so the box count
    is the g-order.
    """
    aL = mono(aL=1) if a_L is None else ScalarQ.coerce(a_L)
    g, a = mono(g=1), mono(a=1)
    v = ModuleVector.basis(())
    if form == "derived":
        v = apply_baxter_module((-1, 1), g * aL * mono(a=-1), True, gamma_order, v)
        return apply_baxter_module((0, 1), -g * a, True, gamma_order, v)
    if form == "closed":
        v = apply_baxter_module((0, 1), -g * aL * mono(a=-2), False, gamma_order, v)
        return apply_baxter_module((0, 1), -g * a, True, gamma_order, v)
    if form == "printed":
        v = apply_baxter_module((0, 1), -g * a, True, gamma_order, v)
        return apply_baxter_module((0, 1), -g * mono(a=-1), False, gamma_order, v)
    raise ValueError(f"unknown form {form!r}; expected one of {UNKNOT_FORMS}")


def unknot_residual(gamma_order: int, form: str = "derived", a_L=None,
                    psi_a_L=None) -> ModuleVector:
    """(O - P_{(1,0)} - g a_L a^{-1} P_{(0,1)} + g a P_{(1,1)}) Psi_L up to g^gamma_order.

    ``psi_a_L`` builds the candidate with a different a_L than the operator,
    which is how a wrong specialisation shows up.
    """
    if gamma_order < 0:
        raise ValueError("gamma_order must be non-negative")
    aL = mono(aL=1) if a_L is None else ScalarQ.coerce(a_L)
    psi = unknot_wavefunction(gamma_order, form, aL if psi_a_L is None else psi_a_L)
    g = mono(g=1)
    terms = [(None, 1), ((1, 0), -1), ((0, 1), -g * aL * mono(a=-1)), ((1, 1), g * mono(a=1))]
    return _operator(psi, terms, gamma_order)


def ad_kappa_check(p: int, n: int, max_boxes: int) -> bool:
    """q^{p kappa/2} P_{(0,n)} q^{-p kappa/2} == a^{-pn} P_{(pn,n)} on every W_lambda."""
    if n < 1:
        raise ValueError("n must be positive")
    for lam in partitions_upto(max_boxes):
        w = ModuleVector.basis(lam)
        lhs = apply_kappa(p, act_generator(0, n, apply_kappa(-p, w)))
        rhs = act_generator(p * n, n, w).scale(mono(a=-p * n))
        if lhs != rhs:
            return False
    return True

"""Action of the torus skein algebra on the solid-torus skein module.

Vectors are expanded in the basis W_lambda.  The generator P_(m,n) with
n >= 0 adds border strips of total size n; with n = 0 it is diagonal.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .coeff import LaurentPoly, ScalarQ, mono, qbrace
from .partitions import ModuleVector, Partition, hooks_contents_kappa, strip_additions

__all__ = [
    "ModuleVector",
    "act_generator",
    "apply_kappa",
    "apply_baxter_module",
    "baxter_exponent_apply",
    "unknot_value",
]


def _content_sum(contents: Sequence[int], m: int) -> LaurentPoly:
    """sum_x q^{m c(x)} as a polynomial in s."""
    out: Dict[int, int] = {}
    for c in contents:
        out[2 * m * c] = out.get(2 * m * c, 0) + 1
    return LaurentPoly.from_s(out)


def _brace_poly(k: int) -> LaurentPoly:
    return qbrace(k).num


@lru_cache(maxsize=None)
def _eigenvalue(m: int, lam: Partition) -> ScalarQ:
    _, contents, _ = hooks_contents_kappa(lam)
    a_m = mono(a=m)
    base = (a_m - mono(a=-m)) * ScalarQ.inv_brace(abs(m)) * (1 if m > 0 else -1)
    return base + a_m * ScalarQ(_brace_poly(m) * _content_sum(contents, m))


@lru_cache(maxsize=None)
def _strip_coefficient(m: int, n: int, contents: Tuple[int, ...]) -> ScalarQ:
    # {m}/{mn} * sum_x q^{m c(x)}; the contents form a run, so the quotient
    # is a Laurent polynomial and no large brace is ever materialised.
    num = _brace_poly(m) * _content_sum(contents, m)
    q = num.exact_div_s({m * n: 1, -m * n: -1})
    if q is None:
        return ScalarQ(num, {m * n: 1})
    return ScalarQ(q, _reduce=False)


@lru_cache(maxsize=None)
def _act_basis(m: int, n: int, lam: Partition) -> Tuple[Tuple[Partition, ScalarQ], ...]:
    if n == 0:
        return ((lam, _eigenvalue(m, lam)),)
    out = []
    for strip in strip_additions(lam, n):
        sign = -1 if strip.height % 2 else 1
        if m == 0:
            out.append((strip.result, ScalarQ(sign)))
        else:
            out.append((strip.result, mono(a=m, c=sign) * _strip_coefficient(m, n, strip.contents)))
    return tuple(out)


def act_generator(m: int, n: int, v: ModuleVector) -> ModuleVector:
    """Apply P_(m,n), n >= 0, to a module vector."""
    if (m, n) == (0, 0):
        raise ValueError("P_(0,0) is not a generator")
    if n < 0:
        raise ValueError("only n >= 0 acts on this module")
    acc: Dict[Partition, ScalarQ] = {}
    for lam, c in v.coeffs.items():
        for mu, w in _act_basis(m, n, lam):
            term = c * w
            acc[mu] = acc[mu] + term if mu in acc else term
    return ModuleVector(acc)


def apply_kappa(p: int, v: ModuleVector) -> ModuleVector:
    """Multiply the W_lambda coefficient by q^{p kappa_lambda / 2}."""
    out = ModuleVector()
    out.coeffs = {lam: c * mono(s=p * hooks_contents_kappa(lam)[2]) for lam, c in v.coeffs.items()}
    return out


def baxter_exponent_apply(x: Tuple[int, int], t, max_boxes: int, v: ModuleVector) -> ModuleVector:
    """Theta_x(t) v with Theta_x(t) = sum_k (-1)^{k+1} t^k / (k{k}) P_{kx}."""
    m, n = x
    t = ScalarQ.coerce(t)
    out = ModuleVector()
    if not v.coeffs:
        return out
    low = min(lam.size for lam in v.coeffs)
    k = 1
    while low + k * n <= max_boxes:
        coeff = t ** k * ScalarQ.inv_brace(k) * Fraction((-1) ** (k + 1), k)
        out = out + act_generator(k * m, k * n, v).truncate(max_boxes).scale(coeff)
        k += 1
    return out


def apply_baxter_module(x: Tuple[int, int], t, invert: bool, max_boxes: int, v: ModuleVector) -> ModuleVector:
    """exp(+-Theta_x(t)) v, exact up to total box count max_boxes."""
    m, n = x
    if n < 1:
        raise ValueError("the Baxter series only truncates for n >= 1")
    t = ScalarQ.coerce(t)
    if t.is_zero():
        return v.truncate(max_boxes)
    sign = -1 if invert else 1
    result = v.truncate(max_boxes)
    term = result
    j = 1
    while term.coeffs:
        term = baxter_exponent_apply(x, t, max_boxes, term).scale(Fraction(sign, j))
        result = result + term
        j += 1
    return result


def unknot_value() -> ScalarQ:
    """The unknot as a scalar: (a - a^{-1}) / {1}."""
    return (mono(a=1) - mono(a=-1)) * ScalarQ.inv_brace(1)

"""Rank-N images of the skein algebra.

* symmetric Laurent polynomials in N variables with the t = q Macdonald
  operator and multiplication operators (a is specialised to q^{N/2});
* the N = 2 q-Whittaker basis, where the action becomes a quantum torus in
  U_1, U_2, V_1, V_2 acting on coefficient functions Z^2 -> Q(s);
* abelianised Baxter operators in that torus and the bundled five-vertex
  seed whose mutation sequences realise their pentagon.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .annulus import act_generator
from .coeff import LaurentPoly, ScalarQ, mono, qbrace, qint
from .partitions import ModuleVector, Partition, partitions_upto
from .quantum_cluster import (
    CSeed,
    QLattice,
    QTElement,
    QTSeries,
    auto_series,
    cvec_sequence,
    dilog,
    dilog_coefficient,
)

__all__ = [
    "SymPolyN",
    "vandermonde",
    "macdonald_M1",
    "p_ops_N",
    "macdonald_eigen_check",
    "commutator_check_N",
    "charvar_relation_residual",
    "canoe_wavefunction_N",
    "face_qde_residual",
    "WhittakerCoeffs",
    "r_in_schur",
    "whittaker_convert",
    "whittaker_wavefunction_coeffs",
    "whittaker_wavefunction_check",
    "UV_LATTICE",
    "uv",
    "apply_uv",
    "toda_ops",
    "whittaker_macdonald_op",
    "toda_consistency_check",
    "uv_embedding_images",
    "uv_embedding_check",
    "ideal_uv_check",
    "intertwiner_check",
    "abelian_baxter",
    "uv_pentagon_check",
    "loc_quiver_seed",
    "LOC_SEQUENCES",
    "LOC_UV_IMAGES",
    "PUBLISHED_CVECTORS",
    "cvec_pentagon_report",
]

Exps = Tuple[int, ...]
Poly = Dict[Exps, ScalarQ]


# ---------------------------------------------------------------------------
# Plain multivariate Laurent polynomials (exponent tuple -> ScalarQ)


def _padd(acc: Poly, e: Exps, c: ScalarQ) -> None:
    if e in acc:
        v = acc[e] + c
        if v.is_zero():
            del acc[e]
        else:
            acc[e] = v
    elif not c.is_zero():
        acc[e] = c


def _pmul(p1: Poly, p2: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            _padd(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return out


def _div_linear(p: Poly, i: int, j: int) -> Poly:
    """Exact quotient p / (x_i - x_j) by long division in x_i."""
    rem = dict(p)
    quot: Poly = {}
    if not rem:
        return quot
    low = min(e[i] for e in rem)
    while rem:
        top = max(e[i] for e in rem)
        if top < low:
            raise ArithmeticError(f"not divisible by x{i + 1} - x{j + 1}")
        for e in [e for e in rem if e[i] == top]:
            c = rem.pop(e)
            qe = e[:i] + (e[i] - 1,) + e[i + 1:]
            _padd(quot, qe, c)
            _padd(rem, qe[:j] + (qe[j] + 1,) + qe[j + 1:], c)
    return quot


@lru_cache(maxsize=None)
def _vandermonde(N: int) -> Tuple[Tuple[Exps, int], ...]:
    poly: Poly = {(0,) * N: ScalarQ(1)}
    for i in range(N):
        for j in range(i + 1, N):
            ei = tuple(1 if k == i else 0 for k in range(N))
            ej = tuple(1 if k == j else 0 for k in range(N))
            poly = _pmul(poly, {ei: ScalarQ(1), ej: ScalarQ(-1)})
    return tuple((e, int(str(c))) for e, c in poly.items())


def vandermonde(N: int) -> Poly:
    """prod_{i<j} (x_i - x_j)."""
    return {e: ScalarQ(c) for e, c in _vandermonde(N)}


def _div_vandermonde(p: Poly, N: int) -> Poly:
    for i in range(N):
        for j in range(i + 1, N):
            p = _div_linear(p, i, j)
    return p


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Symmetric Laurent polynomials


class SymPolyN:
    """Symmetric Laurent polynomial in N variables, stored in the monomial basis.

    Keys are weakly decreasing exponent vectors of length N (parts may be
    negative); the value is the coefficient of every permutation.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.terms: Dict[Exps, ScalarQ] = {}
        for k, c in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != N or any(k[i] < k[i + 1] for i in range(N - 1)):
                raise ValueError(f"{k} is not a dominant exponent vector for N={N}")
            c = ScalarQ.coerce(c)
            if not c.is_zero():
                self.terms[k] = c

    # construction -----------------------------------------------------------
    @classmethod
    def from_poly(cls, N: int, poly: Mapping[Exps, ScalarQ]) -> "SymPolyN":
        dom: Dict[Exps, ScalarQ] = {}
        for e, c in poly.items():
            k = tuple(sorted(e, reverse=True))
            ref = poly.get(k)
            if ref is None or not (ref == c):
                raise ValueError("polynomial is not symmetric")
            dom[k] = ref
        expected = sum(len(set(itertools.permutations(k))) for k in dom)
        if expected != len(poly):
            raise ValueError("polynomial is not symmetric")
        out = cls(N)
        out.terms = dom
        return out

    @classmethod
    def one(cls, N: int) -> "SymPolyN":
        return cls(N, {(0,) * N: 1})

    @classmethod
    def elementary(cls, N: int, k: int) -> "SymPolyN":
        if k > N:
            return cls(N)
        return cls(N, {(1,) * k + (0,) * (N - k): 1})

    @classmethod
    def power_sum(cls, N: int, k: int) -> "SymPolyN":
        return cls(N, {(k,) + (0,) * (N - 1): 1})

    @classmethod
    def schur(cls, N: int, lam: Sequence[int]) -> "SymPolyN":
        lam = tuple(lam)
        if len(lam) > N:
            if any(lam[N:]):
                return cls(N)
            lam = lam[:N]
        lam = lam + (0,) * (N - len(lam))
        return cls(N, dict(_schur_terms(N, lam)))

    @classmethod
    def from_schur(cls, N: int, coeffs: Mapping[Sequence[int], object]) -> "SymPolyN":
        out = cls(N)
        for lam, c in coeffs.items():
            out = out + cls.schur(N, lam).scale(c)
        return out

    # conversion -------------------------------------------------------------
    def to_poly(self) -> Poly:
        out: Poly = {}
        for k, c in self.terms.items():
            for e in set(itertools.permutations(k)):
                out[e] = c
        return out

    def to_schur(self) -> Dict[Exps, ScalarQ]:
        """Schur coefficients, read off from the alternant a_delta * f."""
        N = self.N
        delta = tuple(range(N - 1, -1, -1))
        alt = _pmul(self.to_poly(), vandermonde(N))
        out = {}
        for e, c in alt.items():
            if all(e[i] > e[i + 1] for i in range(N - 1)):
                out[tuple(x - d for x, d in zip(e, delta))] = c
        return out

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "SymPolyN") -> None:
        if not isinstance(other, SymPolyN) or other.N != self.N:
            raise ValueError("symmetric polynomials in different numbers of variables")

    def __add__(self, other: "SymPolyN") -> "SymPolyN":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _padd(acc, k, c)
        out = SymPolyN(self.N)
        out.terms = acc
        return out

    def __neg__(self) -> "SymPolyN":
        return self.scale(-1)

    def __sub__(self, other: "SymPolyN") -> "SymPolyN":
        return self + (-other)

    def scale(self, c) -> "SymPolyN":
        c = ScalarQ.coerce(c)
        out = SymPolyN(self.N)
        if not c.is_zero():
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, SymPolyN):
            self._check(other)
            return SymPolyN.from_poly(self.N, _pmul(self.to_poly(), other.to_poly()))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPolyN):
            return NotImplemented
        return self.N == other.N and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def truncate(self, degree: int) -> "SymPolyN":
        out = SymPolyN(self.N)
        out.terms = {k: c for k, c in self.terms.items() if sum(k) <= degree}
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]m{k}" for k, c in sorted(self.terms.items(), reverse=True))


@lru_cache(maxsize=None)
def _schur_terms(N: int, lam: Exps) -> Tuple[Tuple[Exps, ScalarQ], ...]:
    delta = tuple(range(N - 1, -1, -1))
    shifted = tuple(l + d for l, d in zip(lam, delta))
    alt: Poly = {}
    for perm in itertools.permutations(range(N)):
        e = tuple(shifted[perm[i]] for i in range(N))
        alt[e] = ScalarQ(_perm_sign(perm))
    quot = _div_vandermonde(alt, N)
    return tuple(SymPolyN.from_poly(N, quot).terms.items())


# ---------------------------------------------------------------------------
# Operators on F^(N)


def macdonald_M1(f: SymPolyN) -> SymPolyN:
    """First Macdonald operator at t = q: a_delta^{-1} (sum_i Y_i) a_delta."""
    if not isinstance(f, SymPolyN):
        raise TypeError("expected a SymPolyN")
    N = f.N
    alt = _pmul(f.to_poly(), vandermonde(N))
    shifted: Poly = {}
    for e, c in alt.items():
        for i in range(N):
            _padd(shifted, e, c * mono(s=2 * e[i]))
    return SymPolyN.from_poly(N, _div_vandermonde(shifted, N))


def _annulus_route(m: int, n: int, f: SymPolyN) -> SymPolyN:
    """Restrict the solid-torus action to l(lambda) <= N with a -> q^{N/2}.

    Generalised partitions are shifted by det^k first; P_(m,n) picks up q^{km}.
    """
    N = f.N
    a_to = {"a": LaurentPoly.from_s({N: 1})}
    out: Dict[Exps, ScalarQ] = {}
    for lam, c in f.to_schur().items():
        k = lam[-1]
        base = Partition(x - k for x in lam)
        img = act_generator(m, n, ModuleVector.basis(base))
        twist = mono(s=2 * k * m)
        for mu, w in img.coeffs.items():
            if mu.length > N:
                continue
            padded = tuple(mu) + (0,) * (N - mu.length)
            _padd(out, tuple(x + k for x in padded), c * twist * w.subs(a_to))
    return SymPolyN.from_schur(N, out)


def p_ops_N(which: Tuple[int, int], f: SymPolyN, route: str = "auto") -> SymPolyN:
    """Action of P_which on F^(N).

    (1,0) uses the Macdonald operator, (0,n) multiplies by p_n, everything
    else (and ``route="annulus"``) restricts the solid-torus action.
    """
    m, n = which
    N = f.N
    if (m, n) == (0, 0):
        raise ValueError("P_(0,0) is not a generator")
    if n < 0:
        raise ValueError("only n >= 0 is implemented on F^(N)")
    if route == "annulus":
        return _annulus_route(m, n, f)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    if (m, n) == (1, 0):
        return macdonald_M1(f).scale(mono(s=1 - N))
    if m == 0:
        return f * SymPolyN.power_sum(N, n)
    return _annulus_route(m, n, f)


def macdonald_eigen_check(N: int, max_boxes: int) -> bool:
    """P_(1,0) s_lambda = sum_k q^{lambda_k - k + (N+1)/2} s_lambda, by both routes."""
    for lam in partitions_upto(max_boxes, max_length=N):
        f = SymPolyN.schur(N, lam)
        parts = tuple(lam) + (0,) * (N - lam.length)
        eig = ScalarQ(LaurentPoly.from_s({}))
        for k in range(1, N + 1):
            eig = eig + mono(s=2 * parts[k - 1] - 2 * k + N + 1)
        target = f.scale(eig)
        if p_ops_N((1, 0), f) != target:
            return False
        if p_ops_N((1, 0), f, route="annulus") != target:
            return False
    return True


def commutator_check_N(N: int, max_boxes: int) -> bool:
    """[P_(1,0), P_(0,1)] = {1} P_(1,1) on every s_lambda with l(lambda) <= N."""
    for lam in partitions_upto(max_boxes, max_length=N):
        f = SymPolyN.schur(N, lam)
        lhs = p_ops_N((1, 0), p_ops_N((0, 1), f)) - p_ops_N((0, 1), p_ops_N((1, 0), f))
        if lhs != p_ops_N((1, 1), f).scale(qbrace(1)):
            return False
    return True


def charvar_relation_residual(max_boxes: int, middle_coeff=None) -> Dict[Exps, SymPolyN]:
    """Rank-2 character-variety relation applied to each s_lambda, |lambda| <= max_boxes.

    Operators compose right to left; E_{2x} = (P_x^2 - P_{2x}) / 2.  Returns
    only the nonzero residuals.  ``middle_coeff`` replaces the q^{-1} in front
    of P_(1,0) P_(0,1) P_(1,1).
    """
    def P(x):
        return lambda f: p_ops_N(x, f)

    def E(x):
        px, p2x = P(x), P((2 * x[0], 2 * x[1]))
        return lambda f: (px(px(f)) - p2x(f)).scale(Fraction(1, 2))

    P10, P01, P11 = P((1, 0)), P((0, 1)), P((1, 1))
    E20, E02 = E((1, 0)), E((0, 1))
    mid = mono(s=-2) if middle_coeff is None else ScalarQ.coerce(middle_coeff)
    out = {}
    for lam in partitions_upto(max_boxes, max_length=2):
        f = SymPolyN.schur(2, lam)
        r = (E02(P10(P10(f))).scale(mono(s=1))
             + P11(P11(f)).scale(mono(s=-1))
             + P01(P01(E20(f))).scale(mono(s=-1))
             - P10(P01(P11(f))).scale(mid)
             - E02(E20(f)).scale(mono(s=1, c=2) + mono(s=-1, c=2)))
        if not r.is_zero():
            out[tuple(lam)] = r
    return out


def canoe_wavefunction_N(N: int, degree: int) -> SymPolyN:
    """prod_k Phi(x_k) up to total degree."""
    terms = {}
    for lam in partitions_upto(degree, max_length=N):
        parts = tuple(lam) + (0,) * (N - lam.length)
        c = ScalarQ(1)
        for x in parts:
            c = c * dilog_coefficient(x)
        terms[parts] = c
    return SymPolyN(N, terms)


def face_qde_residual(N: int, degree: int) -> SymPolyN:
    """([N]_q - q^{(1-N)/2} M_1 + q^{N/2} e_1) prod_k Phi(x_k), up to degree."""
    if N < 1:
        raise ValueError("N must be positive")
    psi = canoe_wavefunction_N(N, degree)
    out = (psi.scale(qint(N)) - macdonald_M1(psi).scale(mono(s=1 - N))
           + (psi * SymPolyN.elementary(N, 1)).scale(mono(s=N)))
    return out.truncate(degree)


# ---------------------------------------------------------------------------
# q-Whittaker basis (N = 2)


class WhittakerCoeffs(dict):
    """Finitely supported function Z^2 -> ScalarQ."""

    def __init__(self, data: Optional[Mapping[Tuple[int, int], object]] = None):
        super().__init__()
        for k, c in (data or {}).items():
            c = ScalarQ.coerce(c)
            if not c.is_zero():
                self[(int(k[0]), int(k[1]))] = c

    def add(self, k: Tuple[int, int], c: ScalarQ) -> None:
        v = self[k] + c if k in self else c
        if v.is_zero():
            self.pop(k, None)
        else:
            self[k] = v

    def in_cone(self) -> bool:
        return all(l1 >= l2 >= 0 for l1, l2 in self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, dict):
            return NotImplemented
        keys = set(self) | set(other)
        zero = ScalarQ(0)
        return all(self.get(k, zero) == other.get(k, zero) for k in keys)

    __hash__ = None  # type: ignore[assignment]


def _one_minus_q(k: int) -> ScalarQ:
    return ScalarQ(1) - mono(s=2 * k)


def _restrict2(v: ModuleVector) -> ModuleVector:
    return ModuleVector({lam: c for lam, c in v.coeffs.items() if lam.length <= 2})


@lru_cache(maxsize=None)
def _r_in_schur(l1: int, l2: int) -> Tuple[Tuple[Partition, ScalarQ], ...]:
    if l1 < l2:
        return ()
    if l2 > 0:
        base = _r_in_schur(l1 - l2, 0)
        return tuple((Partition((mu[0] + l2 if mu.length > 0 else l2,
                                 (mu[1] if mu.length > 1 else 0) + l2)), c) for mu, c in base)
    if l1 == 0:
        return ((Partition(()), ScalarQ(1)),)
    prev = ModuleVector(dict(_r_in_schur(l1 - 1, 0)))
    side = ModuleVector(dict(_r_in_schur(l1 - 1, 1)))
    out = _restrict2(act_generator(0, 1, prev)) - side.scale(_one_minus_q(l1 - 1))
    return tuple(out.items())


def r_in_schur(lam: Sequence[int]) -> ModuleVector:
    """R_lambda expanded in Schur functions of two variables."""
    l1, l2 = (tuple(lam) + (0, 0))[:2]
    if not l1 >= l2 >= 0 or len([x for x in lam if x]) > 2:
        raise ValueError(f"{tuple(lam)} is not a partition with at most two rows")
    return ModuleVector(dict(_r_in_schur(l1, l2)))


def whittaker_convert(direction: str, v):
    """``to_R``: Schur ModuleVector -> WhittakerCoeffs; ``to_schur``: the reverse."""
    if direction == "to_schur":
        out = ModuleVector()
        for lam, c in v.items():
            out = out + r_in_schur(lam).scale(c)
        return out
    if direction != "to_R":
        raise ValueError("direction must be 'to_R' or 'to_schur'")
    rem = _restrict2(v) if isinstance(v, ModuleVector) else v
    if len(rem.coeffs) != len(v.coeffs):
        raise ValueError("input has partitions with more than two rows")
    out = WhittakerCoeffs()
    while rem.coeffs:
        lam = max(rem.coeffs, key=lambda p: (p.size, p[0] if p.length else 0))
        c = rem.coeffs[lam]
        key = (lam[0] if lam.length else 0, lam[1] if lam.length > 1 else 0)
        out.add(key, c)
        rem = rem - r_in_schur(key).scale(c)
    return out


def _sym_to_module(f: SymPolyN) -> ModuleVector:
    coeffs = {}
    for lam, c in f.to_schur().items():
        if lam[-1] < 0:
            raise ValueError("negative parts are not supported here")
        coeffs[Partition(lam)] = c
    return ModuleVector(coeffs)


def whittaker_wavefunction_coeffs(max_n: int) -> WhittakerCoeffs:
    """R-basis coefficients of Phi(x_1) Phi(x_2) up to degree max_n."""
    return whittaker_convert("to_R", _sym_to_module(canoe_wavefunction_N(2, max_n)))


def whittaker_wavefunction_check(max_n: int) -> bool:
    """Single-row support, c_0 = 1 and (1 - q^n) c_n = -q^{1/2} c_{n-1}.

    The recursion resolves the square root in (-q)^{n/2} as (-q^{1/2})^n,
    which is also the X^n coefficient of Phi.
    """
    c = whittaker_wavefunction_coeffs(max_n)
    zero = ScalarQ(0)
    if any(l2 != 0 for _, l2 in c):
        return False
    if not c.get((0, 0), zero) == ScalarQ(1):
        return False
    for n in range(1, max_n + 1):
        cn, prev = c.get((n, 0), zero), c.get((n - 1, 0), zero)
        if not (_one_minus_q(n) * cn == -mono(s=1) * prev):
            return False
        if not cn == dilog_coefficient(n):
            return False
    return True


# ---------------------------------------------------------------------------
# The U, V quantum torus acting on coefficient functions

UV_LATTICE = QLattice.from_matrix(
    [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], ("U1", "U2", "V1", "V2"))

_UV_INDEX = {"U1": 0, "U2": 1, "V1": 2, "V2": 3}
_TOKEN = re.compile(r"^(U1|U2|V1|V2)(?:\^(-?\d+))?$")


def uv(word: str, c=1) -> QTElement:
    """Literal operator product, e.g. uv("V1^-1 V2 U2", -q^{1/2})."""
    vec = [0, 0, 0, 0]
    twist = 0
    for tok in word.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad UV token {tok!r}")
        g = [0, 0, 0, 0]
        g[_UV_INDEX[m.group(1)]] = int(m.group(2) or 1)
        twist += UV_LATTICE.pair(tuple(vec), tuple(g))
        vec = [x + y for x, y in zip(vec, g)]
    return QTElement.monomial(UV_LATTICE, tuple(vec), ScalarQ.coerce(c) * mono(s=twist))


def apply_uv(op: QTElement, phi: Mapping[Tuple[int, int], ScalarQ]) -> WhittakerCoeffs:
    """U_i phi(l) = q^{l_i} phi(l), V_i shifts the argument l_i down by one."""
    out = WhittakerCoeffs()
    for lam, c in op.terms.items():
        a, b = lam[:2], lam[2:]
        ab = a[0] * b[0] + a[1] * b[1]
        for nu, f in phi.items():
            mu = (nu[0] + b[0], nu[1] + b[1])
            out.add(mu, c * f * mono(s=2 * (a[0] * mu[0] + a[1] * mu[1]) - ab))
    return out


def toda_ops() -> Tuple[QTElement, QTElement]:
    """H_1 = V_1 + V_2 - q U_1 U_2^{-1} V_2 and H_2 = V_1 V_2."""
    h1 = uv("V1") + uv("V2") + uv("U1 U2^-1 V2", mono(s=2, c=-1))
    return h1, uv("V1 V2")


def whittaker_macdonald_op() -> QTElement:
    """P_(1,0) on R-coefficients:
    q^{-1/2} (q U_1 + U_2 - (1 - q U_1 U_2^{-1})(1 - q^2 U_1 U_2^{-1}) U_2 V_1^{-1} V_2)."""
    one = QTElement.one(UV_LATTICE)
    f1 = one - uv("U1 U2^-1", mono(s=2))
    f2 = one - uv("U1 U2^-1", mono(s=4))
    inner = uv("U1", mono(s=2)) + uv("U2") - f1 * f2 * uv("U2 V1^-1 V2")
    return inner.scale(mono(s=-1))


def toda_consistency_check(max_boxes: int) -> bool:
    """The UV operators reproduce e_1, e_2 and P_(1,0) on every R_lambda."""
    h1, h2 = toda_ops()
    p10 = whittaker_macdonald_op()
    for lam in partitions_upto(max_boxes, max_length=2):
        key = (lam[0] if lam.length else 0, lam[1] if lam.length > 1 else 0)
        delta = WhittakerCoeffs({key: 1})
        r = r_in_schur(key)
        e1 = whittaker_convert("to_R", _restrict2(act_generator(0, 1, r)))
        if apply_uv(h1, delta) != e1:
            return False
        f = SymPolyN.from_schur(2, {(tuple(mu) + (0, 0))[:2]: c for mu, c in r.items()})
        e2 = whittaker_convert("to_R", _sym_to_module(f * SymPolyN.elementary(2, 2)))
        if apply_uv(h2, delta) != e2:
            return False
        m = whittaker_convert("to_R", _sym_to_module(p_ops_N((1, 0), f)))
        if apply_uv(p10, delta) != m:
            return False
    return True


def uv_embedding_images() -> Dict[Tuple[int, int], QTElement]:
    s, si = mono(s=1), mono(s=-1)
    return {
        (1, 0): uv("V2^-1 V1 U1", -s) + uv("U2", si) + uv("V1^-1 V2 U2", -s),
        (0, 1): uv("V1") + uv("V2") - uv("U1 V1^2 V2^-1 U2^-1"),
        (1, 1): uv("U1 V1") + uv("V2 U2") + uv("V1^-1 V2^2 U2", mono(s=2, c=-1)),
    }


def ideal_uv_check(max_n: int) -> bool:
    """U_2 - 1 and 1 - U_1 + q^{1/2} V_1 annihilate the wavefunction coefficients."""
    phi = whittaker_wavefunction_coeffs(max_n)
    one = QTElement.one(UV_LATTICE)
    gens = [uv("U2") - one, one - uv("U1") + uv("V1", mono(s=1))]
    for g in gens:
        res = apply_uv(g, phi)
        # the top row sees the truncation
        if any(mu[0] <= max_n for mu in res):
            return False
    return True


def intertwiner_check(max_n: int) -> bool:
    """After rescaling by prod_{k <= l1 - l2} (1 - q^k) the ideal becomes
    (U_2 - 1, 1 + q^{-1/2} V_1^{-1}) and the coefficients are (-q^{1/2})^{l1}."""
    phi = whittaker_wavefunction_coeffs(max_n)
    tilde = WhittakerCoeffs()
    for (l1, l2), c in phi.items():
        for k in range(1, l1 - l2 + 1):
            c = c * _one_minus_q(k)
        tilde.add((l1, l2), c)
    if tilde != WhittakerCoeffs({(n, 0): mono(s=n, c=(-1) ** n) for n in range(max_n + 1)}):
        return False
    one = QTElement.one(UV_LATTICE)
    for g in (uv("U2") - one, one + uv("V1^-1", mono(s=-1))):
        res = apply_uv(g, tilde)
        if any(0 <= mu[0] < max_n for mu in res):
            return False
    return True


def uv_embedding_check(order: int = 0) -> bool:
    """[P_(1,0), P_(0,1)] = {1} P_(1,1) for the symmetric UV images, plus the
    annihilator check on the q-Whittaker wavefunction (to degree max(order, 4))."""
    img = uv_embedding_images()
    comm = img[(1, 0)] * img[(0, 1)] - img[(0, 1)] * img[(1, 0)]
    if not comm == img[(1, 1)].scale(qbrace(1)):
        return False
    return ideal_uv_check(max(order, 4))


# ---------------------------------------------------------------------------
# Abelianised Baxter operators

_BAXTER_FACTORS = {
    (0, 1): [("V1", (0, 1)), ("U1 V1^2 V2^-1 U2^-1", (0, -1)), ("V2", (0, 1))],
    (1, 0): [("V1^-1 V2 U2", (1, -1)), ("U2", (-1, 1)), ("V2^-1 V1 U1", (1, -1))],
    (1, 1): [("U1 V1", (0, 1)), ("V1^-1 V2^2 U2", (2, -1)), ("V2 U2", (0, 1))],
}


def _factor_element(word: str, coeff: Tuple[int, int]) -> Tuple[Tuple[int, ...], ScalarQ]:
    (v, c), = uv(word, mono(s=coeff[0], c=coeff[1])).terms.items()
    return v, c


def abelian_baxter(which: Tuple[int, int], order: int,
                   grading: Sequence[int] = (1, 1, 1, 1)) -> QTSeries:
    """Rank-2 Baxter operator as a product of three quantum dilogarithms."""
    which = tuple(which)
    if which not in _BAXTER_FACTORS:
        raise ValueError(f"no abelian Baxter operator for {which}")
    grading = tuple(grading)
    out = QTSeries(UV_LATTICE, grading, order, {UV_LATTICE.zero(): 1})
    for word, coeff in _BAXTER_FACTORS[which]:
        v, c = _factor_element(word, coeff)
        out = out * dilog(UV_LATTICE, v, order, grading, c=c)
    return out


def uv_pentagon_check(order: int, grading: Sequence[int] = (1, 1, 1, 1),
                      omit_middle: bool = False) -> bool:
    """Q_(1,0) Q_(0,1) == Q_(0,1) Q_(1,1) Q_(1,0) in the U, V torus."""
    q10 = abelian_baxter((1, 0), order, grading)
    q01 = abelian_baxter((0, 1), order, grading)
    lhs = q10 * q01
    rhs = q01 * q10 if omit_middle else q01 * abelian_baxter((1, 1), order, grading) * q10
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# The five-vertex local seed

# b_ij = #(i -> j) - #(j -> i), vertices in label order 1..5
_LOC_B = [
    [0, 2, -2, 1, 0],
    [-2, 0, 2, 0, -1],
    [2, -2, 0, -1, 1],
    [-1, 0, 1, 0, 0],
    [0, 1, -1, 0, 0],
]

# Compositions written right to left, 0-based vertex indices.
LOC_SEQUENCES = (
    (1, 0, 4, 2, 0, 3),
    (4, 2, 1, 0, 2, 3, 1, 2, 4),
)

# The multiset as printed alongside the sequences.
PUBLISHED_CVECTORS = sorted([
    (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
    (-1, -1, 0, -1, 0), (0, -1, -1, 0, -1),
])

# Cluster coordinates as UV monomials: (word, (s power, sign)).
LOC_UV_IMAGES = (
    ("V1 V2^-1", (-1, -1)),
    ("U1^-1 V1^-2 V2^2 U2", (-1, -1)),
    ("V2^-1 U2^-1 V1 U1", (1, -1)),
    ("V1^-1 V2 U2", (1, -1)),
    ("V1", (0, 1)),
)


def loc_quiver_seed() -> CSeed:
    """Five vertices; 1-3 are mutable for the canoe, 4-5 are mutated by the
    Baxter sequences, so nothing is frozen here."""
    return CSeed([r[:] for r in _LOC_B], frozen=[], labels=["1", "2", "3", "4", "5"])


def cvec_pentagon_report(order: int = 4) -> dict:
    seed = loc_quiver_seed()
    _, _, c1 = cvec_sequence(seed, LOC_SEQUENCES[0])
    _, _, c2 = cvec_sequence(seed, LOC_SEQUENCES[1])
    series_agree = None
    if order >= 0:
        s1 = auto_series(seed, LOC_SEQUENCES[0], order)
        s2 = auto_series(seed, LOC_SEQUENCES[1], order)
        series_agree = (s1 - s2).is_zero()
    return {
        "cvectors": [list(v) for v in c1],
        "cvectorsSecond": [list(v) for v in c2],
        "sequencesAgree": c1 == c2,
        "matchesPublished": c1 == PUBLISHED_CVECTORS,
        "seriesAgree": series_agree,
        "order": order,
    }

"""Quantum tori, quantum dilogarithms, mutations and c-vectors.

A quantum torus over a lattice with skew form (.,.) has basis X_lambda and
product X_l X_m = q^{(l,m)/2} X_{l+m} = s^{(l,m)} X_{l+m}, so that
X_l X_m = q^{(l,m)} X_m X_l.  Infinite expressions (dilogarithms, localised
mutation images) live in QTSeries: truncations with respect to a positive
integer grading of the lattice.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import LaurentPoly, ScalarQ, mono

__all__ = [
    "QLattice",
    "QTElement",
    "QTSeries",
    "IntegrityError",
    "dilog_coefficient",
    "dilog_inverse_coefficient",
    "dilog",
    "dilog_exp",
    "dilog_ratio",
    "mutate_lattice",
    "mutate_map",
    "ad_dilog",
    "ad_dilog_series",
    "face_relation",
    "multiplicative_relation",
    "global_relation",
    "face_shift_check",
    "local_mutation_lattice",
    "dmod_residual_exact",
    "dmod_residual_series",
    "dmod_check",
    "qt_pentagon_check",
    "CSeed",
    "cvec_mutate",
    "cvec_sequence",
    "auto_series",
    "random_cseed",
    "is_sign_coherent",
]

Vec = Tuple[int, ...]


class IntegrityError(RuntimeError):
    """An invariant that should be impossible to break was broken."""


def _vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _vscale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


@dataclass(frozen=True)
class QLattice:
    rank: int
    form: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        form = tuple(tuple(int(x) for x in row) for row in self.form)
        object.__setattr__(self, "form", form)
        if len(form) != self.rank or any(len(r) != self.rank for r in form):
            raise ValueError("form has the wrong shape")
        for i in range(self.rank):
            for j in range(self.rank):
                if form[i][j] != -form[j][i]:
                    raise ValueError("form must be antisymmetric")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(self.rank)))

    @classmethod
    def from_matrix(cls, form, labels: Sequence[str] = ()) -> "QLattice":
        return cls(len(form), tuple(tuple(r) for r in form), tuple(labels))

    def pair(self, a: Vec, b: Vec) -> int:
        f = self.form
        total = 0
        for i, x in enumerate(a):
            if x:
                row = f[i]
                for j, y in enumerate(b):
                    if y:
                        total += x * row[j] * y
        return total

    def basis(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> Vec:
        return (0,) * self.rank


class QTElement:
    """Laurent polynomial in a quantum torus."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: QLattice, terms: Optional[Mapping[Vec, object]] = None):
        self.lattice = lattice
        self.terms: Dict[Vec, ScalarQ] = {}
        for v, c in (terms or {}).items():
            c = ScalarQ.coerce(c)
            if not c.is_zero():
                self.terms[tuple(v)] = c

    @classmethod
    def monomial(cls, lattice: QLattice, v: Vec, c=1) -> "QTElement":
        return cls(lattice, {tuple(v): c})

    @classmethod
    def one(cls, lattice: QLattice) -> "QTElement":
        return cls(lattice, {lattice.zero(): 1})

    def _new(self, terms: Dict[Vec, ScalarQ]):
        out = self.__class__.__new__(self.__class__)
        out.lattice = self.lattice
        out.terms = terms
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "QTElement":
        if not isinstance(other, QTElement):
            other = QTElement(self.lattice, {self.lattice.zero(): other})
        out = dict(self.terms)
        for v, c in other.terms.items():
            n = out[v] + c if v in out else c
            if n.is_zero():
                out.pop(v, None)
            else:
                out[v] = n
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({v: -c for v, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QTElement):
            other = QTElement(self.lattice, {self.lattice.zero(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QTElement":
        c = ScalarQ.coerce(c)
        if c.is_zero():
            return self._new({})
        return self._new({v: x * c for v, x in self.terms.items()})

    def _mul_terms(self, other: "QTElement", keep: Callable[[Vec], bool] = None) -> Dict[Vec, ScalarQ]:
        lat = self.lattice
        acc: Dict[Vec, ScalarQ] = {}
        for v1, c1 in self.terms.items():
            for v2, c2 in other.terms.items():
                v = _vadd(v1, v2)
                if keep is not None and not keep(v):
                    continue
                c = c1 * c2 * mono(s=lat.pair(v1, v2))
                acc[v] = acc[v] + c if v in acc else c
        return {v: c for v, c in acc.items() if not c.is_zero()}

    def __mul__(self, other):
        if isinstance(other, QTElement):
            return self._new(self._mul_terms(other))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def map_coeffs(self, f) -> "QTElement":
        return QTElement(self.lattice, {v: f(c) for v, c in self.terms.items()})

    def items(self):
        return sorted(self.terms.items())

    def to_json(self) -> list:
        return [{"vector": list(v), "coeff": c.to_json()} for v, c in self.items()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]X{v}" for v, c in self.items())


class QTSeries(QTElement):
    """Truncated series: only vectors of grade <= order are kept."""

    __slots__ = ("grading", "order")

    def __init__(self, lattice: QLattice, grading: Sequence[int], order: int,
                 terms: Optional[Mapping[Vec, object]] = None):
        super().__init__(lattice, terms)
        self.grading = tuple(grading)
        self.order = order
        self.terms = {v: c for v, c in self.terms.items() if self.grade(v) <= order}

    @classmethod
    def from_element(cls, x: QTElement, grading: Sequence[int], order: int) -> "QTSeries":
        return cls(x.lattice, grading, order, x.terms)

    def grade(self, v: Vec) -> int:
        return sum(g * x for g, x in zip(self.grading, v))

    def _new(self, terms):
        out = QTSeries.__new__(QTSeries)
        out.lattice = self.lattice
        out.grading = self.grading
        out.order = self.order
        out.terms = {v: c for v, c in terms.items() if self.grade(v) <= self.order}
        return out

    def __mul__(self, other):
        if isinstance(other, QTElement):
            order = self.order
            if isinstance(other, QTSeries):
                order = min(order, other.order)
            out = self._new(self._mul_terms(other, lambda v: self.grade(v) <= order))
            out.order = order
            return out
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, QTElement):
            return QTSeries.from_element(other, self.grading, self.order) * self
        return self.scale(other)

    def truncate(self, order: int) -> "QTSeries":
        out = self._new(dict(self.terms))
        out.order = min(order, self.order)
        out.terms = {v: c for v, c in out.terms.items() if out.grade(v) <= out.order}
        return out


def _grade(grading: Sequence[int], v: Vec) -> int:
    return sum(g * x for g, x in zip(grading, v))


# ---------------------------------------------------------------------------
# Quantum dilogarithm  Phi(X) = prod_{n>=0} (1 + q^{n+1/2} X)^{-1}


@lru_cache(maxsize=None)
def dilog_coefficient(n: int) -> ScalarQ:
    """Coefficient of X^n in Phi(X): (-1)^n q^{n/2} / (q;q)_n."""
    # (q;q)_n = prod (-s^j {j}) = (-1)^n s^{n(n+1)/2} prod {j}
    return mono(s=n - n * (n + 1) // 2) * ScalarQ(1, {j: 1 for j in range(1, n + 1)})


@lru_cache(maxsize=None)
def dilog_inverse_coefficient(n: int) -> ScalarQ:
    """Coefficient of X^n in Phi(X)^{-1}: q^{n^2/2} / (q;q)_n."""
    return mono(s=n * n - n * (n + 1) // 2, c=(-1) ** n) * ScalarQ(1, {j: 1 for j in range(1, n + 1)})


def _check_positive(lattice: QLattice, grading, v: Vec) -> int:
    g = _grade(grading, v)
    if g <= 0:
        raise ValueError(f"X_{v} has non-positive grade {g}")
    return g


def _default_grading(lattice: QLattice) -> Tuple[int, ...]:
    return (1,) * lattice.rank


def dilog(lattice: QLattice, v: Vec, order: int, grading: Optional[Sequence[int]] = None,
          power: int = 1, c=1) -> QTSeries:
    """Phi(c X_v)^{power} with power = +-1, truncated at the given order."""
    grading = tuple(grading) if grading is not None else _default_grading(lattice)
    g = _check_positive(lattice, grading, v)
    c = ScalarQ.coerce(c)
    coeff = dilog_coefficient if power == 1 else dilog_inverse_coefficient
    if power not in (1, -1):
        raise ValueError("power must be +1 or -1")
    terms = {}
    n = 0
    while n * g <= order:
        terms[_vscale(n, v)] = coeff(n) * c ** n
        n += 1
    return QTSeries(lattice, grading, order, terms)


def dilog_exp(lattice: QLattice, v: Vec, order: int, grading: Optional[Sequence[int]] = None) -> QTSeries:
    """Phi(X_v) as exp(sum_m (-q^{1/2} X_v)^m / ((1 - q^m) m))."""
    grading = tuple(grading) if grading is not None else _default_grading(lattice)
    g = _check_positive(lattice, grading, v)
    # (-s)^m / ((1 - s^{2m}) m) = (-1)^{m+1} / (m {m})
    log = QTSeries(lattice, grading, order, {
        _vscale(m, v): ScalarQ.inv_brace(m) * Fraction((-1) ** (m + 1), m)
        for m in range(1, order // g + 1)
    })
    result = QTSeries(lattice, grading, order, {lattice.zero(): 1})
    term = result
    j = 1
    while term.terms:
        term = (term * log).scale(Fraction(1, j))
        result = result + term
        j += 1
    return result


def _geometric_inverse(lattice, grading, order, v: Vec, c: ScalarQ, budget: int) -> QTSeries:
    """(1 + c X_v)^{-1} expanded in whichever direction has positive grade."""
    g = _grade(grading, v)
    if g > 0:
        terms = {}
        n = 0
        while n * g <= budget:
            terms[_vscale(n, v)] = (-c) ** n
            n += 1
    elif g < 0:
        # (1 + cX)^{-1} = c^{-1} X^{-1} (1 + c^{-1} X^{-1})^{-1}
        w = _vscale(-1, v)
        ci = ScalarQ(1) / c
        terms = {}
        n = 1
        while n * (-g) <= budget:
            terms[_vscale(n, w)] = ci * (-ci) ** (n - 1)
            n += 1
    else:
        raise ValueError(f"cannot expand (1 + cX_{v})^-1: grade zero")
    return QTSeries(lattice, grading, budget, terms)


def dilog_ratio(lattice: QLattice, v: Vec, m: int, order: int, grading: Sequence[int],
                budget: Optional[int] = None, inverse: bool = False) -> QTSeries:
    """Phi(q^m X_v) / Phi(X_v), or its reciprocal when ``inverse``.

    For m >= 0 this is prod_{j<m} (1 + q^{j+1/2} X_v); for m < 0 it is
    prod_{j=1}^{-m} (1 + q^{1/2-j} X_v)^{-1}.
    """
    budget = order if budget is None else budget
    if m >= 0:
        factors = [(2 * j + 1, 1) for j in range(m)]
    else:
        factors = [(1 - 2 * j, -1) for j in range(1, -m + 1)]
    one = QTSeries(lattice, grading, budget, {lattice.zero(): 1})
    out = one
    for c, e in factors:
        if inverse:
            e = -e
        if e == 1:
            out = out * (one + QTSeries(lattice, grading, budget, {v: mono(s=c)}))
        else:
            out = out * _geometric_inverse(lattice, grading, order, v, mono(s=c), budget)
    return out


def ad_dilog(lattice: QLattice, e: Vec, x: QTElement, order: int, grading: Sequence[int],
             power: int = 1) -> QTSeries:
    """Phi(X_e)^{power} x Phi(X_e)^{-power} in closed form.

    Uses f(X_e) X_v = X_v f(q^{(e,v)} X_e).
    """
    out = QTSeries(lattice, grading, order, {})
    for v, c in x.terms.items():
        budget = max(order - _grade(grading, v), 0)
        ratio = dilog_ratio(lattice, e, lattice.pair(e, v), order, grading, budget,
                            inverse=(power == -1))
        out = out + _mul_shifted(QTSeries(lattice, grading, order, {v: c}), ratio, order)
    return out


def _mul_shifted(head: QTSeries, tail: QTSeries, order: int) -> QTSeries:
    lat = head.lattice
    res = QTSeries(lat, head.grading, order, {})
    res.terms = head._mul_terms(tail, lambda v: _grade(head.grading, v) <= order)
    return res


def ad_dilog_series(lattice: QLattice, e: Vec, x: QTElement, order: int,
                    grading: Sequence[int], power: int = 1) -> QTSeries:
    """Phi(X_e)^{power} x Phi(X_e)^{-power} by multiplying truncated series."""
    shift = max((max(0, -_grade(grading, v)) for v in x.terms), default=0)
    big = order + shift
    left = dilog(lattice, e, big, grading, power=power)
    right = dilog(lattice, e, big, grading, power=-power)
    mid = QTSeries(lattice, grading, big, x.terms)
    prod = left * mid * right
    return QTSeries(lattice, grading, order, prod.terms)


# ---------------------------------------------------------------------------
# Lattice mutations and the birational mutation map


def mutate_lattice(lattice: QLattice, k: int, sign: int) -> Tuple[List[Vec], QLattice]:
    """nu^{sign}_k: images of the new basis e'_i in old coordinates, and the new form.

    e'_k -> -e_k and e'_i -> e_i + [sign (e_i, e_k)]_+ e_k otherwise.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    images = []
    for i in range(lattice.rank):
        if i == k:
            images.append(_vscale(-1, lattice.basis(k)))
        else:
            b = max(sign * lattice.form[i][k], 0)
            images.append(_vadd(lattice.basis(i), _vscale(b, lattice.basis(k))))
    form = tuple(tuple(lattice.pair(images[i], images[j]) for j in range(lattice.rank))
                 for i in range(lattice.rank))
    return images, QLattice(lattice.rank, form, lattice.labels)


def _apply_images(images: Sequence[Vec], v: Vec) -> Vec:
    out = (0,) * len(images[0])
    for x, img in zip(v, images):
        if x:
            out = _vadd(out, _vscale(x, img))
    return out


def mutate_map(lattice: QLattice, k: int, order: int, grading: Optional[Sequence[int]] = None,
               sign: int = 1) -> Callable[[QTElement], QTSeries]:
    """The mutation mu_k from the mutated torus to the original one.

    Generators go to X_{nu(lambda')} times Phi(q^m X_{e_k}) / Phi(X_{e_k}),
    which is the closed form of Ad_{Phi(X_{e_k})} o nu^+.  ``sign=-1``
    uses the other factorisation Ad_{Phi(X_{-e_k})^{-1}} o nu^-.
    """
    grading = tuple(grading) if grading is not None else _default_grading(lattice)
    images, _ = mutate_lattice(lattice, k, sign)
    ek = lattice.basis(k)

    def apply(x: QTElement) -> QTSeries:
        moved = QTElement(lattice, {})
        for v_new, c in x.terms.items():
            moved = moved + QTElement.monomial(lattice, _apply_images(images, v_new), c)
        if sign == 1:
            return ad_dilog(lattice, ek, moved, order, grading, power=1)
        return ad_dilog(lattice, _vscale(-1, ek), moved, order, grading, power=-1)

    return apply


# ---------------------------------------------------------------------------
# Face relations


def _partial_sums(lattice: QLattice, face: Sequence[int]) -> List[Vec]:
    acc = lattice.zero()
    out = []
    for i in face:
        acc = _vadd(acc, lattice.basis(i))
        out.append(acc)
    return out


def face_relation(lattice: QLattice, face: Sequence[int]) -> QTElement:
    """q^{-1/2} + X_{e1} + X_{e1+e2} + ... + X_{e1+...+e_{n-1}}."""
    if not face:
        raise ValueError("empty face")
    terms: Dict[Vec, ScalarQ] = {lattice.zero(): mono(s=-1)}
    for v in _partial_sums(lattice, face)[:-1]:
        terms[v] = terms[v] + 1 if v in terms else ScalarQ(1)
    return QTElement(lattice, terms)


def multiplicative_relation(lattice: QLattice, face: Sequence[int]) -> QTElement:
    """X_{e1+...+en} - q^{-1}."""
    total = _partial_sums(lattice, face)[-1]
    return QTElement(lattice, {total: 1}) - QTElement(lattice, {lattice.zero(): mono(s=-2)})


def global_relation(lattice: QLattice, genus: int, edges: Optional[Sequence[int]] = None) -> QTElement:
    """X_s - (-q)^{(g+3)/2} with s the sum of all edge vectors."""
    edges = range(lattice.rank) if edges is None else edges
    total = lattice.zero()
    for i in edges:
        total = _vadd(total, lattice.basis(i))
    if (genus + 3) % 2:
        raise NotImplementedError("(-q)^{1/2} needs a square root of -1 adjoined; only even g+3 is supported")
    h = (genus + 3) // 2
    return QTElement(lattice, {total: 1}) - QTElement(lattice, {lattice.zero(): mono(s=2 * h, c=(-1) ** h)})


def face_shift_check(lattice: QLattice, face: Sequence[int]) -> bool:
    """q^{1/2} X_{e_n} R_f equals the relation of the rotated face modulo X_{e1+..+en} - q^{-1}."""
    face = list(face)
    rotated = [face[-1]] + face[:-1]
    lhs = QTElement.monomial(lattice, lattice.basis(face[-1]), mono(s=1)) * face_relation(lattice, face)
    diff = lhs - face_relation(lattice, rotated)
    rel = multiplicative_relation(lattice, face)
    total = _partial_sums(lattice, face)[-1]
    c = diff.terms.get(total, ScalarQ(0))
    return (diff - rel.scale(c)).is_zero()


# ---------------------------------------------------------------------------
# The local five-edge configuration and the compatibility of face relations
# with mutation


def local_mutation_lattice(pairing: int = 1) -> QLattice:
    """Edges e0..e4 around a mutable edge e0; (e0, e1) is the given pairing."""
    form = [[0] * 5 for _ in range(5)]

    def put(i, j, v):
        form[i][j] = v
        form[j][i] = -v

    put(0, 1, pairing)
    put(0, 2, -1)
    put(0, 3, 1)
    put(0, 4, -1)
    put(1, 2, 1)
    put(3, 4, 1)
    return QLattice.from_matrix(form, ("e0", "e1", "e2", "e3", "e4"))


class _Localized:
    """Sums of X_v (1 + s^{c_1} Y)^{-1} ... (1 + s^{c_r} Y)^{-1} with Y = X_y fixed.

    The factors commute with each other; moving them past X_v rescales Y.
    """

    def __init__(self, lattice: QLattice, y: Vec, terms=None):
        self.lattice = lattice
        self.y = y
        self.terms: Dict[Tuple[Vec, Tuple[int, ...]], ScalarQ] = dict(terms or {})

    @classmethod
    def of(cls, lattice, y, x: QTElement) -> "_Localized":
        return cls(lattice, y, {(v, ()): c for v, c in x.terms.items()})

    @classmethod
    def inverse_factor(cls, lattice, y, c_exp: int) -> "_Localized":
        return cls(lattice, y, {(lattice.zero(), (c_exp,)): ScalarQ(1)})

    def __add__(self, other: "_Localized") -> "_Localized":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return _Localized(self.lattice, self.y, {k: c for k, c in out.items() if not c.is_zero()})

    def scale(self, c) -> "_Localized":
        return _Localized(self.lattice, self.y, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "_Localized") -> "_Localized":
        lat = self.lattice
        out: Dict[Tuple[Vec, Tuple[int, ...]], ScalarQ] = {}
        for (v1, d1), c1 in self.terms.items():
            for (v2, d2), c2 in other.terms.items():
                # D(Y)^{-1} X_v = X_v D(q^{(y,v)} Y)^{-1}
                shift = 2 * lat.pair(self.y, v2)
                den = tuple(sorted([c + shift for c in d1] + list(d2)))
                key = (_vadd(v1, v2), den)
                val = c1 * c2 * mono(s=lat.pair(v1, v2))
                out[key] = out[key] + val if key in out else val
        return _Localized(lat, self.y, {k: c for k, c in out.items() if not c.is_zero()})

    def cleared(self) -> Tuple[QTElement, Dict[int, int]]:
        """Numerator over the common right denominator."""
        common: Dict[int, int] = {}
        for (_, den), _c in self.terms.items():
            counts: Dict[int, int] = {}
            for c in den:
                counts[c] = counts.get(c, 0) + 1
            for c, e in counts.items():
                common[c] = max(common.get(c, 0), e)
        num = QTElement(self.lattice)
        for (v, den), c in self.terms.items():
            missing = dict(common)
            for x in den:
                missing[x] -= 1
            term = QTElement.monomial(self.lattice, v, c)
            for x, e in missing.items():
                for _ in range(e):
                    term = term * self._factor(x)
            num = num + term
        return num, common

    def _factor(self, c_exp: int) -> QTElement:
        lat = self.lattice
        return QTElement(lat, {lat.zero(): 1, self.y: mono(s=c_exp)})


def _dmod_images(lattice: QLattice):
    """Images under mu_0 of X'_{e0}, X'_{e1}, X'_{e2} as localized elements."""
    e0 = lattice.basis(0)
    y = _vscale(-1, e0)

    def loc(x: QTElement) -> _Localized:
        return _Localized.of(lattice, y, x)

    def image(i: int) -> _Localized:
        if i == 0:
            return loc(QTElement.monomial(lattice, y))
        ei = lattice.basis(i)
        lam = _vadd(ei, _vscale(max(lattice.form[i][0], 0), e0))
        m = lattice.pair(e0, lam)
        out = loc(QTElement.monomial(lattice, lam))
        if m >= 0:
            for j in range(m):
                out = out * loc(QTElement(lattice, {lattice.zero(): 1, e0: mono(s=2 * j + 1)}))
        else:
            # (1 + q^{1/2-j} X_{e0})^{-1} = q^{j-1/2} Y (1 + q^{j-1/2} Y)^{-1}
            for j in range(1, -m + 1):
                c = 2 * j - 1
                out = out * loc(QTElement.monomial(lattice, y, mono(s=c)))
                out = out * _Localized.inverse_factor(lattice, y, c)
        return out

    return image(0), image(1), image(2)


def _dmod_sides(lattice: QLattice):
    x0, x1, x2 = _dmod_images(lattice)
    lhs = x2 + (x2 * x0).scale(mono(s=1)) + (x2 * x0 * x1).scale(mono(s=2))
    e1, e2 = lattice.basis(1), lattice.basis(2)
    x2 = QTElement.monomial(lattice, e2)
    rhs = x2 + (x2 * QTElement.monomial(lattice, e1)).scale(mono(s=1))
    return lhs, rhs


def dmod_residual_exact(pairing: int = 1) -> QTElement:
    """Numerator of mu_0(lhs) - rhs after clearing the common denominator."""
    lattice = local_mutation_lattice(pairing)
    lhs, rhs = _dmod_sides(lattice)
    y = _vscale(-1, lattice.basis(0))
    diff = lhs + _Localized.of(lattice, y, rhs).scale(-1)
    num, _ = diff.cleared()
    return num


def dmod_residual_series(order: int, pairing: int = 1) -> QTSeries:
    """The same residual with inverses expanded as geometric series in X_{-e0}.

    Only coefficients of grade below ``order`` are reliable; the returned
    series is cut there, so it must vanish identically.
    """
    lattice = local_mutation_lattice(pairing)
    grading = (-1, 0, 0, 0, 0)
    y = _vscale(-1, lattice.basis(0))
    lhs, rhs = _dmod_sides(lattice)
    big = order + 2
    total = QTSeries(lattice, grading, big, {})
    for (v, den), c in lhs.terms.items():
        term = QTSeries(lattice, grading, big, {v: c})
        for x in den:
            term = term * _geometric_inverse(lattice, grading, big, y, mono(s=x), big)
        total = total + term
    total = total - QTSeries(lattice, grading, big, rhs.terms)
    return QTSeries(lattice, grading, order - 1, total.terms)


def dmod_check(order: int = 6, pairing: int = 1) -> bool:
    """mu_0 sends the mutated face expression to X_{e2} + q^{1/2} X_{e2} X_{e1}.

    Requires both the exact numerator after clearing denominators and the
    series residual below ``order`` to vanish.
    """
    return dmod_residual_exact(pairing).is_zero() and dmod_residual_series(order, pairing).is_zero()


def qt_pentagon_check(order: int = 6, pairing: int = 1) -> bool:
    """Phi(X_u) Phi(X_v) == Phi(X_v) Phi(X_{u+v}) Phi(X_u) for (u, v) = pairing."""
    lat = QLattice.from_matrix([[0, pairing], [-pairing, 0]], ("u", "v"))
    u, v = (1, 0), (0, 1)
    lhs = dilog(lat, u, order) * dilog(lat, v, order)
    rhs = dilog(lat, v, order) * dilog(lat, (1, 1), order) * dilog(lat, u, order)
    return lhs == rhs


# ---------------------------------------------------------------------------
# c-vectors


@dataclass
class CSeed:
    """Exchange matrix, frozen indices, faces and c-vectors (stored as columns)."""

    B: List[List[int]]
    frozen: List[int] = field(default_factory=list)
    faces: List[List[int]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    C: Optional[List[List[int]]] = None

    def __post_init__(self):
        n = len(self.B)
        self.B = [list(map(int, r)) for r in self.B]
        for i in range(n):
            if len(self.B[i]) != n:
                raise ValueError("B must be square")
            for j in range(n):
                if self.B[i][j] != -self.B[j][i]:
                    raise ValueError("B must be skew-symmetric")
        if self.C is None:
            self.C = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if not self.labels:
            self.labels = [str(i + 1) for i in range(n)]

    @property
    def rank(self) -> int:
        return len(self.B)

    def cvector(self, k: int) -> Tuple[int, ...]:
        return tuple(self.C[i][k] for i in range(self.rank))

    def cvectors(self) -> List[Tuple[int, ...]]:
        return [self.cvector(k) for k in range(self.rank)]

    def lattice(self) -> QLattice:
        return QLattice.from_matrix(self.B, tuple(self.labels))

    def copy(self) -> "CSeed":
        return CSeed([r[:] for r in self.B], self.frozen[:], [f[:] for f in self.faces],
                     self.labels[:], [r[:] for r in self.C])

    def to_json(self) -> dict:
        return {"rank": self.rank, "B": self.B, "frozen": self.frozen, "faces": self.faces,
                "labels": self.labels, "C": self.C}

    @classmethod
    def from_json(cls, obj: Mapping) -> "CSeed":
        seed = cls(obj["B"], list(obj.get("frozen", [])), [list(f) for f in obj.get("faces", [])],
                   list(obj.get("labels", [])), obj.get("C"))
        if obj.get("rank", seed.rank) != seed.rank:
            raise ValueError("rank does not match B")
        return seed


def _tropical_sign(c: Sequence[int]) -> int:
    if all(x >= 0 for x in c) and any(c):
        return 1
    if all(x <= 0 for x in c) and any(c):
        return -1
    return 0


def is_sign_coherent(seed: CSeed) -> bool:
    return all(_tropical_sign(seed.cvector(k)) for k in range(seed.rank))


def cvec_mutate(seed: CSeed, k: int, check_frozen: bool = True) -> Tuple[CSeed, int]:
    """Mutate at k; returns the new seed and the tropical sign of c_k before mutating."""
    n = seed.rank
    if not 0 <= k < n:
        raise IndexError(f"no vertex {k}")
    if check_frozen and k in seed.frozen:
        raise ValueError(f"vertex {k} is frozen")
    ck = seed.cvector(k)
    eps = _tropical_sign(ck)
    if eps == 0:
        raise IntegrityError(f"c-vector {ck} is not sign-coherent")
    B = seed.B
    C = [r[:] for r in seed.C]
    for j in range(n):
        if j == k:
            continue
        b = max(eps * B[j][k], 0)
        if b:
            for i in range(n):
                C[i][j] += b * ck[i]
    for i in range(n):
        C[i][k] = -ck[i]
    Bn = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                Bn[i][j] = -B[i][j]
            else:
                bik, bkj = B[i][k], B[k][j]
                sgn = (bik > 0) - (bik < 0)
                Bn[i][j] = B[i][j] + sgn * max(bik * bkj, 0)
    out = CSeed(Bn, seed.frozen[:], [f[:] for f in seed.faces], seed.labels[:], C)
    return out, eps


def cvec_sequence(seed: CSeed, ks: Sequence[int], right_to_left: bool = True,
                  check_frozen: bool = True):
    """Apply a mutation sequence written as a composition.

    Returns (final seed, [(k, sign, tropical vector f)] in application order,
    sorted c-vector multiset).
    """
    order = list(reversed(ks)) if right_to_left else list(ks)
    cur = seed.copy()
    steps = []
    for k in order:
        ck = cur.cvector(k)
        cur, eps = cvec_mutate(cur, k, check_frozen=check_frozen)
        steps.append((k, eps, tuple(eps * x for x in ck)))
    return cur, steps, sorted(cur.cvectors())


def auto_series(seed: CSeed, ks: Sequence[int], order: int, grading: Optional[Sequence[int]] = None,
                right_to_left: bool = True, check_frozen: bool = True) -> QTSeries:
    """Phi(X_{f_1})^{eps_1} ... Phi(X_{f_l})^{eps_l} in the initial quantum torus."""
    lattice = seed.lattice()
    grading = tuple(grading) if grading is not None else _default_grading(lattice)
    _, steps, _ = cvec_sequence(seed, ks, right_to_left, check_frozen)
    out = QTSeries(lattice, grading, order, {lattice.zero(): 1})
    for _, eps, f in steps:
        out = out * dilog(lattice, f, order, grading, power=eps)
    return out


def random_cseed(rng: random.Random, rank: int, max_entry: int = 2) -> CSeed:
    B = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            b = rng.randint(-max_entry, max_entry)
            B[i][j], B[j][i] = b, -b
    return CSeed(B)

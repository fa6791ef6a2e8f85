"""The skein algebra of the torus in its PBW basis.

Generators P_v, v in Z^2 \\ {0}, satisfy [P_x, P_y] = {det(x|y)} P_{x+y}.
Elements are stored as combinations of slope-sorted words; products are
normal ordered by repeatedly applying P_b P_a = P_a P_b + {det(b|a)} P_{a+b}.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import LaurentPoly, ScalarQ, qbinom, qbrace, mono
from .quantum_cluster import QLattice, QTElement

__all__ = [
    "Vec2",
    "slope_key",
    "slope_less",
    "det",
    "normal_order",
    "normal_order_random",
    "SkeinElement",
    "BiSeries",
    "mul",
    "baxter_series",
    "baxter_biseries",
    "ad_closed",
    "ad_series_oracle",
    "ad_baxter",
    "conjugate_by_baxter",
    "pentagon_check",
    "PentagonReport",
    "adjoint_pentagon_check",
    "reduce_to_linking",
    "LINKING_LATTICE",
]

Vec2 = Tuple[int, int]
Word = Tuple[Vec2, ...]


def det(x: Vec2, y: Vec2) -> int:
    return x[0] * y[1] - x[1] * y[0]


@lru_cache(maxsize=None)
def slope_key(v: Vec2):
    """Exact sort key: angle in [0, 2pi) via a pseudo-angle, then length."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("the zero vector has no slope")
    r = abs(x) + abs(y)
    if y > 0 or (y == 0 and x > 0):
        angle = 1 - Fraction(x, r)
    else:
        angle = 3 + Fraction(x, r)
    return (angle, x * x + y * y)


def slope_less(v1: Vec2, v2: Vec2) -> bool:
    return slope_key(tuple(v1)) < slope_key(tuple(v2))


def _first_descent(word: Word) -> int:
    for i in range(len(word) - 1):
        if slope_key(word[i]) > slope_key(word[i + 1]):
            return i
    return -1


def _descents(word: Word) -> List[int]:
    return [i for i in range(len(word) - 1) if slope_key(word[i]) > slope_key(word[i + 1])]


def _rewrite(word: Word, i: int):
    """P_b P_a at position i -> (swapped word, bracket word or None, det(b|a))."""
    b, a = word[i], word[i + 1]
    swapped = word[:i] + (a, b) + word[i + 2:]
    d = det(b, a)
    merged = (a[0] + b[0], a[1] + b[1])
    if d == 0 or merged == (0, 0):
        return swapped, None, 0
    return swapped, word[:i] + (merged,) + word[i + 2:], d


@lru_cache(maxsize=None)
def _normal_order_cached(word: Word) -> Tuple[Tuple[Word, LaurentPoly], ...]:
    i = _first_descent(word)
    if i < 0:
        return ((word, LaurentPoly.const(1)),)
    swapped, merged, d = _rewrite(word, i)
    acc: Dict[Word, LaurentPoly] = dict(_normal_order_cached(swapped))
    if merged is not None:
        br = qbrace(d).num
        for w, c in _normal_order_cached(merged):
            v = acc.get(w, LaurentPoly()) + br * c
            if v.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = v
    return tuple(acc.items())


def normal_order(word: Sequence[Vec2], coeff=1) -> "SkeinElement":
    """coeff * P_{w1} ... P_{wk} rewritten in the PBW basis."""
    word = tuple(tuple(v) for v in word)
    for v in word:
        if v == (0, 0):
            raise ValueError("P_(0,0) is not a generator")
    coeff = ScalarQ.coerce(coeff)
    out = SkeinElement()
    for w, c in _normal_order_cached(word):
        out.terms[w] = coeff * c
    return out


def normal_order_random(word: Sequence[Vec2], rng: random.Random) -> Dict[Word, LaurentPoly]:
    """Normal order choosing a random descent at every step (no caching)."""
    word = tuple(tuple(v) for v in word)
    ds = _descents(word)
    if not ds:
        return {word: LaurentPoly.const(1)}
    swapped, merged, d = _rewrite(word, rng.choice(ds))
    acc = normal_order_random(swapped, rng)
    if merged is not None:
        br = qbrace(d).num
        for w, c in normal_order_random(merged, rng).items():
            acc[w] = acc.get(w, LaurentPoly()) + br * c
    return {w: c for w, c in acc.items() if not c.is_zero()}


class SkeinElement:
    """Combination of PBW words with ScalarQ coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, object]] = None):
        self.terms: Dict[Word, ScalarQ] = {}
        for w, c in (terms or {}).items():
            w = tuple(tuple(v) for v in w)
            if _first_descent(w) >= 0:
                raise ValueError(f"word {w} is not slope-sorted; use normal_order")
            c = ScalarQ.coerce(c)
            if not c.is_zero():
                self.terms[w] = c

    @classmethod
    def one(cls) -> "SkeinElement":
        return cls({(): 1})

    @classmethod
    def gen(cls, v: Vec2, c=1) -> "SkeinElement":
        return cls({(tuple(v),): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        out = SkeinElement()
        acc = dict(self.terms)
        for w, c in other.terms.items():
            v = acc[w] + c if w in acc else c
            if v.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = v
        out.terms = acc
        return out

    def __neg__(self) -> "SkeinElement":
        return self.scale(-1)

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + (-other)

    def scale(self, c) -> "SkeinElement":
        c = ScalarQ.coerce(c)
        out = SkeinElement()
        if not c.is_zero():
            out.terms = {w: x * c for w, x in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, SkeinElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def degree(self) -> Optional[Vec2]:
        """Common Z^2-degree of all words, or None if mixed."""
        degs = {(sum(v[0] for v in w), sum(v[1] for v in w)) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            name = "".join(f"P{v}" for v in w) or "1"
            parts.append(f"[{c}]{name}")
        return " + ".join(parts)


def mul(e1: SkeinElement, e2: SkeinElement) -> SkeinElement:
    acc: Dict[Word, ScalarQ] = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            c = c1 * c2
            for w, p in _normal_order_cached(w1 + w2):
                t = c * p
                acc[w] = acc[w] + t if w in acc else t
    out = SkeinElement()
    out.terms = {w: c for w, c in acc.items() if not c.is_zero()}
    return out


# ---------------------------------------------------------------------------
# Two-parameter series


class BiSeries:
    """Series sum_{i+j<=order} v^i w^j c_{ij} with SkeinElement coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, order: int, coeffs: Optional[Mapping[Tuple[int, int], SkeinElement]] = None):
        self.order = order
        self.coeffs: Dict[Tuple[int, int], SkeinElement] = {}
        for k, c in (coeffs or {}).items():
            if k[0] + k[1] <= order and not c.is_zero():
                self.coeffs[k] = c

    @classmethod
    def one(cls, order: int) -> "BiSeries":
        return cls(order, {(0, 0): SkeinElement.one()})

    def __getitem__(self, k: Tuple[int, int]) -> SkeinElement:
        return self.coeffs.get(k, SkeinElement())

    def __add__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return BiSeries(order, out)

    def scale(self, c) -> "BiSeries":
        return BiSeries(self.order, {k: v.scale(c) for k, v in self.coeffs.items()})

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.order, other.order)
        out: Dict[Tuple[int, int], SkeinElement] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                if k[0] + k[1] > order:
                    continue
                p = mul(c1, c2)
                out[k] = out[k] + p if k in out else p
        return BiSeries(order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: "BiSeries") -> Optional[Tuple[int, int]]:
        order = min(self.order, other.order)
        for n in range(order + 1):
            for i in range(n, -1, -1):
                if not (self[(i, n - i)] - other[(i, n - i)]).is_zero():
                    return (i, n - i)
        return None


def _exp_series(theta: BiSeries) -> BiSeries:
    result = BiSeries.one(theta.order)
    term = result
    j = 1
    while term.coeffs:
        term = (term * theta).scale(Fraction(1, j))
        result = result + term
        j += 1
    return result


def _theta(x: Vec2, grade: Tuple[int, int], order: int, sign: int) -> BiSeries:
    """sign * sum_k (-1)^{k+1} t^k / (k{k}) P_{kx}, with t of bidegree ``grade``."""
    coeffs = {}
    k = 1
    while k * (grade[0] + grade[1]) <= order:
        c = ScalarQ.inv_brace(k) * Fraction(sign * (-1) ** (k + 1), k)
        coeffs[(k * grade[0], k * grade[1])] = SkeinElement.gen((k * x[0], k * x[1]), c)
        k += 1
    return BiSeries(order, coeffs)


def baxter_series(x: Vec2, order: int, grade: Tuple[int, int] = (1, 0), sign: int = 1) -> BiSeries:
    """Q_x(t)^{sign} where t carries the bidegree ``grade``."""
    if grade == (0, 0):
        raise ValueError("the series parameter needs positive degree")
    return _exp_series(_theta(tuple(x), grade, order, sign))


def baxter_biseries(x: Vec2, y: Vec2, signs: Tuple[int, int] = (1, 1), order: int = 4) -> BiSeries:
    """Q_x(v)^{+-1} Q_y(w)^{+-1} expanded to total order."""
    return baxter_series(x, order, (1, 0), signs[0]) * baxter_series(y, order, (0, 1), signs[1])


# ---------------------------------------------------------------------------
# Adjoint action


def ad_closed(x: Vec2, y: Vec2, order: int) -> List[Tuple[int, ScalarQ]]:
    """Ad_{Q_x(t)} P_y = sum_n qbinom(det(x|y), n) t^n P_{y+nx}."""
    d = det(x, y)
    return [(n, qbinom(d, n)) for n in range(order + 1)]


def ad_series_oracle(x: Vec2, y: Vec2, order: int) -> List[Tuple[int, ScalarQ]]:
    """exp(ad Theta_x(t)) P_y computed from the bracket alone.

    Every term is a multiple of t^n P_{y+nx}; ad P_{kx} sends it to
    {det(kx | y+nx)} t^{n+k} P_{y+(n+k)x}.
    """
    x, y = tuple(x), tuple(y)
    theta = {k: ScalarQ.inv_brace(k) * Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)}
    total: Dict[int, ScalarQ] = {0: ScalarQ(1)}
    term: Dict[int, ScalarQ] = {0: ScalarQ(1)}
    j = 1
    while term:
        nxt: Dict[int, ScalarQ] = {}
        for n, c in term.items():
            z = (y[0] + n * x[0], y[1] + n * x[1])
            if z == (0, 0):
                continue
            for k in range(1, order - n + 1):
                br = det((k * x[0], k * x[1]), z)
                if br == 0:
                    continue
                v = c * theta[k] * qbrace(br) * Fraction(1, j)
                nxt[n + k] = nxt[n + k] + v if n + k in nxt else v
        term = {n: c for n, c in nxt.items() if not c.is_zero()}
        for n, c in term.items():
            total[n] = total[n] + c if n in total else c
        j += 1
    return [(n, total.get(n, ScalarQ(0))) for n in range(order + 1)]


def _letter_image(x: Vec2, z: Vec2, grade: Tuple[int, int], order: int) -> BiSeries:
    d = det(x, z)
    coeffs = {}
    n = 0
    while n * (grade[0] + grade[1]) <= order:
        c = qbinom(d, n)
        if not c.is_zero():
            v = (z[0] + n * x[0], z[1] + n * x[1])
            if v == (0, 0):
                break
            coeffs[(n * grade[0], n * grade[1])] = SkeinElement.gen(v, c)
        n += 1
        if d == 0:
            break
    return BiSeries(order, coeffs)


def ad_baxter(x: Vec2, grade: Tuple[int, int], series: BiSeries) -> BiSeries:
    """Apply Ad_{Q_x(t)} (t of bidegree ``grade``) letter by letter via the closed form."""
    order = series.order
    out = BiSeries(order)
    for (i, j), elem in series.coeffs.items():
        budget = order - i - j
        for w, c in elem.terms.items():
            img = BiSeries.one(budget)
            for z in w:
                img = img * _letter_image(x, z, grade, budget)
            shifted = {(i + a, j + b): e.scale(c) for (a, b), e in img.coeffs.items()}
            out = out + BiSeries(order, shifted)
    return out


def conjugate_by_baxter(x: Vec2, grade: Tuple[int, int], series: BiSeries) -> BiSeries:
    """Q_x(t) e Q_x(t)^{-1} by multiplying the series directly."""
    order = series.order
    return baxter_series(x, order, grade, 1) * series * baxter_series(x, order, grade, -1)


def adjoint_pentagon_check(x: Vec2, y: Vec2, order: int) -> bool:
    """Ad_{Q_x(v)} Ad_{Q_y(w)} = Ad_{Q_y(w)} Ad_{Q_{x+y}(vw)} Ad_{Q_x(v)} on P_{+-x}, P_{+-y}."""
    xy = (x[0] + y[0], x[1] + y[1])
    for z in (x, y, (-x[0], -x[1]), (-y[0], -y[1])):
        start = BiSeries(order, {(0, 0): SkeinElement.gen(z)})
        lhs = ad_baxter(x, (1, 0), ad_baxter(y, (0, 1), start))
        rhs = ad_baxter(y, (0, 1), ad_baxter(xy, (1, 1), ad_baxter(x, (1, 0), start)))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Pentagon


class PentagonReport(dict):
    """JSON-ready report: pass, order, checked, firstFail."""

    @property
    def passed(self) -> bool:
        return bool(self["pass"])


def pentagon_sides(x: Vec2, y: Vec2, order: int, form: str = "consistent"):
    x, y = tuple(x), tuple(y)
    xy = (x[0] + y[0], x[1] + y[1])
    qx = baxter_series(x, order, (1, 0))
    qy = baxter_series(y, order, (0, 1))
    qxy = baxter_series(xy, order, (1, 1))
    if form == "consistent":
        return qx * qy, qy * qxy * qx
    if form == "printed":
        return qy * qx, qx * qxy * qy
    if form == "swapped":
        return qy * qx, qy * qxy * qx
    raise ValueError(f"unknown pentagon form {form!r}")


def pentagon_check(x: Vec2, y: Vec2, order: int, form: str = "consistent") -> PentagonReport:
    """Compare both sides of the Baxter pentagon coefficient by coefficient.

    ``consistent``: Q_x(v) Q_y(w) = Q_y(w) Q_{x+y}(vw) Q_x(v), which is the
    form compatible with [P_x, P_y] = {det(x|y)} P_{x+y}.  ``printed`` reads
    Q_y(w) Q_x(v) = Q_x(v) Q_{x+y}(vw) Q_y(w) and ``swapped`` keeps that left
    side against the right side of ``consistent``; both fail at (1, 1).
    """
    if det(x, y) != 1:
        raise ValueError("the pentagon needs det(x|y) = 1")
    lhs, rhs = pentagon_sides(x, y, order, form)
    first = lhs.first_difference(rhs)
    checked = (order + 1) * (order + 2) // 2
    return PentagonReport({
        "pass": first is None,
        "order": order,
        "checked": checked,
        "firstFail": list(first) if first else None,
    })


# ---------------------------------------------------------------------------
# Linking skein reduction

LINKING_LATTICE = QLattice.from_matrix([[0, 1], [-1, 0]], ("x", "y"))


def reduce_to_linking(e: SkeinElement) -> QTElement:
    """P_{v1}...P_{vk} -> X_{v1}...X_{vk} with X_a X_b = q^{det(a|b)/2} X_{a+b}, a -> s."""
    out = QTElement(LINKING_LATTICE)
    s = LaurentPoly.var("s")
    for w, c in e.terms.items():
        total = (0, 0)
        twist = 0
        for v in w:
            twist += det(total, v)
            total = (total[0] + v[0], total[1] + v[1])
        coeff = c.subs({"a": s}) * mono(s=twist)
        out = out + QTElement.monomial(LINKING_LATTICE, total, coeff)
    return out

"""Partitions, border strips, and a Jacobi-Trudi oracle for Schur functions.

The oracle works in the ring freely generated by the complete homogeneous
functions h_1, h_2, ...; Schur functions are Jacobi-Trudi determinants there
and expansions are read off by a triangular solve.  None of this touches the
skein module code, so it can be used to cross-check it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .coeff import ScalarQ, mono

__all__ = [
    "Partition",
    "BorderStripAddition",
    "ModuleVector",
    "partitions_of",
    "partitions_upto",
    "strip_additions",
    "hooks_contents_kappa",
    "kappa",
    "power_times_schur",
    "schur_in_h",
    "principal_specialization",
    "principal_specialization_inverse",
    "zhou_sign_check",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def boxes(self) -> Iterator[Tuple[int, int]]:
        """(row, column) pairs, both 1-based."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for r in self if r > j) for j in range(self[0]))

    def sort_key(self):
        return (self.size, tuple(-p for p in self))

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


EMPTY = Partition()


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """Partitions of n, largest first part first."""
    out: List[Partition] = []

    def rec(rest: int, cap: int, acc: Tuple[int, ...]):
        if rest == 0:
            out.append(Partition(acc))
            return
        for p in range(min(rest, cap), 0, -1):
            rec(rest - p, p, acc + (p,))

    rec(n, n, ())
    return tuple(out)


def partitions_upto(n: int, max_length: Optional[int] = None) -> List[Partition]:
    out = [p for k in range(n + 1) for p in partitions_of(k)]
    if max_length is not None:
        out = [p for p in out if len(p) <= max_length]
    return out


@dataclass(frozen=True)
class BorderStripAddition:
    result: Partition
    height: int
    contents: Tuple[int, ...]


@lru_cache(maxsize=None)
def _strip_additions(lam: Partition, n: int) -> Tuple[BorderStripAddition, ...]:
    # Beta-set picture: adding an n-strip moves one bead up by n.
    L = len(lam) + n
    parts = list(lam) + [0] * (L - len(lam))
    beta = [parts[i] - (i + 1) + L for i in range(L)]
    occupied = set(beta)
    out = []
    for b in beta:
        if b + n in occupied:
            continue
        new = sorted((occupied - {b}) | {b + n}, reverse=True)
        mu = Partition(new[i] + (i + 1) - L for i in range(L))
        rows = sum(1 for x in occupied if b < x < b + n) + 1
        old = set(lam.boxes())
        contents = tuple(sorted(j - i for (i, j) in mu.boxes() if (i, j) not in old))
        out.append(BorderStripAddition(mu, rows + 1, contents))
    out.sort(key=lambda s: s.result.sort_key())
    return tuple(out)


def strip_additions(lam: Sequence[int], n: int) -> List[BorderStripAddition]:
    """All border strips of size n that can be added to lam.

    ``height`` is the number of rows of the strip plus one; its parity agrees
    with the textbook Murnaghan-Nakayama sign.
    """
    if n < 1:
        raise ValueError("strip size must be positive")
    return list(_strip_additions(Partition(lam), n))


@lru_cache(maxsize=None)
def hooks_contents_kappa(lam: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...], int]:
    lam = Partition(lam)
    conj = lam.conjugate()
    hooks = []
    contents = []
    for i, j in lam.boxes():
        hooks.append(lam[i - 1] - j + conj[j - 1] - i + 1)
        contents.append(j - i)
    k = sum(r * (r - 2 * i + 1) for i, r in enumerate(lam, start=1))
    return tuple(sorted(hooks, reverse=True)), tuple(sorted(contents)), k


def kappa(lam: Sequence[int]) -> int:
    return hooks_contents_kappa(Partition(lam))[2]


class ModuleVector:
    """Finite combination of basis vectors W_lambda with ScalarQ coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[Sequence[int], object]] = None):
        self.coeffs: Dict[Partition, ScalarQ] = {}
        for lam, c in (coeffs or {}).items():
            c = ScalarQ.coerce(c)
            if not c.is_zero():
                self.coeffs[Partition(lam)] = c

    @classmethod
    def basis(cls, lam: Sequence[int] = (), c=1) -> "ModuleVector":
        return cls({Partition(lam): c})

    def __getitem__(self, lam) -> ScalarQ:
        return self.coeffs.get(Partition(lam), ScalarQ(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            v = out[lam] + c if lam in out else c
            if v.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = v
        r = ModuleVector()
        r.coeffs = out
        return r

    def __neg__(self) -> "ModuleVector":
        return self.scale(-1)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, c) -> "ModuleVector":
        c = ScalarQ.coerce(c)
        if c.is_zero():
            return ModuleVector()
        r = ModuleVector()
        r.coeffs = {lam: v * c for lam, v in self.coeffs.items()}
        r.coeffs = {lam: v for lam, v in r.coeffs.items() if not v.is_zero()}
        return r

    __rmul__ = scale

    def truncate(self, max_boxes: int) -> "ModuleVector":
        r = ModuleVector()
        r.coeffs = {lam: c for lam, c in self.coeffs.items() if lam.size <= max_boxes}
        return r

    def map_coeffs(self, f) -> "ModuleVector":
        return ModuleVector({lam: f(c) for lam, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> list:
        return [{"partition": list(lam), "coeff": c.to_json()} for lam, c in self.items()]

    @classmethod
    def from_json(cls, rows) -> "ModuleVector":
        return cls({Partition(r["partition"]): ScalarQ.from_json(r["coeff"]) for r in rows})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{c}]W{lam!r}" for lam, c in self.items())


# ---------------------------------------------------------------------------
# The h-ring oracle.  Elements are dicts from sorted-descending tuples of
# h-indices (a monomial h_{i1} h_{i2} ...) to integers.

HPoly = Dict[Tuple[int, ...], int]


def _hmul(p: HPoly, q: HPoly) -> HPoly:
    out: HPoly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2, reverse=True))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _hadd(p: HPoly, q: HPoly, scale: int = 1) -> HPoly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + scale * c
    return {m: c for m, c in out.items() if c}


def _h(k: int) -> HPoly:
    if k < 0:
        return {}
    if k == 0:
        return {(): 1}
    return {(k,): 1}


@lru_cache(maxsize=None)
def _schur_h(lam: Partition) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    n = len(lam)
    if n == 0:
        return (((), 1),)

    # Laplace expansion along rows, memoised on the set of used columns.
    @lru_cache(maxsize=None)
    def minor(row: int, used: frozenset) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        if row == n:
            return (((), 1),)
        acc: HPoly = {}
        free = [j for j in range(n) if j not in used]
        for pos, j in enumerate(free):
            entry = _h(lam[row] - row + j)
            if not entry:
                continue
            sub = dict(minor(row + 1, used | {j}))
            if not sub:
                continue
            acc = _hadd(acc, _hmul(entry, sub), -1 if pos % 2 else 1)
        return tuple(acc.items())

    return minor(0, frozenset())


def schur_in_h(lam: Sequence[int]) -> HPoly:
    """Jacobi-Trudi: s_lambda = det(h_{lambda_i - i + j})."""
    return dict(_schur_h(Partition(lam)))


@lru_cache(maxsize=None)
def _power_h(n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # Newton: p_n = n h_n - sum_{i<n} p_i h_{n-i}
    acc: HPoly = {(n,): n}
    for i in range(1, n):
        acc = _hadd(acc, _hmul(dict(_power_h(i)), _h(n - i)), -1)
    return tuple(acc.items())


def _lex_key(m: Tuple[int, ...]):
    return m


def _h_to_schur(poly: HPoly) -> Dict[Partition, int]:
    """Triangular solve: h_mu occurs in s_nu only when mu dominates nu."""
    rest = dict(poly)
    out: Dict[Partition, int] = {}
    while rest:
        mu = min(rest, key=_lex_key)
        c = rest[mu]
        lam = Partition(mu)
        out[lam] = c
        rest = _hadd(rest, schur_in_h(lam), -c)
    return out


def power_times_schur(n: int, lam: Sequence[int]) -> ModuleVector:
    """p_n * s_lambda in the Schur basis, by Jacobi-Trudi and Newton only."""
    if n < 1:
        raise ValueError("n must be positive")
    prod = _hmul(dict(_power_h(n)), schur_in_h(lam))
    return ModuleVector(_h_to_schur(prod))


def _evaluate_h(poly: HPoly, hval) -> ScalarQ:
    total = ScalarQ(0)
    cache: Dict[int, ScalarQ] = {}
    for m, c in poly.items():
        term = ScalarQ(c)
        for k in m:
            if k not in cache:
                cache[k] = hval(k)
            term = term * cache[k]
        total = total + term
    return total


def _h_at_rho(k: int) -> ScalarQ:
    # h_k(q^rho) = s^{-k} / prod_{j<=k} (1 - q^{-j}),  1 - q^{-j} = s^{-j}{j}
    return mono(s=-k + k * (k + 1) // 2) * ScalarQ(1, {j: 1 for j in range(1, k + 1)})


def _h_at_minus_rho(k: int) -> ScalarQ:
    # h_k(q^{-rho}) = s^k / prod_{j<=k} (1 - q^j),  1 - q^j = -s^j{j}
    return mono(s=k - k * (k + 1) // 2, c=(-1) ** k) * ScalarQ(1, {j: 1 for j in range(1, k + 1)})


def principal_specialization(lam: Sequence[int]) -> ScalarQ:
    """s_lambda at q^rho = (q^{-1/2}, q^{-3/2}, ...)."""
    return _evaluate_h(schur_in_h(lam), _h_at_rho)


def principal_specialization_inverse(lam: Sequence[int]) -> ScalarQ:
    """s_lambda at q^{-rho}."""
    return _evaluate_h(schur_in_h(lam), _h_at_minus_rho)


def zhou_sign_check(lam: Sequence[int]) -> bool:
    """s_lambda(q^{-rho}) == (-1)^|lambda| q^{-kappa/2} s_lambda(q^rho)."""
    lam = Partition(lam)
    left = principal_specialization_inverse(lam)
    right = mono(s=-kappa(lam), c=(-1) ** lam.size) * principal_specialization(lam)
    return left == right

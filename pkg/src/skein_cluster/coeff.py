"""Exact coefficients: Laurent polynomials in s, a, aL, g and fractions of them.

``s`` stands for q^{1/2}.  Denominators are restricted to products of braces
{k} = s^k - s^{-k}; monomials and integers in a denominator are folded into
the numerator, which is allowed to carry negative exponents and rational
coefficients.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

__all__ = [
    "VARS",
    "LaurentPoly",
    "ScalarQ",
    "CoefficientError",
    "SingularSubstitution",
    "BraceLimitExceeded",
    "max_brace",
    "qbrace",
    "qint",
    "qfact",
    "qbinom",
    "substitute",
    "mono",
    "S",
    "A",
    "AL",
    "G",
    "ONE",
    "ZERO",
]

VARS = ("s", "a", "aL", "g")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0, 0, 0, 0)

Exp = Tuple[int, int, int, int]
Number = Union[int, Fraction]


class CoefficientError(ArithmeticError):
    pass


class SingularSubstitution(CoefficientError):
    """A binding sends a denominator factor to zero."""


class BraceLimitExceeded(CoefficientError):
    """A brace {k} with k above the configured bound was requested."""


def max_brace() -> int:
    return int(os.environ.get("SKEIN_MAX_BRACE", "64"))


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _add_exp(e1: Exp, e2: Exp) -> Exp:
    return (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])


class LaurentPoly:
    """Sparse Laurent polynomial over Q in the variables ``VARS``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Exp, Number]] = None):
        clean: Dict[Exp, Number] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = _norm(c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Exp, Number]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls._raw({_ZERO_EXP: _norm(c)} if c else {})

    @classmethod
    def monomial(cls, exp: Exp, c: Number = 1) -> "LaurentPoly":
        return cls._raw({tuple(exp): _norm(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        e = [0, 0, 0, 0]
        e[_VAR_INDEX[name]] = 1
        return cls._raw({tuple(e): 1})

    @classmethod
    def from_s(cls, coeffs: Mapping[int, Number]) -> "LaurentPoly":
        return cls({(k, 0, 0, 0): c for k, c in coeffs.items()})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw({_add_exp(e, eb): _norm(c * cb) for e, c in a.items()})
        out: Dict[Exp, Number] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[e] = get(e, 0) + c1 * c2
        return LaurentPoly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise CoefficientError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly._raw({(-e[0], -e[1], -e[2], -e[3]): _norm(Fraction(1) / c)})

    def shift(self, exp: Exp) -> "LaurentPoly":
        return LaurentPoly._raw({_add_exp(e, exp): c for e, c in self.terms.items()})

    def exact_div_s(self, f: Mapping[int, Number]) -> Optional["LaurentPoly"]:
        """Divide by a Laurent polynomial in s alone; ``None`` if inexact."""
        f = {k: v for k, v in f.items() if v}
        if not f:
            raise ZeroDivisionError("division by zero polynomial")
        lo = min(f)
        hi = max(f)
        lead = f[hi]
        groups: Dict[Tuple[int, int, int], Dict[int, Number]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[1:], {})[e[0]] = c
        out: Dict[Exp, Number] = {}
        width = hi - lo
        for rest, poly in groups.items():
            rem = dict(poly)
            floor = min(rem)
            while rem:
                top = max(rem)
                if top - width < floor:
                    return None
                c = rem[top]
                qdeg = top - hi
                qc = c * lead if lead in (1, -1) else _norm(Fraction(c) / lead)
                out[(qdeg,) + rest] = qc
                for k, v in f.items():
                    d = qdeg + k
                    nv = rem.get(d, 0) - qc * v
                    if nv:
                        rem[d] = nv
                    else:
                        rem.pop(d, None)
        return LaurentPoly._raw(out)

    def subs(self, bindings: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        if not bindings:
            return self
        idx = {_VAR_INDEX[k]: v for k, v in bindings.items()}
        powers: Dict[Tuple[int, int], LaurentPoly] = {}

        def power(i: int, n: int) -> LaurentPoly:
            key = (i, n)
            if key not in powers:
                powers[key] = idx[i] ** n
            return powers[key]

        out = LaurentPoly()
        for e, c in self.terms.items():
            keep = list(e)
            term = LaurentPoly.const(c)
            for i in idx:
                if e[i]:
                    term = term * power(i, e[i])
                keep[i] = 0
            out = out + term.shift(tuple(keep))
        return out

    def degree_range(self, var: str = "s") -> Tuple[int, int]:
        i = _VAR_INDEX[var]
        ks = [e[i] for e in self.terms]
        return (min(ks), max(ks)) if ks else (0, 0)

    # -- rendering --------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, k in zip(VARS, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono_txt = "*".join(factors)
            neg = c < 0
            mag = -c if neg else c
            if not mono_txt:
                body = str(mag)
            elif mag == 1:
                body = mono_txt
            else:
                body = f"{mag}*{mono_txt}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


def _brace_s(k: int) -> Dict[int, int]:
    return {k: 1, -k: -1}


def _brace_quotient(k: int, d: int) -> Dict[int, int]:
    """{k}/{d} as a polynomial in s when d divides k."""
    r = k // d
    return {d * (r - 1 - 2 * j): 1 for j in range(r)}


def _check_brace(k: int) -> None:
    if k > max_brace():
        raise BraceLimitExceeded(f"brace {{{k}}} exceeds bound {max_brace()}")


class ScalarQ:
    """Element of Q(s, a, aL, g) of the form num / prod {k}^e_k."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den: Optional[Mapping[int, int]] = None, _reduce: bool = True):
        if isinstance(num, ScalarQ):
            self.num, self.den = num.num, dict(num.den)
            return
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        self.num: LaurentPoly = num
        d: Dict[int, int] = {}
        sign = 1
        for k, e in (den or {}).items():
            if e == 0:
                continue
            if k == 0:
                raise ZeroDivisionError("{0} in a denominator")
            if k < 0:
                k = -k
                if e % 2:
                    sign = -sign
            if e < 0:
                self.num = self.num * LaurentPoly.from_s(_brace_s(k)) ** (-e)
                continue
            _check_brace(k)
            d[k] = d.get(k, 0) + e
        if sign < 0:
            self.num = -self.num
        self.den: Dict[int, int] = d
        if _reduce:
            self._reduce()

    def _reduce(self) -> None:
        if not self.num.terms:
            self.den = {}
            return
        if not self.den:
            return
        num = self.num
        den = dict(self.den)
        for k in sorted(den, reverse=True):
            while den.get(k, 0):
                q = num.exact_div_s(_brace_s(k))
                if q is None:
                    break
                num = q
                den[k] -= 1
            while den.get(k, 0) and k > 1:
                hit = False
                for d in range(1, k):
                    if k % d:
                        continue
                    q = num.exact_div_s(_brace_quotient(k, d))
                    if q is not None:
                        num = q
                        den[k] -= 1
                        den[d] = den.get(d, 0) + 1
                        hit = True
                        break
                if not hit:
                    break
        self.num = num
        self.den = {k: e for k, e in den.items() if e}

    # -- constructors -----------------------------------------------------
    @classmethod
    def inv_brace(cls, k: int, e: int = 1) -> "ScalarQ":
        return cls(LaurentPoly.const(1), {k: e}, _reduce=False)

    @classmethod
    def coerce(cls, x) -> "ScalarQ":
        if isinstance(x, ScalarQ):
            return x
        if isinstance(x, (int, Fraction, LaurentPoly)):
            return cls(x, _reduce=False)
        raise TypeError(f"cannot coerce {type(x).__name__} to ScalarQ")

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return not self.den

    def __eq__(self, other) -> bool:
        try:
            other = ScalarQ.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic -------------------------------------------------------
    def _den_poly(self, exps: Mapping[int, int]) -> LaurentPoly:
        out = LaurentPoly.const(1)
        for k, e in exps.items():
            if e:
                out = out * LaurentPoly.from_s(_brace_s(k)) ** e
        return out

    def __add__(self, other) -> "ScalarQ":
        try:
            other = ScalarQ.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return ScalarQ(self.num + other.num, self.den)
        den = dict(self.den)
        for k, e in other.den.items():
            if e > den.get(k, 0):
                den[k] = e
        n1 = self.num * self._den_poly({k: e - self.den.get(k, 0) for k, e in den.items()})
        n2 = other.num * self._den_poly({k: e - other.den.get(k, 0) for k, e in den.items()})
        return ScalarQ(n1 + n2, den)

    __radd__ = __add__

    def __neg__(self) -> "ScalarQ":
        return ScalarQ(-self.num, self.den, _reduce=False)

    def __sub__(self, other) -> "ScalarQ":
        try:
            other = ScalarQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ScalarQ":
        return (-self) + other

    def __mul__(self, other) -> "ScalarQ":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ScalarQ()
            return ScalarQ(self.num * other, self.den, _reduce=False)
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                return ScalarQ(self.num * other, self.den, _reduce=False)
            return ScalarQ(self.num * other, self.den)
        if not isinstance(other, ScalarQ):
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return ScalarQ()
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        num = self.num * other.num
        reduce_needed = bool(den) and not (self.num.is_monomial() and other.num.is_monomial())
        return ScalarQ(num, den, _reduce=reduce_needed)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ScalarQ":
        if n < 0:
            return ScalarQ(1) / self ** (-n)
        out = ScalarQ(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other) -> "ScalarQ":
        other = ScalarQ.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero ScalarQ")
        # other = c * mono * prod {k}^e / prod {j}^f with the numerator factored
        # by trial division.
        mono_part, braces = _factor_brace_monomial(other.num)
        den = dict(self.den)
        for k, e in braces.items():
            den[k] = den.get(k, 0) + e
        num = self.num * mono_part.inverse_monomial()
        num = num * self._den_poly(other.den)
        return ScalarQ(num, den)

    def __rtruediv__(self, other) -> "ScalarQ":
        return ScalarQ.coerce(other) / self

    # -- misc -------------------------------------------------------------
    def subs(self, bindings: Mapping[str, LaurentPoly]) -> "ScalarQ":
        return substitute(self, bindings)

    def den_poly(self) -> LaurentPoly:
        return self._den_poly(self.den)

    def to_json(self) -> dict:
        return {
            "num": [
                {"exp": list(e), "coef": str(Fraction(c))} for e, c in self.num.sorted_terms()
            ],
            "den": {
                "mono": [0, 0, 0, 0],
                "braces": [[k, e] for k, e in sorted(self.den.items())],
                "int": "1",
            },
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "ScalarQ":
        num = LaurentPoly({tuple(t["exp"]): Fraction(t["coef"]) for t in obj["num"]})
        den = obj.get("den", {})
        mono_exp = tuple(-x for x in den.get("mono", [0, 0, 0, 0]))
        num = num.shift(mono_exp) * (1 / Fraction(den.get("int", "1")))
        braces = {int(k): int(e) for k, e in den.get("braces", [])}
        return cls(num, braces)

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        den_txt = " * ".join(
            f"{{{k}}}" if e == 1 else f"{{{k}}}^{e}" for k, e in sorted(self.den.items())
        )
        return f"({self.num}) / ({den_txt})"

    def __repr__(self) -> str:
        return f"ScalarQ({self})"


def _factor_brace_monomial(p: LaurentPoly) -> Tuple[LaurentPoly, Dict[int, int]]:
    """Write p = monomial * prod {k}^e_k, or raise if impossible."""
    braces: Dict[int, int] = {}
    while not p.is_monomial():
        lo, hi = p.degree_range("s")
        found = False
        for k in range((hi - lo) // 2, 0, -1):
            q = p.exact_div_s(_brace_s(k))
            if q is not None:
                p = q
                braces[k] = braces.get(k, 0) + 1
                found = True
                break
        if not found:
            raise CoefficientError(f"denominator {p} is outside the brace class")
    return p, braces


def mono(s: int = 0, a: int = 0, aL: int = 0, g: int = 0, c: Number = 1) -> ScalarQ:
    return ScalarQ(LaurentPoly.monomial((s, a, aL, g), c), _reduce=False)


S = mono(s=1)
A = mono(a=1)
AL = mono(aL=1)
G = mono(g=1)
ONE = ScalarQ(1)
ZERO = ScalarQ(0)


def qbrace(k: int) -> ScalarQ:
    """{k} = s^k - s^{-k}."""
    if k == 0:
        return ScalarQ()
    return ScalarQ(LaurentPoly.from_s(_brace_s(k)), _reduce=False)


def qint(n: int) -> ScalarQ:
    """Balanced quantum integer [n] = (s^n - s^{-n}) / (s - s^{-1})."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return ScalarQ(LaurentPoly.from_s({n - 1 - 2 * j: 1 for j in range(n)}), _reduce=False)


def qfact(n: int) -> ScalarQ:
    """[n]! = [1][2]...[n]."""
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    out = LaurentPoly.const(1)
    for m in range(1, n + 1):
        out = out * qint(m).num
    return ScalarQ(out, _reduce=False)


def _poly_series_coeffs(d: int, kmax: int):
    """Coefficients in x of prod_j (1 + x s^{d-1-2j}), or its reciprocal for d < 0."""
    m = abs(d)
    coeffs = [LaurentPoly.const(1)] + [LaurentPoly() for _ in range(kmax)]
    for j in range(m):
        sj = LaurentPoly.monomial((m - 1 - 2 * j, 0, 0, 0))
        for k in range(kmax, 0, -1):
            coeffs[k] = coeffs[k] + sj * coeffs[k - 1]
    if d >= 0:
        return coeffs
    inv = [LaurentPoly.const(1)] + [LaurentPoly() for _ in range(kmax)]
    for k in range(1, kmax + 1):
        acc = LaurentPoly()
        for i in range(1, k + 1):
            acc = acc + coeffs[i] * inv[k - i]
        inv[k] = -acc
    return inv


def qbinom(d: int, k: int) -> ScalarQ:
    """Balanced q-binomial with the reciprocal extension to negative d."""
    if k < 0:
        raise ValueError("qbinom needs k >= 0")
    if k == 0:
        return ScalarQ(1)
    return ScalarQ(_poly_series_coeffs(d, k)[k], _reduce=False)


def _bound_to_lp(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return LaurentPoly.const(v)
    if isinstance(v, ScalarQ):
        if v.den:
            raise CoefficientError("bindings must be Laurent polynomials")
        return v.num
    raise TypeError(f"unsupported binding {v!r}")


def substitute(x: ScalarQ, bindings: Mapping[str, object]) -> ScalarQ:
    """Substitute variables by Laurent polynomials and re-reduce."""
    bind = {k: _bound_to_lp(v) for k, v in bindings.items()}
    for k in bind:
        if k not in _VAR_INDEX:
            raise KeyError(f"unknown variable {k}")
    num = x.num.subs(bind)
    if not x.den or "s" not in bind:
        return ScalarQ(num, x.den)
    b = bind["s"]
    if not b.is_monomial():
        raise CoefficientError("s may only be bound to a monomial when braces are present")
    (e, c), = b.terms.items()
    if e[1:] != (0, 0, 0) or c not in (1, -1):
        if e == _ZERO_EXP:
            raise SingularSubstitution(f"s -> {b} sends a denominator brace to zero")
        raise CoefficientError("s may only be bound to +-s^m")
    m = e[0]
    if m == 0:
        raise SingularSubstitution(f"s -> {b} sends a denominator brace to zero")
    den: Dict[int, int] = {}
    sign = 1
    for k, ek in x.den.items():
        # {k}(c s^m) = c^k {mk}
        if c == -1 and k % 2 and ek % 2:
            sign = -sign
        den[m * k] = den.get(m * k, 0) + ek
    return ScalarQ(num * sign, den)

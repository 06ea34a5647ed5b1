"""Exact scalars and polynomials.

Rationals are :class:`fractions.Fraction`.  :class:`MPoly` is a sparse
multivariate polynomial over the rationals in named parameters, and
:class:`UPoly` is a dense univariate polynomial used for real-root counting
with Sturm sequences.

Example:
    >>> t = MPoly.var("t")
    >>> (1 + t) * (1 - t)
    MPoly('1 - t^2')
    >>> sturm_real_root_count(UPoly([-1, 0, 1]))
    2
"""

from __future__ import annotations

import re
from math import gcd
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

from .errors import MissingParameter, NoRealRoot, ZeroPolynomial

Rational = Fraction
Number = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...] sorted by natural variable order

DEFAULT_ISOLATION_WIDTH = Fraction(1, 2**32)


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (no floats)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Number) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        return to_rational(s)
    if not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s.replace(" ", ""))


# --------------------------------------------------------------------------
# monomials

_NAT = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Natural sort key so that t2 < t10."""
    return tuple(int(p) if p.isdigit() else p for p in _NAT.split(name))


def _item_key(item):
    return var_key(item[0])


def make_monomial(exps: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=_item_key))


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=_item_key))


def _mono_div(a: Monomial, b: Monomial):
    d = dict(a)
    for v, e in b:
        if d.get(v, 0) < e:
            return None
        d[v] -= e
    return make_monomial(d)


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial, order: Sequence[str]):
    d = dict(m)
    return (_mono_deg(m), tuple(d.get(v, 0) for v in order))


def _format_mono(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


# --------------------------------------------------------------------------


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = to_rational(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "MPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def from_records(cls, records: Iterable[tuple[Number, Mapping[str, int]]]) -> "MPoly":
        terms: dict = {}
        for c, exps in records:
            mono = make_monomial(exps)
            terms[mono] = terms.get(mono, Fraction(0)) + to_rational(c)
        return cls(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mono_deg(m) for m in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        names = {v for m in self._terms for v, _ in m}
        return tuple(sorted(names, key=var_key))

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        return self._terms.get(make_monomial(exps), Fraction(0))

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(to_rational(other))

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = to_rational(other)
            if not c:
                return MPoly._raw({})
            return MPoly._raw({m: c * v for m, v in self._terms.items()})
        if not self._terms or not other._terms:
            return MPoly._raw({})
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if not other.is_constant() or other.is_zero():
                return self.divide_exact(other)
            other = other.constant_term()
        c = to_rational(other)
        return MPoly._raw({m: v / c for m, v in self._terms.items()})

    def leading_term(self, order: Sequence[str]):
        m = max(self._terms, key=lambda mono: _grlex_key(mono, order))
        return m, self._terms[m]

    def divide_exact(self, divisor: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = sorted(set(self.variables()) | set(divisor.variables()), key=var_key)
        dm, dc = divisor.leading_term(order)
        rem = self
        quot: dict = {}
        while rem._terms:
            rm, rc = rem.leading_term(order)
            qm = _mono_div(rm, dm)
            if qm is None:
                raise ArithmeticError("polynomial division is not exact")
            qc = rc / dc
            quot[qm] = quot.get(qm, 0) + qc
            rem = rem - MPoly._raw({qm: qc}) * divisor
        return MPoly(quot)

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == MPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation -------------------------------------------------------------

    def eval(self, point: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, e in m:
                try:
                    x = point[v]
                except KeyError:
                    raise MissingParameter(v) from None
                val = val * to_rational(x) ** e
            total += val
        return total

    __call__ = eval

    def subs(self, mapping: Mapping[str, "MPoly | Number"]) -> "MPoly":
        """Substitute polynomials (or numbers) for some of the parameters."""
        mapping = {k: self._coerce(v) for k, v in mapping.items()}
        out = MPoly._raw({})
        powers: dict = {}
        for m, c in self._terms.items():
            kept = []
            term = MPoly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = mapping[v] ** e
                    term = term * powers[key]
                else:
                    kept.append((v, e))
            if kept:
                term = term * MPoly._raw({tuple(kept): Fraction(1)})
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        out: dict = {}
        for m, c in self._terms.items():
            d: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            mono = make_monomial(d)
            out[mono] = out.get(mono, 0) + c
        return MPoly(out)

    def linear_coefficient(self, name: str) -> Fraction:
        return self._terms.get(((name, 1),), Fraction(0))

    def to_upoly(self, name: str | None = None) -> "UPoly":
        names = self.variables()
        if len(names) > 1 or (names and name is not None and names[0] != name):
            raise ValueError(f"not univariate in {name!r}: {self}")
        coeffs = [Fraction(0)] * (self.degree() + 1 if self._terms else 1)
        for m, c in self._terms.items():
            coeffs[_mono_deg(m)] += c
        return UPoly(coeffs)

    # printing ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in ascending graded-lex order (constant term first)."""
        order = self.variables()
        keyed = []
        for m, c in self._terms.items():
            deg, vec = _grlex_key(m, order)
            keyed.append(((deg, tuple(-e for e in vec)), m, c))
        keyed.sort(key=lambda x: x[0])
        return [(m, c) for _, m, c in keyed]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if m and a == 1:
                body = _format_mono(m)
            elif m:
                body = f"{format_rational(a)}*{_format_mono(m)}"
            else:
                body = format_rational(a)
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: MPoly, point: Mapping[str, Number]) -> Fraction:
    return p.eval(point)


# --------------------------------------------------------------------------
# univariate


class UPoly:
    """Dense univariate polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [to_rational(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "UPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UPoly":
        return UPoly(-x for x in self.coeffs)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            c = to_rational(other)
            return UPoly(c * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: Number) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lc()
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UPoly(quot), UPoly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        return self * (1 / self.lc()) if self.coeffs else self

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lc() > 0 else -1
        if not positive and self.degree() % 2:
            s = -s
        return s

    def __str__(self) -> str:
        return str(self.to_mpoly("s"))

    def __repr__(self) -> str:
        return f"UPoly({[format_rational(c) for c in self.coeffs]})"

    def to_mpoly(self, name: str) -> MPoly:
        return MPoly({((name, i),) if i else (): c for i, c in enumerate(self.coeffs)})


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(p: UPoly) -> UPoly:
    if p.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree() == 0:
        return UPoly([1])
    return (p // upoly_gcd(p, p.derivative())).monic()


def sturm_chain(p: UPoly) -> list[UPoly]:
    """Sturm sequence of the square-free part of ``p``."""
    p0 = square_free_part(p)
    chain = [p0]
    if p0.degree() == 0:
        return chain
    chain.append(p0.derivative())
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return chain


def _variations(signs: Iterable[int]) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations_at(chain: list[UPoly], x) -> int:
    if x == "-inf":
        return _variations(q.sign_at_infinity(False) for q in chain)
    if x == "+inf":
        return _variations(q.sign_at_infinity(True) for q in chain)
    return _variations(_sign(q(x)) for q in chain)


def sturm_real_root_count(p: UPoly, interval: tuple[Number, Number] | None = None) -> int:
    """Number of distinct real roots of ``p`` on the real line or on closed [a, b]."""
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    chain = sturm_chain(p)
    if interval is None:
        return _variations_at(chain, "-inf") - _variations_at(chain, "+inf")
    a, b = (to_rational(x) for x in interval)
    if a > b:
        raise ValueError("empty interval")
    count = _variations_at(chain, a) - _variations_at(chain, b)
    if chain[0](a) == 0:
        count += 1
    return count


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p.lc())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_root(p: UPoly, width: Number = DEFAULT_ISOLATION_WIDTH) -> tuple[Fraction, Fraction]:
    """A closed rational interval of width <= ``width`` holding exactly one real root.

    Bisection on Sturm counts; the leftmost real root is isolated.
    """
    if p.is_zero():
        raise ZeroPolynomial("root isolation of the zero polynomial")
    chain = sturm_chain(p)
    sf = chain[0]
    width = to_rational(width)

    def half_open(a, b):  # roots in (a, b]
        return _variations_at(chain, a) - _variations_at(chain, b)

    bound = root_bound(sf)
    a, b = -bound, bound
    if half_open(a, b) == 0:
        raise NoRealRoot(f"{p} has no real root")
    while True:
        closed = half_open(a, b) + (sf(a) == 0)
        if closed == 1 and b - a <= width:
            return a, b
        mid = (a + b) / 2
        if half_open(a, mid) >= 1:
            b = mid
        else:
            a = mid


def isolate_real_roots(p: UPoly, width: Number = DEFAULT_ISOLATION_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for every distinct real root, left to right."""
    chain = sturm_chain(p)
    sf = chain[0]
    width = to_rational(width)

    def half_open(a, b):
        return _variations_at(chain, a) - _variations_at(chain, b)

    out = []
    bound = root_bound(sf) if sf.degree() > 0 else Fraction(1)
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        k = half_open(a, b)
        if k == 0:
            continue
        if sf(b) == 0 and k == 1:
            out.append((b, b))
            continue
        if k == 1 and b - a <= width and sf(a) != 0:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def _divisors(n: int, limit: int = 10**12) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UPoly) -> list[Fraction] | None:
    """All rational roots of ``p`` (sorted), or None when the search is too large."""
    if p.is_zero():
        raise ZeroPolynomial("rational roots of the zero polynomial")
    coeffs = list(p.coeffs)
    roots: set = set()
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    q = UPoly(coeffs)
    if q.degree() <= 0:
        return sorted(roots)
    den = 1
    for c in q.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in q.coeffs]
    dp = _divisors(ints[0])
    dq = _divisors(ints[-1])
    if dp is None or dq is None:
        return None
    for a, b in product(dp, dq):
        for cand in (Fraction(a, b), Fraction(-a, b)):
            if cand not in roots and q(cand) == 0:
                roots.add(cand)
    return sorted(roots)



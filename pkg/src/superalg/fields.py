"""Exact scalars over Q, Q(sqrt d) and GF(p), square classes, Hilbert symbols
over Q and norm equations for quadratic extensions.

Rationals are plain ``fractions.Fraction`` values.  Elements of Q(sqrt d) are
``QElem`` (a pair of fractions) and residues mod p are ``GFElem``.  All three
support the usual arithmetic operators, compare equal to ints, and are
immutable, so the linear algebra layer can treat them uniformly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional, Union

from .errors import (
    DivisionByZero,
    FactorizationTooHard,
    FieldMismatch,
    InvalidField,
    NotAQuadraticExtension,
    ZeroInput,
)

INF = "inf"
TRIAL_LIMIT = 10**6
DEFAULT_SEARCH_BOUND = 10**4


# ---------------------------------------------------------------------------
# integer factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    # deterministic for n < 3.3e24 with these bases
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, budget: int = 200000) -> Optional[int]:
    """Brent's variant of Pollard rho; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        steps = 0
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1 and steps < budget:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
            steps += r
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


@lru_cache(maxsize=4096)
def _factor_positive(n: int) -> tuple:
    out: dict = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p <= TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _rho(m)
        if f is None:
            raise FactorizationTooHard(f"could not factor {m}")
        stack += [f, m // f]
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict:
    """Prime factorization of a nonzero integer, ignoring the sign."""
    n = abs(int(n))
    if n == 0:
        raise ZeroInput("cannot factor 0")
    return dict(_factor_positive(n))


# ---------------------------------------------------------------------------
# element types


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"not a rational: {v!r}")


class GFElem:
    """Residue class mod an odd prime p, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    @staticmethod
    def _raw(v, p):
        e = object.__new__(GFElem)
        e.v = v
        e.p = p
        return e

    def _other(self, o):
        if isinstance(o, GFElem):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            if o.denominator % self.p == 0:
                raise DivisionByZero(f"{o} has no image in GF({self.p})")
            return o.numerator * pow(o.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        return GFElem._raw((self.v + w) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        return GFElem._raw((self.v - w) % self.p, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        return GFElem._raw((w - self.v) % self.p, self.p)

    def __mul__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        return GFElem._raw(self.v * w % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        if w == 0:
            raise DivisionByZero("division by zero in GF(p)")
        return GFElem._raw(self.v * pow(w, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return w
        if self.v == 0:
            raise DivisionByZero("division by zero in GF(p)")
        return GFElem._raw(w * pow(self.v, -1, self.p) % self.p, self.p)

    def __neg__(self):
        return GFElem._raw((-self.v) % self.p, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return GFElem._raw(pow(self.v, -1, self.p), self.p) ** (-k)
        return GFElem._raw(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, GFElem):
            return self.p == o.p and self.v == o.v
        if isinstance(o, (int, Fraction)):
            w = self._other(o)
            return self.v == w
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"gf({self.p}):{self.v}"


class QElem:
    """x + y*sqrt(d) with rational x, y."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y, d: int):
        self.x = _as_fraction(x)
        self.y = _as_fraction(y)
        self.d = d

    @staticmethod
    def _raw(x, y, d):
        e = object.__new__(QElem)
        e.x = x
        e.y = y
        e.d = d
        return e

    def _other(self, o):
        if isinstance(o, QElem):
            if o.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {o.d})")
            return o.x, o.y
        if isinstance(o, (int, Fraction)):
            return o, 0
        return None

    def __add__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return QElem._raw(self.x + w[0], self.y + w[1], self.d)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return QElem._raw(self.x - w[0], self.y - w[1], self.d)

    def __rsub__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return QElem._raw(w[0] - self.x, w[1] - self.y, self.d)

    def __mul__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        a, b = w
        if not b:
            return QElem._raw(self.x * a, self.y * a, self.d)
        return QElem._raw(self.x * a + self.d * self.y * b, self.x * b + self.y * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def conj(self) -> "QElem":
        return QElem._raw(self.x, -self.y, self.d)

    def inverse(self) -> "QElem":
        n = self.norm()
        if not n:
            raise DivisionByZero("division by zero in Q(sqrt d)")
        return QElem._raw(self.x / n, -self.y / n, self.d)

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        if not w[1]:
            if not w[0]:
                raise DivisionByZero("division by zero in Q(sqrt d)")
            return QElem._raw(self.x / w[0], self.y / w[0], self.d)
        return self * QElem._raw(_as_fraction(w[0]), _as_fraction(w[1]), self.d).inverse()

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return QElem._raw(_as_fraction(w[0]), _as_fraction(w[1]), self.d) * self.inverse()

    def __neg__(self):
        return QElem._raw(-self.x, -self.y, self.d)

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = QElem._raw(Fraction(1), Fraction(0), self.d)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, o):
        if isinstance(o, QElem):
            return self.d == o.d and self.x == o.x and self.y == o.y
        if isinstance(o, (int, Fraction)):
            return not self.y and self.x == o
        return NotImplemented

    def __hash__(self):
        return hash(self.x) if not self.y else hash((self.x, self.y, self.d))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __repr__(self):
        return _fmt_quadratic(self)


Scalar = Union[Fraction, QElem, GFElem]


# ---------------------------------------------------------------------------
# field descriptors


def _fmt_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _fmt_quadratic(e: QElem) -> str:
    sign = "-" if e.y < 0 else "+"
    return f"{_fmt_rational(e.x)}{sign}{_fmt_rational(abs(e.y))}*sqrt({e.d})"


_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(-?\d+)\s*\)\s*$")
_GF_RE = re.compile(r"^\s*gf\(\s*(\d+)\s*\)\s*:\s*(-?\d+)\s*$")


def _parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str) and re.fullmatch(rf"\s*{_RAT}\s*", s):
        return Fraction(s.strip())
    raise ValueError(f"not a rational literal: {s!r}")


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ZeroInput("squarefree part of 0")
    out = -1 if n < 0 else 1
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


@dataclass(frozen=True)
class Rationals:
    """The field Q."""

    char = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, v) -> Fraction:
        if isinstance(v, QElem) or isinstance(v, GFElem):
            raise FieldMismatch(f"{v!r} is not rational")
        return _parse_rational(v)

    def fmt(self, c: Fraction) -> str:
        return _fmt_rational(c)

    def parse(self, s) -> Fraction:
        return _parse_rational(s)

    def to_json(self):
        return "Q"

    def __str__(self):
        return "Q"

    def is_square(self, c) -> "SquareClassResult":
        return is_square(self(c))


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt d) for a squarefree integer d != 0, 1."""

    d: int
    char = 0

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d in (0, 1) or squarefree_part(self.d) != self.d:
            raise InvalidField(f"d = {self.d} must be a squarefree integer other than 0, 1")

    @property
    def zero(self) -> QElem:
        return QElem._raw(Fraction(0), Fraction(0), self.d)

    @property
    def one(self) -> QElem:
        return QElem._raw(Fraction(1), Fraction(0), self.d)

    @property
    def gen(self) -> QElem:
        return QElem._raw(Fraction(0), Fraction(1), self.d)

    def __call__(self, v) -> QElem:
        if isinstance(v, QElem):
            if v.d != self.d:
                raise FieldMismatch(f"{v!r} not in Q(sqrt {self.d})")
            return v
        if isinstance(v, GFElem):
            raise FieldMismatch(f"{v!r} not in Q(sqrt {self.d})")
        if isinstance(v, (tuple, list)) and len(v) == 2:
            return QElem(_parse_rational(v[0]), _parse_rational(v[1]), self.d)
        if isinstance(v, str):
            return self.parse(v)
        return QElem._raw(_parse_rational(v), Fraction(0), self.d)

    def fmt(self, c: QElem) -> str:
        return _fmt_quadratic(c)

    def parse(self, s) -> QElem:
        if isinstance(s, str):
            m = _QUAD_RE.match(s)
            if m:
                x, sign, y, d = m.groups()
                if int(d) != self.d:
                    raise FieldMismatch(f"{s!r} is not in Q(sqrt {self.d})")
                yv = Fraction(y)
                return QElem(Fraction(x), -yv if sign == "-" else yv, self.d)
        return QElem._raw(_parse_rational(s), Fraction(0), self.d)

    def to_json(self):
        return {"Qsqrt": self.d}

    def __str__(self):
        return f"Q(sqrt({self.d}))"

    def is_square(self, c) -> "SquareClassResult":
        return is_square(self(c))


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for an odd prime p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not is_probable_prime(self.p):
            raise InvalidField(f"p = {self.p} must be an odd prime")

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self) -> GFElem:
        return GFElem._raw(0, self.p)

    @property
    def one(self) -> GFElem:
        return GFElem._raw(1, self.p)

    def __call__(self, v) -> GFElem:
        if isinstance(v, GFElem):
            if v.p != self.p:
                raise FieldMismatch(f"{v!r} not in GF({self.p})")
            return v
        if isinstance(v, QElem):
            raise FieldMismatch(f"{v!r} not in GF({self.p})")
        if isinstance(v, str):
            return self.parse(v)
        q = _parse_rational(v)
        return self.zero + q

    def elements(self) -> Iterator[GFElem]:
        for v in range(self.p):
            yield GFElem._raw(v, self.p)

    def fmt(self, c: GFElem) -> str:
        return f"gf({self.p}):{c.v}"

    def parse(self, s) -> GFElem:
        if isinstance(s, str):
            m = _GF_RE.match(s)
            if m:
                if int(m.group(1)) != self.p:
                    raise FieldMismatch(f"{s!r} is not in GF({self.p})")
                return GFElem(int(m.group(2)), self.p)
        return self.zero + _parse_rational(s)

    def to_json(self):
        return {"GF": self.p}

    def __str__(self):
        return f"GF({self.p})"

    def is_square(self, c) -> "SquareClassResult":
        return is_square(self(c))


QQ = Rationals()
FieldDescriptor = Union[Rationals, QuadraticField, PrimeField]


def field_of(c) -> FieldDescriptor:
    if isinstance(c, QElem):
        return QuadraticField(c.d)
    if isinstance(c, GFElem):
        return PrimeField(c.p)
    if isinstance(c, (int, Fraction)):
        return QQ
    raise TypeError(f"not a scalar: {c!r}")


def fmt_scalar(c) -> str:
    if isinstance(c, QElem):
        return _fmt_quadratic(c)
    if isinstance(c, GFElem):
        return f"gf({c.p}):{c.v}"
    return _fmt_rational(Fraction(c))


def field_from_json(obj) -> FieldDescriptor:
    if obj == "Q" or obj == {"Q": None} or obj == {"Q": True} or obj == ["Q"]:
        return QQ
    if isinstance(obj, dict) and len(obj) == 1:
        (k, v), = obj.items()
        if k == "Qsqrt" and isinstance(v, int) and not isinstance(v, bool):
            return QuadraticField(v)
        if k == "GF" and isinstance(v, int) and not isinstance(v, bool):
            return PrimeField(v)
    raise InvalidField(f"unrecognised field description {obj!r}")


# ---------------------------------------------------------------------------
# arithmetic front door


def arith(a, b, op: str):
    """Exact field operation ``op`` in {add, sub, mul, div}."""
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatch(f"{fa} vs {fb}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def conj(c):
    if not isinstance(c, QElem):
        raise NotAQuadraticExtension(f"{c!r} is not in a quadratic extension")
    return c.conj()


def norm(c) -> Fraction:
    if not isinstance(c, QElem):
        raise NotAQuadraticExtension(f"{c!r} is not in a quadratic extension")
    return c.norm()


def trace(c) -> Fraction:
    if not isinstance(c, QElem):
        raise NotAQuadraticExtension(f"{c!r} is not in a quadratic extension")
    return 2 * c.x


# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True)
class SquareClassResult:
    is_square: bool
    witness: Optional[Scalar] = None

    def __bool__(self):
        return self.is_square


def _rational_sqrt(c: Fraction) -> Optional[Fraction]:
    """Square root in Q via factorization of numerator and denominator."""
    if c < 0:
        return None
    if c == 0:
        return Fraction(0)
    root = []
    for n in (c.numerator, c.denominator):
        r = 1
        for p, e in factorize(n).items():
            if e % 2:
                return None
            r *= p ** (e // 2)
        root.append(r)
    return Fraction(root[0], root[1])


def _gf_sqrt(v: int, p: int) -> Optional[int]:
    """Tonelli-Shanks; None for non-residues."""
    v %= p
    if v == 0:
        return 0
    if pow(v, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(v, q, p), pow(v, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def sqrt(c) -> Optional[Scalar]:
    """A square root of c in its own field, or None."""
    if isinstance(c, GFElem):
        r = _gf_sqrt(c.v, c.p)
        return None if r is None else GFElem._raw(r, c.p)
    if isinstance(c, QElem):
        d = c.d
        if not c:
            return c
        if not c.y:
            r = _rational_sqrt(c.x)
            if r is not None:
                return QElem._raw(r, Fraction(0), d)
            r = _rational_sqrt(c.x / d)
            if r is not None:
                return QElem._raw(Fraction(0), r, d)
            return None
        # (p + q sqrt d)^2 = c forces (p^2 - d q^2)^2 = N(c)
        n = _rational_sqrt(c.norm())
        if n is None:
            return None
        for nz in (n, -n):
            p2 = (c.x + nz) / 2
            p = _rational_sqrt(p2)
            if p:
                q = c.y / (2 * p)
                w = QElem._raw(p, q, d)
                if w * w == c:
                    return w if (p, q) >= (-p, -q) else -w
        return None
    return _rational_sqrt(_as_fraction(c))


def is_square(c) -> SquareClassResult:
    """Decide whether the nonzero scalar c is a square; witness when it is."""
    if not c:
        raise ZeroInput("is_square needs a nonzero input")
    r = sqrt(c)
    return SquareClassResult(r is not None, r)


def square_class_equal(a, b) -> bool:
    if not a or not b:
        raise ZeroInput("square classes are defined for nonzero elements")
    return is_square(a / b).is_square


# ---------------------------------------------------------------------------
# Hilbert symbols over Q


def _int_class(a) -> int:
    """An integer in the same square class as the nonzero rational a."""
    a = _as_fraction(a) if not isinstance(a, Fraction) else a
    if not a:
        raise ZeroInput("Hilbert symbol of 0")
    return a.numerator * a.denominator


def _valuation(n: int, p: int):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _legendre(u: int, p: int) -> int:
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def _is_inf(place) -> bool:
    return place == INF or place == float("inf") or place == "oo" or place == "infinity"


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol (a, b)_v over Q, v a prime or ``INF``."""
    if isinstance(a, QElem) or isinstance(b, QElem):
        if (isinstance(a, QElem) and a.y) or (isinstance(b, QElem) and b.y):
            raise NotAQuadraticExtension("Hilbert symbols are computed over Q only")
        a = a.x if isinstance(a, QElem) else a
        b = b.x if isinstance(b, QElem) else b
    A, B = _int_class(a), _int_class(b)
    if _is_inf(place):
        return -1 if A < 0 and B < 0 else 1
    p = int(place)
    if p == 2:
        al, u = _valuation(A, 2)
        be, v = _valuation(B, 2)
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + al * omega(v) + be * omega(u)
        return -1 if e % 2 else 1
    al, u = _valuation(A, p)
    be, v = _valuation(B, p)
    s = 1
    if (al * be * ((p - 1) // 2)) % 2:
        s = -s
    if be % 2:
        s *= _legendre(u, p)
    if al % 2:
        s *= _legendre(v, p)
    return s


def relevant_places(a, b) -> list:
    """INF, 2 and the odd primes dividing numerators or denominators of a, b."""
    primes = set()
    for x in (a, b):
        n = _int_class(x)
        primes.update(p for p in factorize(n) if p != 2)
    return [INF, 2] + sorted(primes)


def quaternion_is_split(a, b) -> bool:
    """True iff the quaternion algebra (a, b) over Q is a matrix algebra."""
    return all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))


# ---------------------------------------------------------------------------
# norm equations  lambda * conj(lambda) = c  in Q(sqrt d)


@dataclass(frozen=True)
class NormEquationResult:
    solvable: bool
    witness: Optional[QElem] = None
    note: str = ""

    @property
    def search_exhausted(self) -> bool:
        return self.solvable and self.witness is None


def _gaussian_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _two_squares_prime(p: int):
    """x^2 + y^2 = p for a prime p = 1 mod 4 (Hermite-Serret)."""
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    x = pow(c, (p - 1) // 4, p)
    a, b = p, x
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    return (b, isqrt(p - b * b))


def _sum_two_squares(n: int):
    g = (1, 0)
    for p, e in sorted(factorize(n).items()):
        if p == 2:
            for _ in range(e):
                g = _gaussian_mul(g, (1, 1))
        elif p % 4 == 3:
            if e % 2:
                return None
            g = (g[0] * p ** (e // 2), g[1] * p ** (e // 2))
        else:
            pi = _two_squares_prime(p)
            for _ in range(e):
                g = _gaussian_mul(g, pi)
    return g


def search_cap(*coeffs) -> int:
    """Height beyond which a ternary-form point search stops paying off.

    Points on a solvable conic a x^2 + b y^2 + c z^2 = 0 exist with heights
    around sqrt of products of the coefficients; we search a generous
    multiple of that.
    """
    prod = 1
    for c in coeffs:
        c = _as_fraction(c) if not isinstance(c, Fraction) else c
        prod *= abs(c.numerator) * c.denominator
    return 4 * isqrt(prod) + 8


def norm_equation(d: int, c, bound: Optional[int] = None) -> NormEquationResult:
    """Decide lambda*conj(lambda) = c in Q(sqrt d); find lambda when practical."""
    c = _as_fraction(c) if not isinstance(c, Fraction) else c
    if not c:
        raise ZeroInput("norm_equation needs c != 0")
    if not quaternion_is_split(d, c):
        return NormEquationResult(False)
    bound = DEFAULT_SEARCH_BOUND if bound is None else bound
    n, m = c.numerator, c.denominator
    if d == -1:
        g = _sum_two_squares(n * m)
        if g is not None:
            return NormEquationResult(True, QElem(Fraction(g[0], m), Fraction(g[1], m), d), "gaussian")
    # x^2 - d y^2 = c z^2 with z > 0, searched by height max(y, z)
    cap = min(bound, search_cap(d, n * m))
    for h in range(1, cap + 1):
        pairs = [(h, y) for y in range(0, h + 1)] + [(z, h) for z in range(1, h)]
        for z, y in pairs:
            x2 = c * z * z + d * y * y
            x = _rational_sqrt(x2) if x2 >= 0 else None
            if x is not None:
                lam = QElem(x / z, Fraction(y, z), d)
                if lam.norm() == c:
                    return NormEquationResult(True, lam, "search")
    return NormEquationResult(True, None, "WitnessSearchExhausted")

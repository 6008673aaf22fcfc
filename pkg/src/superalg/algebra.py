"""Superalgebras given by structure constants.

A ``SuperAlgebra`` has a homogeneous basis e_0..e_{n-1}, a parity for each
basis vector and products e_i e_j = sum_k c[i][j][k] e_k.  Coordinates are
plain lists of scalars; ``Element`` wraps a coordinate tuple for the public
API.  Everything below the constructor is exact linear algebra on these
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    InvalidAlgebra,
    NotCSS,
    NotHomogeneous,
    NotMinimal,
    NotOddType,
    NotSplitEven,
    ParentMismatch,
    UnsupportedCenterFactorization,
    UnsupportedDimension,
)
from .fields import PrimeField, Rationals, is_square, quaternion_is_split, sqrt


class SuperAlgebra:
    """Finite-dimensional associative superalgebra with a homogeneous basis.

    ``table[i][j]`` is a tuple of ``(k, c)`` pairs listing the nonzero
    structure constants of e_i e_j.  The constructor validates grading
    compatibility, the unit and associativity unless ``check=False``.
    """

    def __init__(self, field, parity, table, unit, recipe=None, labels=None, check=True):
        self.field = field
        self.parity = tuple(int(p) for p in parity)
        self.dim = len(self.parity)
        n = self.dim
        if n == 0:
            raise InvalidAlgebra("dimension must be positive")
        if len(table) != n or any(len(row) != n for row in table):
            raise InvalidAlgebra("structure constant table has the wrong shape")
        zero = field.zero
        self.table = tuple(
            tuple(tuple((int(k), field(c)) for k, c in cell if c) for cell in row) for row in table
        )
        self.unit = tuple(field(c) for c in unit)
        if len(self.unit) != n:
            raise InvalidAlgebra("unit has the wrong length")
        self.recipe = recipe
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(n))
        self.even = tuple(i for i in range(n) if self.parity[i] == 0)
        self.odd = tuple(i for i in range(n) if self.parity[i] == 1)
        self._zero = zero
        if check:
            self.validate()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_constants(cls, field, parity, constants, unit, **kw):
        """Build from a dense tensor c[i][j][k]."""
        table = [[[(k, c) for k, c in enumerate(cell) if c] for cell in row] for row in constants]
        return cls(field, parity, table, unit, **kw)

    @property
    def structure_constants(self) -> List[List[list]]:
        n = self.dim
        out = [[[self._zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j]:
                    out[i][j][k] = c
        return out

    def validate(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j]:
                    if not 0 <= k < n:
                        raise InvalidAlgebra(f"index {k} out of range")
                    if self.parity[k] != self.parity[i] ^ self.parity[j]:
                        raise InvalidAlgebra(f"e{i}*e{j} has a component on e{k} of the wrong parity")
        if any(self.unit[i] for i in self.odd):
            raise InvalidAlgebra("unit is not even")
        for i in range(n):
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise InvalidAlgebra(f"unit law fails on e{i}")
        # sparse (e_i e_j) e_k == e_i (e_j e_k)
        T = self.table
        for i in range(n):
            for j in range(n):
                left = T[i][j]
                for k in range(n):
                    a: dict = {}
                    for m, c in left:
                        for r, d in T[m][k]:
                            a[r] = a.get(r, 0) + c * d
                    b: dict = {}
                    for m, c in T[j][k]:
                        for r, d in T[i][m]:
                            b[r] = b.get(r, 0) + c * d
                    if any(a.get(r, 0) != b.get(r, 0) for r in set(a) | set(b)):
                        raise InvalidAlgebra(f"associativity fails on (e{i}, e{j}, e{k})")

    # -- coordinates -------------------------------------------------------------

    def zero_vec(self) -> list:
        return [self._zero] * self.dim

    def basis(self, i: int) -> list:
        v = [self._zero] * self.dim
        v[i] = self.field.one
        return v

    def mul_basis(self, i: int, j: int) -> list:
        v = [self._zero] * self.dim
        for k, c in self.table[i][j]:
            v[k] = c
        return v

    def _mul_by_basis(self, x: Sequence, j: int) -> list:
        out = [self._zero] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for k, c in self.table[i][j]:
                    out[k] = out[k] + xi * c
        return out

    def _basis_mul(self, i: int, y: Sequence) -> list:
        out = [self._zero] * self.dim
        row = self.table[i]
        for j, yj in enumerate(y):
            if yj:
                for k, c in row[j]:
                    out[k] = out[k] + yj * c
        return out

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = [self._zero] * self.dim
        ynz = [(j, yj) for j, yj in enumerate(y) if yj]
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in ynz:
                c0 = xi * yj
                for k, c in row[j]:
                    out[k] = out[k] + c0 * c
        return out

    def add(self, x, y) -> list:
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y) -> list:
        return [a - b for a, b in zip(x, y)]

    def scale(self, s, x) -> list:
        return [s * a for a in x]

    def scalar(self, s) -> list:
        return [s * a for a in self.unit]

    def degree(self, x: Sequence) -> Optional[int]:
        """Parity of a nonzero homogeneous vector; None if mixed.  Zero is even."""
        ev = any(x[i] for i in self.even)
        od = any(x[i] for i in self.odd)
        if ev and od:
            return None
        return 1 if od else 0

    def is_homogeneous(self, x) -> bool:
        return self.degree(x) is not None

    def as_scalar(self, x: Sequence):
        """The scalar s with x = s*1, or None."""
        piv = next(i for i, u in enumerate(self.unit) if u)
        s = x[piv] / self.unit[piv]
        if all(x[i] == s * self.unit[i] for i in range(self.dim)):
            return s
        return None

    def left_matrix(self, x: Sequence) -> List[list]:
        """Matrix of y -> x*y (columns are images of basis vectors)."""
        cols = [self._basis_mul_left(x, j) for j in range(self.dim)]
        return linalg.transpose(cols)

    def _basis_mul_left(self, x, j):
        return self._mul_by_basis(x, j)

    def right_matrix(self, x: Sequence) -> List[list]:
        cols = [self._basis_mul(j, x) for j in range(self.dim)]
        return linalg.transpose(cols)

    def inverse_vec(self, x: Sequence) -> Optional[list]:
        """Two-sided inverse of x, or None."""
        rows = linalg.dense_rows(self.left_matrix(x))
        y = linalg.solve(rows, self.unit, self.dim, self._zero)
        if y is None:
            return None
        if self.mul(y, x) != list(self.unit) or self.mul(x, y) != list(self.unit):
            return None
        return y

    def element(self, coords) -> "Element":
        return Element(self, tuple(self.field(c) for c in coords))

    def __repr__(self):
        return f"SuperAlgebra(dim={self.dim}, field={self.field}, parity={''.join(map(str, self.parity))})"


class Element:
    """Immutable element of a ``SuperAlgebra``."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: SuperAlgebra, coords):
        self.parent = parent
        self.coords = tuple(coords)

    def _check(self, o):
        if not isinstance(o, Element) or o.parent is not self.parent:
            raise ParentMismatch("elements live in different algebras")

    def __add__(self, o):
        if not isinstance(o, Element):
            o = Element(self.parent, self.parent.scalar(self.parent.field(o)))
        self._check(o)
        return Element(self.parent, self.parent.add(self.coords, o.coords))

    __radd__ = __add__

    def __sub__(self, o):
        if not isinstance(o, Element):
            o = Element(self.parent, self.parent.scalar(self.parent.field(o)))
        self._check(o)
        return Element(self.parent, self.parent.sub(self.coords, o.coords))

    def __rsub__(self, o):
        return (-self) + o

    def __neg__(self):
        return Element(self.parent, [-c for c in self.coords])

    def __mul__(self, o):
        if isinstance(o, Element):
            return multiply(self, o)
        return Element(self.parent, self.parent.scale(self.parent.field(o), self.coords))

    def __rmul__(self, o):
        return Element(self.parent, self.parent.scale(self.parent.field(o), self.coords))

    def __truediv__(self, s):
        return self * (1 / self.parent.field(s))

    def __eq__(self, o):
        if isinstance(o, Element):
            return self.parent is o.parent and self.coords == o.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    @property
    def parity(self) -> Optional[int]:
        return self.parent.degree(self.coords)

    def is_homogeneous(self) -> bool:
        return self.parent.is_homogeneous(self.coords)

    def __repr__(self):
        from .fields import fmt_scalar

        terms = [f"{fmt_scalar(c)}*{self.parent.labels[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


def unit(A: SuperAlgebra) -> Element:
    return Element(A, A.unit)


def basis_element(A: SuperAlgebra, i: int) -> Element:
    return Element(A, A.basis(i))


def multiply(x: Element, y: Element) -> Element:
    if x.parent is not y.parent:
        raise ParentMismatch("elements live in different algebras")
    return Element(x.parent, x.parent.mul(x.coords, y.coords))


def invert_homogeneous(x: Element) -> Optional[Element]:
    """Inverse of a homogeneous element, or None when it is singular."""
    if not x.is_homogeneous():
        raise NotHomogeneous("invert_homogeneous needs a homogeneous element")
    y = x.parent.inverse_vec(x.coords)
    return None if y is None else Element(x.parent, y)


# ---------------------------------------------------------------------------
# centers


def _commutant(A: SuperAlgebra, unknowns, tests, graded: bool) -> List[list]:
    """Vectors x in span(unknowns) with x*h = s*h*x for all basis h in tests.

    s = (-1)^{|x||h|} when graded, else 1.  Unknowns must share one parity
    when graded.
    """
    idx = {j: t for t, j in enumerate(unknowns)}
    eqs = {}
    for l in tests:
        for j in unknowns:
            s = -1 if graded and A.parity[j] and A.parity[l] else 1
            for k, c in A.table[j][l]:
                key = (l, k)
                row = eqs.setdefault(key, {})
                row[idx[j]] = row.get(idx[j], 0) + c
            for k, c in A.table[l][j]:
                key = (l, k)
                row = eqs.setdefault(key, {})
                row[idx[j]] = row.get(idx[j], 0) - s * c
    null = linalg.nullspace(eqs.values(), len(unknowns), A._zero, A.field.one)
    out = []
    for v in null:
        x = A.zero_vec()
        for t, j in enumerate(unknowns):
            x[j] = v[t]
        out.append(x)
    return out


def graded_center(A: SuperAlgebra) -> List[Element]:
    """Homogeneous spanning set of {x : x h = (-1)^{xh} h x for homogeneous h}."""
    allidx = range(A.dim)
    vecs = _commutant(A, A.even, allidx, True)
    if A.odd:
        vecs += _commutant(A, A.odd, allidx, True)
    return [Element(A, v) for v in vecs]


def center(A: SuperAlgebra) -> List[Element]:
    """Ordinary center, returned as an even basis followed by an odd basis."""
    allidx = range(A.dim)
    vecs = _commutant(A, A.even, allidx, False)
    if A.odd:
        vecs += _commutant(A, A.odd, allidx, False)
    return [Element(A, v) for v in vecs]


def center_odd(A: SuperAlgebra) -> List[Element]:
    """Basis of Z(A)_1."""
    if not A.odd:
        return []
    return [Element(A, v) for v in _commutant(A, A.odd, range(A.dim), False)]


def center_even(A: SuperAlgebra) -> List[Element]:
    """Basis of Z(A_0), the center of the even part."""
    return [Element(A, v) for v in _commutant(A, A.even, A.even, False)]


def is_central(A: SuperAlgebra) -> bool:
    return len(graded_center(A)) == 1


# ---------------------------------------------------------------------------
# simplicity


def _diag_sum(A, i):
    row = A.table[i]
    for k in range(A.dim):
        for kk, c in row[k]:
            if kk == k:
                yield c


def trace_form(A: SuperAlgebra) -> List[list]:
    """Gram matrix of (x, y) -> tr(L_{xy}) on the basis."""
    t = [sum(_diag_sum(A, i), A._zero) for i in range(A.dim)]
    return [[sum((c * t[k] for k, c in A.table[i][j]), A._zero) for j in range(A.dim)] for i in range(A.dim)]


def _is_commutative(A: SuperAlgebra) -> bool:
    return all(A.table[i][j] == A.table[j][i] for i in range(A.dim) for j in range(i))


def _frobenius_injective(A: SuperAlgebra) -> bool:
    """For commutative A over GF(p): no nonzero x with x^p = 0, i.e. reduced."""
    images = [_power(A, A.basis(i), A.field.p) for i in range(A.dim)]
    return linalg.rank(images, A.dim) == A.dim


def _power(A: SuperAlgebra, x: list, k: int) -> list:
    y = list(A.unit)
    while k:
        if k & 1:
            y = A.mul(y, x)
        x = A.mul(x, x)
        k >>= 1
    return y


def is_semisimple(A: SuperAlgebra) -> bool:
    """Zero Jacobson radical (ungraded).

    Trace-form test in characteristic 0 and for p > dim.  For small p the
    commutative case is decided by Frobenius injectivity and the central
    case by the sandwich-map rank; anything else is unsupported.
    """
    if isinstance(A.field, PrimeField) and A.field.p <= A.dim:
        if _is_commutative(A):
            return _frobenius_injective(A)
        if len(center(A)) == 1:
            return _sandwich_rank(A, graded=False) == A.dim ** 2
        raise UnsupportedDimension(f"GF({A.field.p}) needs p > dim = {A.dim}")
    return linalg.rank(trace_form(A), A.dim) == A.dim


def _sandwich_rank(A: SuperAlgebra, graded: bool) -> int:
    """Rank of the span of x -> (-1)^{|b||x|} a x b over basis a, b.

    This span is all of End_F(A) exactly when A (x) A^s -> End_F(A) is
    onto, which for A with trivial (graded) center is graded simplicity.
    """
    n = A.dim
    T = A.table
    rr = linalg.RowReducer(n * n)
    for a in range(n):
        for b in range(n):
            row: dict = {}
            for x in range(n):
                neg = graded and A.parity[b] and A.parity[x]
                for m, c in T[a][x]:
                    for k, d in T[m][b]:
                        key = k * n + x
                        v = row.get(key, 0) + (-(c * d) if neg else c * d)
                        row[key] = v
            rr.add(row)
            if rr.rank == n * n:
                return rr.rank
    return rr.rank


def _quadratic_min_poly(A: SuperAlgebra, w: Sequence):
    """(alpha, beta) with w^2 = alpha + beta*w, or None if w^2 leaves span{1, w}."""
    w2 = A.mul(w, w)
    rows = [{0: A.unit[k], 1: w[k]} for k in range(A.dim)]
    sol = linalg.solve(rows, w2, 2, A._zero)
    if sol is None:
        return None
    return sol[0], sol[1]


def _frobenius_fixed_dim(A: SuperAlgebra, basis: List[list]) -> int:
    """dim of {x in span(basis) : x^p = x} for a commutative subalgebra over GF(p)."""
    p = A.field.p
    images = [A.sub(_power(A, b, p), b) for b in basis]
    # x = sum t_i b_i with sum t_i (b_i^p - b_i) = 0  (Frobenius is additive)
    rows = [{i: images[i][k] for i in range(len(basis)) if images[i][k]} for k in range(A.dim)]
    return len(linalg.nullspace(rows, len(basis), A._zero, A.field.one))


def _commutative_is_field(A: SuperAlgebra, basis: List[list]) -> bool:
    """Is the semisimple commutative subalgebra span(basis) (containing 1) a field?"""
    if len(basis) == 1:
        return True
    if isinstance(A.field, PrimeField):
        return _frobenius_fixed_dim(A, basis) == 1
    if len(basis) == 2:
        w = next(b for b in basis if A.as_scalar(b) is None)
        mp = _quadratic_min_poly(A, w)
        alpha, beta = mp
        disc = beta * beta + 4 * alpha
        # disc = 0 would mean a nilpotent, excluded by semisimplicity
        return bool(disc) and not is_square(disc).is_square
    raise UnsupportedCenterFactorization(f"center of dimension {len(basis)} over {A.field}")


def is_graded_simple(A: SuperAlgebra) -> bool:
    """No proper nonzero graded two-sided ideals.

    The radical is detected by the trace form.  For semisimple A, graded
    ideals correspond to central idempotents fixed by the grading
    automorphism, i.e. idempotents of the even part of the center; A is
    graded-simple iff that part is a field.  This is the same as asking for
    one central primitive idempotent, or exactly two that the grading
    automorphism swaps.
    """
    if isinstance(A.field, PrimeField) and A.field.p <= A.dim:
        if is_central(A):
            return _sandwich_rank(A, graded=True) == A.dim ** 2
        raise UnsupportedDimension(f"GF({A.field.p}) needs p > dim = {A.dim} for a non-central algebra")
    if not is_semisimple(A):
        return False
    z0 = [list(v.coords) for v in center_even_part(A)]
    return _commutative_is_field(A, z0)


def center_even_part(A: SuperAlgebra) -> List[Element]:
    """Basis of Z(A)_0, the even part of the ordinary center."""
    return [Element(A, v) for v in _commutant(A, A.even, range(A.dim), False)]


def center_idempotents(A: SuperAlgebra) -> List[Element]:
    """Primitive idempotents of Z(A) when dim Z(A) <= 2."""
    Z = center(A)
    if len(Z) == 1:
        return [unit(A)]
    if len(Z) > 2:
        raise UnsupportedCenterFactorization(f"dim Z(A) = {len(Z)}")
    w = next(z.coords for z in Z if A.as_scalar(z.coords) is None)
    alpha, beta = _quadratic_min_poly(A, w)
    disc = beta * beta + 4 * alpha
    r = sqrt(disc) if disc else None
    if r is None or not disc:
        return [unit(A)]
    # roots of t^2 - beta t - alpha; e = (w - r2)/(r1 - r2)
    r1, r2 = (beta + r) / 2, (beta - r) / 2
    e1 = A.scale(1 / (r1 - r2), A.sub(w, A.scalar(r2)))
    e2 = A.sub(list(A.unit), e1)
    return [Element(A, e1), Element(A, e2)]


# ---------------------------------------------------------------------------
# subalgebras


def even_subalgebra(A: SuperAlgebra) -> SuperAlgebra:
    """A_0 as a trivially graded algebra on the even basis vectors."""
    pos = {j: t for t, j in enumerate(A.even)}
    table = [[[(pos[k], c) for k, c in A.table[i][j]] for j in A.even] for i in A.even]
    unit = [A.unit[i] for i in A.even]
    return SuperAlgebra(A.field, [0] * len(A.even), table, unit,
                        labels=[A.labels[i] for i in A.even], check=False)


def _quaternion_symbol(B: SuperAlgebra):
    """(alpha, beta) for a 4-dim central simple B, or a zero divisor marker.

    Pure quaternions are the kernel of the trace; an element i there squares
    to a scalar, and the anticommutant of i among pure elements contains j.
    Returns None when a nonzero nilpotent element turns up.
    """
    t = [sum(_diag_sum(B, i), B._zero) for i in range(B.dim)]
    pure = linalg.nullspace([{k: t[k] for k in range(B.dim) if t[k]}], B.dim, B._zero, B.field.one)
    i0 = pure[0]
    alpha = B.as_scalar(B.mul(i0, i0))
    if not alpha:
        return None
    rows = {}
    for idx, p in enumerate(pure):
        s = B.add(B.mul(i0, p), B.mul(p, i0))
        for k in range(B.dim):
            if s[k]:
                rows.setdefault(k, {})[idx] = s[k]
    anti = linalg.nullspace(rows.values(), len(pure), B._zero, B.field.one)
    j0 = B.zero_vec()
    for idx, c in enumerate(anti[0]):
        if c:
            j0 = B.add(j0, B.scale(c, pure[idx]))
    beta = B.as_scalar(B.mul(j0, j0))
    if not beta:
        return None
    return alpha, beta


def _algebra_is_division(B: SuperAlgebra) -> bool:
    """Ungraded division test for B of dimension <= 4 over its center."""
    if isinstance(B.field, PrimeField):
        # finite division rings are commutative fields
        if not _is_commutative(B):
            return False
        basis = [B.basis(i) for i in range(B.dim)]
        return _frobenius_injective(B) and _frobenius_fixed_dim(B, basis) == 1
    if not is_semisimple(B):
        return False
    Z = [list(z.coords) for z in center(B)]
    commutative = len(Z) == B.dim
    if commutative:
        return _commutative_is_field(B, Z)
    if len(Z) == 2:
        if not _commutative_is_field(B, Z):
            return False
        raise UnsupportedDimension("quaternion algebras over a quadratic center")
    if len(Z) == 1 and B.dim == 4:
        sym = _quaternion_symbol(B)
        if sym is None:
            return False
        alpha, beta = sym
        if isinstance(B.field, Rationals):
            return not quaternion_is_split(alpha, beta)
        if any(is_square(v).is_square for v in (alpha, beta, -alpha * beta)):
            return False
        raise UnsupportedDimension("quaternion splitting over Q(sqrt d)")
    raise UnsupportedDimension(f"A_0 of dimension {B.dim} over a center of dimension {len(Z)}")


def is_division_superalgebra(A: SuperAlgebra) -> bool:
    """Every nonzero homogeneous element invertible.

    A_0 is tested for zero divisors; then one odd element is tried, which is
    enough because A_1 = A_0 u for any invertible odd u.
    """
    if not _algebra_is_division(even_subalgebra(A)):
        return False
    if not A.odd:
        return True
    return A.inverse_vec(A.basis(A.odd[0])) is not None


# ---------------------------------------------------------------------------
# idempotents generating minimal right ideals


def _span_basis(A: SuperAlgebra, vecs: List[list]) -> List[list]:
    return [vecs[i] for i in linalg.independent_subset(vecs, A.dim)]


def find_idempotent_for_minimal_ideal(A: SuperAlgebra, x: Element) -> Element:
    """Even idempotent e with eA = xA and e x = x.

    Following Brauer's argument: pick a homogeneous y in I = xA with
    yI != 0, solve y e = y for e in I_0, and check that e is idempotent.
    When x itself satisfies xI != 0 it is used as y, so also x e = x.
    """
    if not x.is_homogeneous() or not x:
        raise NotMinimal("x must be nonzero and homogeneous")
    n = A.dim
    gens = [A._mul_by_basis(list(x.coords), j) for j in range(n)]
    I = _span_basis(A, gens)
    homog = [g for g in gens if any(g) and A.is_homogeneous(g)]
    cands = [list(x.coords)] + homog
    I0 = [v for v in _span_basis(A, [g for g in homog if A.degree(g) == 0])]
    if not I0:
        raise NotMinimal("xA has no even part")
    for y in cands:
        if all(not any(A.mul(y, v)) for v in I):
            continue
        # y * (sum t_k I0_k) = y
        prods = [A.mul(y, v) for v in I0]
        rows = [{t: prods[t][k] for t in range(len(I0)) if prods[t][k]} for k in range(n)]
        if linalg.nullspace(rows, len(I0), A._zero, A.field.one):
            raise NotMinimal("y e = y does not determine e; xA is not minimal")
        sol = linalg.solve(rows, y, len(I0), A._zero)
        if sol is None:
            continue
        e = A.zero_vec()
        for t, c in enumerate(sol):
            if c:
                e = A.add(e, A.scale(c, I0[t]))
        if A.mul(e, e) != e:
            raise NotMinimal("solution of y e = y is not idempotent")
        eA = _span_basis(A, [A._mul_by_basis(e, j) for j in range(n)])
        if len(eA) != len(I) or A.mul(e, list(x.coords)) != list(x.coords):
            raise NotMinimal("eA differs from xA")
        return Element(A, e)
    raise NotMinimal("no homogeneous y in xA with y xA != 0")


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationReport:
    is_central: bool
    is_graded_simple: bool
    type: str  # "odd", "even" or "trivial"
    a: Optional[object] = None
    z: Optional[Element] = None
    split: Optional[bool] = None
    a0_summary: Optional[List[int]] = None
    notes: List[str] = dc_field(default_factory=list)


def _normalize_leading(A: SuperAlgebra, v: Sequence) -> list:
    lead = next(c for c in v if c)
    return A.scale(1 / lead, v)


def _even_z(A: SuperAlgebra) -> Tuple[list, object]:
    Z0 = [list(z.coords) for z in center_even(A)]
    if len(Z0) != 2:
        raise NotCSS(f"even type needs dim Z(A_0) = 2, found {len(Z0)}")
    w = next(v for v in Z0 if A.as_scalar(v) is None)
    alpha, beta = _quadratic_min_poly(A, w)
    z = A.sub(w, A.scalar(beta / 2))
    z = _normalize_leading(A, z)
    a = A.as_scalar(A.mul(z, z))
    return z, a


def classify_css(A: SuperAlgebra) -> ClassificationReport:
    """Structure-theorem classification of a central graded-simple A.

    The result (or the NotCSS failure) is cached on A; algebras are never
    mutated after construction.
    """
    cached = A.__dict__.get("_css_cache")
    if cached is None:
        try:
            cached = _classify_css(A)
        except NotCSS as exc:
            cached = exc
        A._css_cache = cached
    if isinstance(cached, NotCSS):
        raise NotCSS(str(cached))
    summary = None if cached.a0_summary is None else list(cached.a0_summary)
    return replace(cached, notes=list(cached.notes), a0_summary=summary)


def _classify_css(A: SuperAlgebra) -> ClassificationReport:
    central = is_central(A)
    simple = is_graded_simple(A)
    if not (central and simple):
        raise NotCSS(f"central={central}, graded simple={simple}")
    if not A.odd:
        return ClassificationReport(True, True, "trivial", a0_summary=[A.dim])
    Z1 = center_odd(A)
    if Z1:
        z = _normalize_leading(A, list(Z1[0].coords))
        a = A.as_scalar(A.mul(z, z))
        if not a:
            raise NotCSS("odd central element does not square to a nonzero scalar")
        return ClassificationReport(True, True, "odd", a, Element(A, z), None, [len(A.even)])
    z, a = _even_z(A)
    if not a:
        raise NotCSS("z does not square to a nonzero scalar")
    split = is_square(a).is_square
    rep = ClassificationReport(True, True, "even", a, Element(A, z), split)
    if split:
        rep.a0_summary = list(_split_pair(A, z, a)[2])
    else:
        rep.a0_summary = [len(A.even)]
    return rep


def _split_pair(A, z, a):
    s = is_square(a).witness
    half = A.field.one / 2
    zs = A.scale(1 / s, z)
    ep = A.scale(half, A.add(list(A.unit), zs))
    em = A.scale(half, A.sub(list(A.unit), zs))
    dims = []
    for e in (ep, em):
        dims.append(len(_span_basis(A, [A._mul_by_basis(e, j) for j in A.even])))
    return ep, em, tuple(dims)


@dataclass
class EvenSplitIdempotents:
    e_plus: Element
    e_minus: Element
    dims: Tuple[int, int]


def even_split_idempotents(A: SuperAlgebra) -> EvenSplitIdempotents:
    """Central idempotents e+- = (1 +- z/sqrt(a))/2 of A_0.

    They are orthogonal, sum to 1, and each odd element u satisfies
    u e+ = e- u (odd elements anticommute with z).
    """
    rep = classify_css(A)
    if rep.type != "even" or not rep.split:
        raise NotSplitEven("needs an even CSS with a square z^2")
    ep, em, dims = _split_pair(A, list(rep.z.coords), rep.a)
    for i in A.odd:
        u = A.basis(i)
        if A.mul(u, ep) != A.mul(em, u):
            raise NotSplitEven("odd elements do not swap the idempotents")
    return EvenSplitIdempotents(Element(A, ep), Element(A, em), dims)


# ---------------------------------------------------------------------------
# odd-type decomposition


@dataclass
class OddDecomposition:
    a0: SuperAlgebra  # A_0, trivially graded
    quadratic: SuperAlgebra  # F<sqrt a>
    tensor: SuperAlgebra  # (A_0) (x) F<sqrt a>
    to_tensor: List[list]  # columns: images of A's basis in the tensor
    from_tensor: List[list]  # columns: images of the tensor basis in A
    z: Element


def odd_decompose(A: SuperAlgebra) -> OddDecomposition:
    """Graded isomorphism A -> (A_0) (x) F<sqrt a>, b -> b(x)1, bz -> b(x)u."""
    from .constructors import graded_tensor, quadratic_graded

    rep = classify_css(A) if A.odd else None
    if rep is None or rep.type != "odd":
        raise NotOddType("odd_decompose needs an odd-type CSS")
    z = list(rep.z.coords)
    B = even_subalgebra(A)
    Q = quadratic_graded(A.field, rep.a)
    T = graded_tensor(B, Q)
    # tensor basis index 2t + s  <->  b_t z^s
    from_cols = []
    for t, j in enumerate(A.even):
        b = A.basis(j)
        from_cols.append(b)
        from_cols.append(A.mul(b, z))
    inv = linalg.inverse(linalg.transpose(from_cols), A._zero, A.field.one)
    if inv is None:
        raise NotOddType("A_0 and A_0 z do not span A")
    # homomorphism check on all basis pairs of the tensor
    for p in range(T.dim):
        for q in range(T.dim):
            lhs = _apply_cols(A, from_cols, T.mul_basis(p, q))
            rhs = A.mul(from_cols[p], from_cols[q])
            if lhs != rhs:
                raise NotOddType(f"decomposition map fails on tensor basis pair ({p}, {q})")
    to_cols = linalg.transpose(inv)
    return OddDecomposition(B, Q, T, to_cols, from_cols, rep.z)


def _apply_cols(A, cols, v):
    out = A.zero_vec()
    for j, c in enumerate(v):
        if c:
            for k, x in enumerate(cols[j]):
                if x:
                    out[k] = out[k] + c * x
    return out

"""Standard superalgebras and the operations that combine them.

Each constructor records a recipe so later stages can route on how an
algebra was built instead of trying to recognise it from its structure
constants.

Sign convention for graded tensor products:

    (a (x) b)(a' (x) b') = (-1)^{|b||a'|} (a a') (x) (b b').
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Optional, Sequence

from .algebra import SuperAlgebra
from .errors import EmptyShape, FieldMismatch, InvalidAlgebra, NotOverQuadraticExtension, TooLarge, ZeroCoefficient, ZeroParameter
from .fields import QuadraticField

MAX_CLIFFORD = 6


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class TriviallyGraded:
    inner: Any


@dataclass(frozen=True)
class QuadraticGraded:
    a: Any


@dataclass(frozen=True)
class GradedQuaternion:
    a: Any
    b: Any


@dataclass(frozen=True)
class MatrixSuper:
    n: int
    m: int
    inner: Any = None


@dataclass(frozen=True)
class GradedTensor:
    left: Any
    right: Any


@dataclass(frozen=True)
class Clifford:
    coeffs: tuple


@dataclass(frozen=True)
class SuperOpposite:
    inner: Any


@dataclass(frozen=True)
class Conjugate:
    inner: Any


@dataclass(frozen=True)
class Raw:
    """Marker for algebras typed in as structure constants."""

    dim: int


# ---------------------------------------------------------------------------
# basic builders


def _labels_product(la, lb):
    out = []
    for x in la:
        for y in lb:
            if x == "1":
                out.append(y)
            elif y == "1":
                out.append(x)
            else:
                out.append(f"{x}.{y}")
    return out


def reindex(A: SuperAlgebra, order: Sequence[int], recipe=None, labels=None) -> SuperAlgebra:
    """Same algebra with new basis vector t = old basis vector order[t]."""
    pos = {old: new for new, old in enumerate(order)}
    n = A.dim
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[pos[i]][pos[j]] = [(pos[k], c) for k, c in A.table[i][j]]
    unit = [A.unit[order[t]] for t in range(n)]
    parity = [A.parity[order[t]] for t in range(n)]
    labels = labels or [A.labels[order[t]] for t in range(n)]
    return SuperAlgebra(A.field, parity, table, unit, recipe=recipe if recipe is not None else A.recipe,
                        labels=labels, check=False)


def trivially_graded(B: SuperAlgebra) -> SuperAlgebra:
    """Same multiplication with every basis vector declared even."""
    return SuperAlgebra(B.field, [0] * B.dim, [list(r) for r in B.table], B.unit,
                        recipe=TriviallyGraded(B.recipe), labels=B.labels)


def quadratic_graded(F, a) -> SuperAlgebra:
    """F<sqrt a> = F + F u with u odd and u^2 = a."""
    a = F(a)
    if not a:
        raise ZeroParameter("quadratic_graded needs a != 0")
    one = F.one
    table = [[[(0, one)], [(1, one)]], [[(1, one)], [(0, a)]]]
    return SuperAlgebra(F, [0, 1], table, [one, F.zero], recipe=QuadraticGraded(a), labels=["1", "u"])


def graded_tensor(A: SuperAlgebra, B: SuperAlgebra) -> SuperAlgebra:
    """A (x) B with basis e_i (x) f_j at index i*dim(B) + j."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    F = A.field
    na, nb = A.dim, B.dim
    n = na * nb
    table = [[None] * n for _ in range(n)]
    for i in range(na):
        for j in range(nb):
            r = i * nb + j
            for k in range(na):
                sign = -1 if B.parity[j] and A.parity[k] else 1
                for l in range(nb):
                    cell = []
                    for ka, ca in A.table[i][k]:
                        for kb, cb in B.table[j][l]:
                            c = ca * cb
                            cell.append((ka * nb + kb, -c if sign < 0 else c))
                    table[r][k * nb + l] = cell
    parity = [A.parity[i] ^ B.parity[j] for i in range(na) for j in range(nb)]
    unit = [A.unit[i] * B.unit[j] for i in range(na) for j in range(nb)]
    return SuperAlgebra(F, parity, table, unit, recipe=GradedTensor(A.recipe, B.recipe),
                        labels=_labels_product(A.labels, B.labels), check=False)


def graded_quaternion(F, a, b) -> SuperAlgebra:
    """<a, b> = F<sqrt a> (x) F<sqrt b>, basis 1, u, v, uv."""
    a, b = F(a), F(b)
    if not a or not b:
        raise ZeroParameter("graded_quaternion needs a, b != 0")
    T = graded_tensor(quadratic_graded(F, a), quadratic_graded(F, b))
    # tensor order is 1, v, u, uv
    return reindex(T, [0, 2, 1, 3], recipe=GradedQuaternion(a, b), labels=["1", "u", "v", "uv"])


def _full_matrix(F, n: int, m: int) -> SuperAlgebra:
    k = n + m
    one = F.one
    block = [0] * n + [1] * m
    table = [[[] for _ in range(k * k)] for _ in range(k * k)]
    for i in range(k):
        for j in range(k):
            for l in range(k):
                table[i * k + j][j * k + l] = [(i * k + l, one)]
    parity = [block[i] ^ block[j] for i in range(k) for j in range(k)]
    unit = [one if i == j else F.zero for i in range(k) for j in range(k)]
    labels = [f"E{i + 1}{j + 1}" if k < 10 else f"E{i + 1}_{j + 1}" for i in range(k) for j in range(k)]
    return SuperAlgebra(F, parity, table, unit, recipe=MatrixSuper(n, m, None), labels=labels, check=False)


def matrix_superalgebra(n: int, m: int, D: Optional[SuperAlgebra] = None, field=None) -> SuperAlgebra:
    """M_{n+m}(D): matrix units E_ij (row-major), tensored with D when given.

    The parity of E_ij (x) d is block(i) + block(j) + |d|, with the first n
    rows/columns even.
    """
    if n < 0 or m < 0 or n + m < 1:
        raise EmptyShape("need n + m >= 1")
    F = D.field if D is not None else field
    if F is None:
        raise InvalidAlgebra("a field or a coefficient algebra is required")
    M = _full_matrix(F, n, m)
    if D is None:
        M.validate()
        return M
    T = graded_tensor(M, D)
    T.recipe = MatrixSuper(n, m, D.recipe)
    T.validate()
    return T


def _clifford_monomials(k: int):
    subsets = [()]
    for r in range(1, k + 1):
        subsets += list(combinations(range(k), r))
    return sorted(subsets)


def _clifford_product(S, T, q):
    """(sign*coeff, monomial) for e_S e_T."""
    cur = list(S)
    coeff = 1
    for t in T:
        passed = sum(1 for s in cur if s > t)
        if passed % 2:
            coeff = -coeff
        if t in cur:
            cur.remove(t)
            coeff = coeff * q[t]
        else:
            cur.append(t)
            cur.sort()
    return coeff, tuple(cur)


def clifford(F, q: Sequence) -> SuperAlgebra:
    """Clifford algebra of the diagonal form <q_1, ..., q_k>.

    Generators e_i are odd with e_i^2 = q_i and e_i e_j = -e_j e_i; the
    basis is the square-free monomials in lexicographic order.
    """
    q = [F(c) for c in q]
    if any(not c for c in q):
        raise ZeroCoefficient("Clifford coefficients must be nonzero")
    if len(q) > MAX_CLIFFORD:
        raise TooLarge(f"at most {MAX_CLIFFORD} generators")
    mons = _clifford_monomials(len(q))
    pos = {s: i for i, s in enumerate(mons)}
    n = len(mons)
    table = [[None] * n for _ in range(n)]
    for i, S in enumerate(mons):
        for j, T in enumerate(mons):
            c, U = _clifford_product(S, T, q)
            table[i][j] = [(pos[U], F.one * c)]
    parity = [len(S) % 2 for S in mons]
    unit = [F.one] + [F.zero] * (n - 1)
    labels = ["1" if not S else "".join(f"e{t + 1}" for t in S) for S in mons]
    # associative by construction; validation is only cheap for small tables
    return SuperAlgebra(F, parity, table, unit, recipe=Clifford(tuple(q)), labels=labels, check=len(q) <= 3)


def superopposite(A: SuperAlgebra) -> SuperAlgebra:
    """A^s: x o y = (-1)^{|x||y|} y x."""
    n = A.dim
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            neg = A.parity[i] and A.parity[j]
            table[i][j] = [(k, -c if neg else c) for k, c in A.table[j][i]]
    return SuperAlgebra(A.field, A.parity, table, A.unit, recipe=SuperOpposite(A.recipe),
                        labels=A.labels, check=False)


def conjugate_superalgebra(A: SuperAlgebra) -> SuperAlgebra:
    """The conjugate algebra over K = Q(sqrt d): A^s with K acting through conjugation.

    On the basis (bar e_i) the structure constants are those of A^s with
    every scalar conjugated.
    """
    if not isinstance(A.field, QuadraticField):
        raise NotOverQuadraticExtension("conjugate algebra needs a field Q(sqrt d)")
    n = A.dim
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            neg = A.parity[i] and A.parity[j]
            table[i][j] = [(k, -c.conj() if neg else c.conj()) for k, c in A.table[j][i]]
    return SuperAlgebra(A.field, A.parity, table, [c.conj() for c in A.unit], recipe=Conjugate(A.recipe),
                        labels=[f"~{x}" for x in A.labels], check=False)


def build(recipe, F) -> SuperAlgebra:
    """Evaluate a recipe tree over the field F."""
    if isinstance(recipe, QuadraticGraded):
        return quadratic_graded(F, recipe.a)
    if isinstance(recipe, GradedQuaternion):
        return graded_quaternion(F, recipe.a, recipe.b)
    if isinstance(recipe, MatrixSuper):
        inner = None if recipe.inner is None else build(recipe.inner, F)
        return matrix_superalgebra(recipe.n, recipe.m, inner, field=F)
    if isinstance(recipe, GradedTensor):
        T = graded_tensor(build(recipe.left, F), build(recipe.right, F))
        T.validate()
        return T
    if isinstance(recipe, Clifford):
        return clifford(F, recipe.coeffs)
    if isinstance(recipe, SuperOpposite):
        return superopposite(build(recipe.inner, F))
    if isinstance(recipe, Conjugate):
        return conjugate_superalgebra(build(recipe.inner, F))
    if isinstance(recipe, TriviallyGraded):
        return trivially_graded(build(recipe.inner, F))
    raise InvalidAlgebra(f"cannot rebuild recipe {recipe!r}")

"""Graded linear maps on a superalgebra and the checks built on them.

A ``GradedMap`` stores its matrix with column j = image of basis vector j.
A semilinear map conjugates coordinates first, so phi(v) = M * conj(v).
Composition follows (phi o psi)(x) = phi(psi(x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .algebra import Element, SuperAlgebra
from .errors import (
    Degenerate,
    DimMismatch,
    InvalidAlgebra,
    NotAntiautomorphism,
    NotBijective,
    NotHomogeneous,
    NotInner,
    NotInvertible,
)
from .fields import QuadraticField


def _conj_vec(v):
    return [c.conj() for c in v]


@dataclass(frozen=True)
class GradedMap:
    matrix: tuple  # rows; column j is the image of e_j
    parity: int = 0
    semilinear: bool = False

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], parity: int = 0, semilinear: bool = False) -> "GradedMap":
        n = len(cols)
        return cls(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)), parity, semilinear)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def column(self, j: int) -> list:
        return [row[j] for row in self.matrix]

    def columns(self) -> List[list]:
        return [list(c) for c in zip(*self.matrix)]

    def apply(self, v: Sequence) -> list:
        if self.semilinear:
            v = _conj_vec(v)
        zero = v[0] * 0
        out = []
        for row in self.matrix:
            s = zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def __call__(self, x):
        if isinstance(x, Element):
            return Element(x.parent, self.apply(x.coords))
        return self.apply(x)


def identity_map(A: SuperAlgebra) -> GradedMap:
    return GradedMap(tuple(tuple(r) for r in linalg.identity(A.dim, A._zero, A.field.one)))


def compose(phi: GradedMap, psi: GradedMap) -> GradedMap:
    """phi o psi; conjugation from phi hits psi's matrix entries."""
    if phi.dim != psi.dim:
        raise DimMismatch(f"{phi.dim} vs {psi.dim}")
    right = [list(r) for r in psi.matrix]
    if phi.semilinear:
        right = [_conj_vec(r) for r in right]
    zero = phi.matrix[0][0] * 0
    m = linalg.mat_mul(phi.matrix, right, zero)
    return GradedMap(tuple(tuple(r) for r in m), phi.parity ^ psi.parity, phi.semilinear != psi.semilinear)


def square(phi: GradedMap) -> GradedMap:
    return compose(phi, phi)


def is_identity(A: SuperAlgebra, phi: GradedMap) -> bool:
    return not phi.semilinear and phi == identity_map(A)


@dataclass
class AxiomCheck:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self):
        return self.ok


def _check_shape(A: SuperAlgebra, phi: GradedMap) -> Optional[str]:
    if phi.dim != A.dim:
        raise DimMismatch(f"map of size {phi.dim} on an algebra of dimension {A.dim}")
    if phi.semilinear and not isinstance(A.field, QuadraticField):
        return "semilinear map over a field without a conjugation"
    if phi.parity != 0:
        return "map is not even"
    for j in range(A.dim):
        for i, c in enumerate(phi.column(j)):
            if c and A.parity[i] != A.parity[j]:
                return f"image of {A.labels[j]} has a component on {A.labels[i]} of the wrong parity"
    if linalg.rank(phi.columns(), A.dim) != A.dim:
        raise NotBijective("map is singular")
    if phi.apply(list(A.unit)) != list(A.unit):
        return "map does not fix 1"
    return None


def _image_of_product(A, phi, cols, i, j) -> list:
    """phi(e_i e_j) from the sparse table row and the columns of phi."""
    out = A.zero_vec()
    for k, c in A.table[i][j]:
        if phi.semilinear:
            c = c.conj()
        for r, x in enumerate(cols[k]):
            if x:
                out[r] = out[r] + c * x
    return out


def is_superantiautomorphism(A: SuperAlgebra, phi: GradedMap) -> AxiomCheck:
    """phi(xy) = (-1)^{|x||y|} phi(y) phi(x) on all basis pairs, phi(1) = 1."""
    bad = _check_shape(A, phi)
    if bad:
        return AxiomCheck(False, bad)
    cols = phi.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = _image_of_product(A, phi, cols, i, j)
            rhs = A.mul(cols[j], cols[i])
            if A.parity[i] and A.parity[j]:
                rhs = [-c for c in rhs]
            if lhs != rhs:
                return AxiomCheck(False, f"pair ({A.labels[i]}, {A.labels[j]})")
    return AxiomCheck(True)


def is_automorphism(A: SuperAlgebra, phi: GradedMap) -> AxiomCheck:
    bad = _check_shape(A, phi)
    if bad:
        return AxiomCheck(False, bad)
    cols = phi.columns()
    for i in range(A.dim):
        for j in range(A.dim):
            if _image_of_product(A, phi, cols, i, j) != A.mul(cols[i], cols[j]):
                return AxiomCheck(False, f"pair ({A.labels[i]}, {A.labels[j]})")
    return AxiomCheck(True)


def is_superinvolution(A: SuperAlgebra, phi: GradedMap) -> AxiomCheck:
    chk = is_superantiautomorphism(A, phi)
    if not chk:
        return chk
    if not is_identity(A, square(phi)):
        return AxiomCheck(False, "square is not the identity")
    return AxiomCheck(True)


def grading_automorphism(A: SuperAlgebra) -> GradedMap:
    one = A.field.one
    cols = [A.scale(-one if A.parity[j] else one, A.basis(j)) for j in range(A.dim)]
    return GradedMap.from_columns(cols)


def inner_automorphism(A: SuperAlgebra, a: Element) -> GradedMap:
    """iota_a(x) = (-1)^{|a||x|} a x a^{-1}."""
    if not a.is_homogeneous():
        raise NotHomogeneous("inner_automorphism needs a homogeneous element")
    av = list(a.coords)
    inv = A.inverse_vec(av)
    if inv is None:
        raise NotInvertible("element is not invertible")
    pa = a.parity
    cols = []
    for j in range(A.dim):
        y = A.mul(A.mul(av, A.basis(j)), inv)
        if pa and A.parity[j]:
            y = [-c for c in y]
        cols.append(y)
    return GradedMap.from_columns(cols)


def _normalize(v):
    lead = next(c for c in v if c)
    return [c / lead for c in v]


def solve_inner(A: SuperAlgebra, phi: GradedMap) -> Element:
    """Homogeneous invertible a with phi = iota_a (graded Skolem-Noether).

    Solves phi(x) a = (-1)^{|a||x|} a x for a even, then a odd.  The result
    is scaled so that its first nonzero coordinate is 1.  An invertible
    solution gives phi(x) = iota_a(x) on every basis vector, so phi is then
    an automorphism without a separate check.
    """
    if phi.semilinear:
        raise NotInner("semilinear maps are not inner")
    if phi.dim != A.dim:
        raise DimMismatch(f"map of size {phi.dim} on an algebra of dimension {A.dim}")
    cols = phi.columns()
    for p, idx in ((0, A.even), (1, A.odd)):
        if not idx:
            continue
        pos = {i: t for t, i in enumerate(idx)}
        eqs = {}
        for j in range(A.dim):
            s = -1 if p and A.parity[j] else 1
            y = cols[j]
            for t in idx:
                for k, c in enumerate(A._mul_by_basis(y, t)):
                    if c:
                        row = eqs.setdefault((j, k), {})
                        row[pos[t]] = row.get(pos[t], 0) + c
                for k, c in A.table[t][j]:
                    row = eqs.setdefault((j, k), {})
                    row[pos[t]] = row.get(pos[t], 0) - s * c
        null = linalg.nullspace(eqs.values(), len(idx), A._zero, A.field.one)
        cands = [list(v) for v in null]
        if len(null) > 1:
            total = null[0]
            for v in null[1:]:
                total = [x + y for x, y in zip(total, v)]
            cands.append(total)
        for v in cands:
            a = A.zero_vec()
            for t, i in enumerate(idx):
                a[i] = v[t]
            if A.inverse_vec(a) is not None:
                return Element(A, _normalize(a))
    chk = is_automorphism(A, phi)
    if not chk:
        raise NotInner(f"not a graded automorphism: {chk.violation}")
    raise NotInner("no invertible homogeneous solution")


# ---------------------------------------------------------------------------
# matrices over a division algebra


def _dm_mul(D: SuperAlgebra, X, Y):
    k, r, c = len(X), len(Y), len(Y[0])
    out = [[D.zero_vec() for _ in range(c)] for _ in range(k)]
    for i in range(k):
        for t in range(r):
            x = X[i][t]
            if not any(x):
                continue
            for j in range(c):
                y = Y[t][j]
                if any(y):
                    out[i][j] = D.add(out[i][j], D.mul(x, y))
    return out


def _dm_inverse(D: SuperAlgebra, X):
    """Gauss-Jordan over the division algebra D; None if singular."""
    k = len(X)
    M = [[list(X[i][j]) for j in range(k)] + [list(D.unit) if i == j else D.zero_vec() for j in range(k)]
         for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if any(M[r][col])), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = D.inverse_vec(M[col][col])
        if inv is None:
            raise InvalidAlgebra("coefficient algebra is not a division algebra")
        M[col] = [D.mul(inv, e) for e in M[col]]
        for r in range(k):
            if r != col and any(M[r][col]):
                f = M[r][col]
                M[r] = [D.sub(M[r][j], D.mul(f, M[col][j])) for j in range(2 * k)]
    return [row[k:] for row in M]


def scalar_algebra(F) -> SuperAlgebra:
    """F itself as a one-dimensional algebra."""
    return SuperAlgebra(F, [0], [[[(0, F.one)]]], [F.one], labels=["1"])


def standard_involution(D: SuperAlgebra) -> GradedMap:
    """x -> trd(x) - x on a 4-dimensional central simple algebra."""
    half = D.field.one / 2
    cols = []
    for j in range(D.dim):
        tr = sum((c for i in range(D.dim) for k, c in D.table[j][i] if k == i), D._zero)
        cols.append(D.sub(D.scalar(tr * half), D.basis(j)))
    return GradedMap.from_columns(cols)


def field_conjugation(F) -> GradedMap:
    """The nontrivial automorphism of K = Q(sqrt d) on K as a 1-dim algebra."""
    return GradedMap(((F.one,),), 0, True)


@dataclass
class HermitianSuperform:
    """epsilon-hermitian form of degree ell on V = Delta^(n0 + n1).

    Delta must be trivially graded here, so the parity of e_i is 0 for the
    first n0 basis vectors and 1 for the rest, and gram[i][j] = h(e_i, e_j)
    is a coordinate vector in Delta.  h(x, y) = sum x_i gram[i][j] conj(y_j).
    """

    delta: SuperAlgebra
    involution: GradedMap
    dims: Tuple[int, int]
    eps: int
    ell: int
    gram: list

    def __post_init__(self):
        D = self.delta
        if D.odd:
            raise InvalidAlgebra("hermitian superforms are supported over trivially graded Delta")
        k = sum(self.dims)
        if len(self.gram) != k or any(len(r) != k for r in self.gram):
            raise DimMismatch("Gram matrix has the wrong size")
        self.gram = [[list(D.field(c) for c in e) for e in row] for row in self.gram]
        p = self.parities
        for i in range(k):
            for j in range(k):
                g = self.gram[i][j]
                if any(g) and (p[i] + p[j] + self.ell) % 2:
                    raise Degenerate(f"h(e{i + 1}, e{j + 1}) has the wrong degree")
                sign = self.eps * (-1 if p[i] and p[j] else 1)
                if self.gram[j][i] != D.scale(D.field(sign), self.involution.apply(g)):
                    raise Degenerate(f"hermitian symmetry fails at ({i + 1}, {j + 1})")
        self._inv = _dm_inverse(D, self.gram)
        if self._inv is None:
            raise Degenerate("Gram matrix is singular")

    @property
    def size(self) -> int:
        return sum(self.dims)

    @property
    def parities(self) -> List[int]:
        return [0] * self.dims[0] + [1] * self.dims[1]

    def conj(self, d):
        return self.involution.apply(d)

    def value(self, x, y):
        """h(x, y) for module vectors given as lists of Delta coordinates."""
        D = self.delta
        out = D.zero_vec()
        for a in range(self.size):
            if not any(x[a]):
                continue
            for b in range(self.size):
                if any(y[b]) and any(self.gram[a][b]):
                    out = D.add(out, D.mul(D.mul(x[a], self.gram[a][b]), self.conj(y[b])))
        return out

    def vector_parity(self, v) -> int:
        ps = {self.parities[i] for i in range(self.size) if any(v[i])}
        if len(ps) > 1:
            raise NotHomogeneous("module vector is not homogeneous")
        return ps.pop() if ps else 0


def endomorphism_algebra(D: SuperAlgebra, n0: int, n1: int) -> SuperAlgebra:
    """End_D(V) for V = D^(n0+n1) acting on the right: k x k matrices over D.

    Basis index (i*k + j)*dim D + t is the map e_i -> d_t e_j, of parity
    p_i + p_j.  With D trivially graded this is the same table as
    matrix_superalgebra(n0, n1, D).
    """
    from .constructors import MatrixSuper, matrix_superalgebra

    if D.dim == 1:
        return matrix_superalgebra(n0, n1, field=D.field)
    A = matrix_superalgebra(n0, n1, D)
    A.recipe = MatrixSuper(n0, n1, D.recipe)
    return A


def end_to_matrix(D: SuperAlgebra, k: int, coords) -> list:
    dd = D.dim
    return [[list(coords[(i * k + j) * dd:(i * k + j + 1) * dd]) for j in range(k)] for i in range(k)]


def matrix_to_end(D: SuperAlgebra, f) -> list:
    return [c for row in f for e in row for c in e]


def rank_one_map(h: HermitianSuperform, v, w) -> list:
    """The endomorphism a -> h(a, v) w as a matrix over Delta (right action)."""
    D = h.delta
    k = h.size
    out = []
    for a in range(k):
        ea = [list(D.unit) if t == a else D.zero_vec() for t in range(k)]
        c = h.value(ea, v)
        out.append([D.mul(c, w[l]) for l in range(k)])
    return out


def adjoint_matrix(h: HermitianSuperform, f, parity: int) -> list:
    """f* with h(x f, y) = (-1)^{|f||x|} h(x, y f*), for homogeneous f.

    f* = conj((G^{-1} S f G)^T) entrywise, S = diag((-1)^{|f| p_a}).
    """
    D = h.delta
    k = h.size
    p = h.parities
    sf = [[D.scale(D.field(-1), f[a][b]) if parity and p[a] else list(f[a][b]) for b in range(k)]
          for a in range(k)]
    m = _dm_mul(D, _dm_mul(D, h._inv, sf), h.gram)
    return [[h.conj(m[l][b]) for l in range(k)] for b in range(k)]


def adjoint_superinvolution(h: HermitianSuperform):
    """(End_Delta(V), *) with * adjoint to h; checked to be a superinvolution."""
    D = h.delta
    k = h.size
    E = endomorphism_algebra(D, *h.dims)
    cols = []
    for idx in range(E.dim):
        f = end_to_matrix(D, k, E.basis(idx))
        cols.append(matrix_to_end(D, adjoint_matrix(h, f, E.parity[idx])))
    star = GradedMap.from_columns(cols, 0, h.involution.semilinear)
    chk = is_superinvolution(E, star)
    if not chk:
        raise NotAntiautomorphism(f"adjoint map fails: {chk.violation}")
    return E, star


def _block_forms(F, n: int, m: int):
    """(eps, ell, Gram) for a form on F^(n+m) whose adjoint exists, or None."""
    one, zero = F.one, F.zero
    k = n + m
    G = [[[zero] for _ in range(k)] for _ in range(k)]
    if n == m and n:
        for i in range(n):
            G[i][n + i] = [one]
            G[n + i][i] = [one]
        return 1, 1, G
    if m % 2 == 0:
        eps, sym, alt = 1, range(n), range(n, k)
    elif n % 2 == 0:
        eps, sym, alt = -1, range(n, k), range(n)
    else:
        return None
    for i in sym:
        G[i][i] = [one]
    alt = list(alt)
    for t in range(0, len(alt), 2):
        i, j = alt[t], alt[t + 1]
        G[i][j] = [one]
        G[j][i] = [-one]
    return eps, 0, G


def split_form(F, n: int, m: int) -> Optional[HermitianSuperform]:
    """A nondegenerate superform on F^(n+m) (exists iff n = m or nm even)."""
    data = _block_forms(F, n, m)
    if data is None:
        return None
    eps, ell, G = data
    D = scalar_algebra(F)
    return HermitianSuperform(D, identity_map(D), (n, m), eps, ell, G)


def tensor_map(phi: GradedMap, psi: GradedMap) -> GradedMap:
    """phi (x) psi on the graded_tensor basis (index i*dim(psi) + j).

    No Koszul sign is needed: for even superantiautomorphisms the sign
    rules of the two factors combine to the sign rule of the product.
    """
    if phi.semilinear != psi.semilinear:
        raise DimMismatch("cannot tensor a linear map with a semilinear one")
    pc, qc = phi.columns(), psi.columns()
    cols = []
    for x in pc:
        for y in qc:
            cols.append([a * b for a in x for b in y])
    return GradedMap.from_columns(cols, phi.parity ^ psi.parity, phi.semilinear)


def restrict(phi: GradedMap, idx: Sequence[int]) -> GradedMap:
    """phi on the span of the basis vectors idx (assumed invariant)."""
    return GradedMap(tuple(tuple(phi.matrix[i][j] for j in idx) for i in idx), phi.parity, phi.semilinear)

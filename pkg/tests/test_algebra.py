import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from catalog import suite_css
from oracles import graded_simple_brute
from superalg.algebra import (
    SuperAlgebra,
    Element,
    basis_element,
    center,
    center_even,
    classify_css,
    even_split_idempotents,
    find_idempotent_for_minimal_ideal,
    graded_center,
    invert_homogeneous,
    is_division_superalgebra,
    is_graded_simple,
    odd_decompose,
    unit,
)
from superalg.constructors import (
    graded_quaternion,
    graded_tensor,
    matrix_superalgebra,
    quadratic_graded,
    trivially_graded,
)
from superalg.errors import InvalidAlgebra, NotCSS, NotMinimal, NotOddType, NotSplitEven
from superalg.fields import QQ, PrimeField


def span_contains(vectors, v):
    M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in w] for w in vectors])
    N = M.col_join(sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in v]]))
    return M.rank() == N.rank()


def from_rule(field, parity, rule, unit_index=0):
    """Algebra whose basis products are given by rule(i, j) -> {k: c}."""
    n = len(parity)
    table = [[list(rule(i, j).items()) for j in range(n)] for i in range(n)]
    u = [0] * n
    u[unit_index] = 1
    return SuperAlgebra(field, parity, table, u)


def direct_sum(A, B):
    n = A.dim

    def rule(i, j):
        if i < n and j < n:
            return dict(A.table[i][j])
        if i >= n and j >= n:
            return {k + n: c for k, c in B.table[i - n][j - n]}
        return {}

    table = [[list(rule(i, j).items()) for j in range(n + B.dim)] for i in range(n + B.dim)]
    return SuperAlgebra(A.field, A.parity + B.parity, table, list(A.unit) + list(B.unit))


def E(A, k, i, j):
    return basis_element(A, i * k + j)


# ---------------------------------------------------------------------------
# elements


def test_products_and_inverses():
    Q2 = quadratic_graded(QQ, 2)
    u = basis_element(Q2, 1)
    assert u * u == 2 * unit(Q2)
    assert invert_homogeneous(u) == u / 2
    H = graded_quaternion(QQ, -1, -1)
    uv = basis_element(H, 3)
    assert uv * uv == -unit(H)
    M = matrix_superalgebra(1, 1, field=QQ)
    assert invert_homogeneous(E(M, 2, 0, 0)) is None
    x = E(M, 2, 0, 1) + E(M, 2, 1, 0)
    assert invert_homogeneous(x) == x


# ---------------------------------------------------------------------------
# centers


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2)])
def test_matrix_centers(n, m):
    A = matrix_superalgebra(n, m, field=QQ)
    k = n + m
    one = list(unit(A).coords)
    Z = center(A)
    assert len(Z) == 1 and span_contains([z.coords for z in Z], one)
    assert len(graded_center(A)) == 1
    Z0 = center_even(A)
    sign = sum((E(A, k, i, i) * (1 if i < n else -1) for i in range(k)), Element(A, A.zero_vec()))
    assert len(Z0) == 2
    assert span_contains([z.coords for z in Z0], one)
    assert span_contains([z.coords for z in Z0], sign.coords)


def test_quaternion_even_center():
    H = graded_quaternion(QQ, -1, -1)
    Z0 = [z.coords for z in center_even(H)]
    assert len(Z0) == 2 and span_contains(Z0, basis_element(H, 3).coords)
    # odd-type algebras are commutative but have a one-dimensional supercenter
    Q2 = quadratic_graded(QQ, 2)
    assert len(center(Q2)) == 2 and len(graded_center(Q2)) == 1


@pytest.mark.parametrize("name", sorted(suite_css()))
def test_graded_center_supercommutes(name):
    A = suite_css()[name]
    for z in graded_center(A):
        for i in range(A.dim):
            b = basis_element(A, i)
            for par in (0, 1):
                zp = Element(A, [c if A.parity[k] == par else 0 for k, c in enumerate(z.coords)])
                sign = -1 if par and A.parity[i] else 1
                assert zp * b == sign * (b * zp)


# ---------------------------------------------------------------------------
# simplicity and division


def test_division_examples():
    assert is_division_superalgebra(quadratic_graded(QQ, 2))
    assert is_division_superalgebra(graded_quaternion(QQ, -1, -1))
    assert not is_division_superalgebra(matrix_superalgebra(1, 1, field=QQ))
    assert not is_division_superalgebra(matrix_superalgebra(2, 0, field=QQ))


def test_graded_simple_examples():
    assert is_graded_simple(matrix_superalgebra(2, 1, field=QQ))
    # Q<sqrt 1> is graded simple although the ungraded Q x Q is not simple
    assert is_graded_simple(quadratic_graded(QQ, 1))
    assert not is_graded_simple(trivially_graded(quadratic_graded(QQ, 1)))
    M2 = trivially_graded(matrix_superalgebra(2, 0, field=QQ))
    assert not is_graded_simple(direct_sum(M2, M2))
    with pytest.raises(NotCSS):
        classify_css(direct_sum(M2, M2))


def _gf_zoo(p):
    F = PrimeField(p)
    zoo = {
        "M1+1": matrix_superalgebra(1, 1, field=F),
        "M2": trivially_graded(matrix_superalgebra(2, 0, field=F)),
        "F x F": direct_sum(matrix_superalgebra(1, 0, field=F), matrix_superalgebra(1, 0, field=F)),
        # dual numbers, with the nilpotent even or odd
        "F[e]/e^2": from_rule(F, [0, 0], lambda i, j: {i + j: 1} if i + j < 2 else {}),
        "F[u]/u^2": from_rule(F, [0, 1], lambda i, j: {i + j: 1} if i + j < 2 else {}),
        # upper triangular 2x2, basis E11, E12, E22, unit E11 + E22
        "T2": SuperAlgebra(F, [0, 0, 0],
                           [[[(0, 1)], [(1, 1)], []], [[], [], [(1, 1)]], [[], [], [(2, 1)]]], [1, 0, 1]),
        "M1+1 + F": direct_sum(matrix_superalgebra(1, 1, field=F), matrix_superalgebra(1, 0, field=F)),
    }
    for a in range(1, p):
        zoo[f"quad({a})"] = quadratic_graded(F, a)
        zoo[f"tg quad({a})"] = trivially_graded(quadratic_graded(F, a))
        zoo[f"gq({a},1)"] = graded_quaternion(F, a, 1)
    return zoo


@pytest.mark.parametrize("p", [5, 7])
def test_graded_simple_matches_ideal_spinning(p):
    for name, A in _gf_zoo(p).items():
        if A.dim >= p:
            continue
        assert is_graded_simple(A) == graded_simple_brute(A), name


def test_division_matches_enumeration_gf5():
    F = PrimeField(5)
    for a in range(1, 5):
        for b in range(1, 5):
            A = graded_quaternion(F, a, b)
            brute = all(
                A.inverse_vec(v) is not None
                for v in _homogeneous_vectors(A)
            )
            assert is_division_superalgebra(A) == brute, (a, b)


def _homogeneous_vectors(A):
    p = A.field.p
    for par in (0, 1):
        idx = [i for i in range(A.dim) if A.parity[i] == par]
        for k in range(1, p ** len(idx)):
            v = [A.field(0)] * A.dim
            for t, i in enumerate(idx):
                v[i] = A.field(k // p ** t % p)
            yield v


# ---------------------------------------------------------------------------
# idempotents


def test_idempotent_examples():
    M = matrix_superalgebra(1, 1, field=QQ)
    assert find_idempotent_for_minimal_ideal(M, E(M, 2, 0, 0)) == E(M, 2, 0, 0)
    # E12 A = span{E11, E12} = E11 A
    assert find_idempotent_for_minimal_ideal(M, E(M, 2, 0, 1)) == E(M, 2, 0, 0)
    M2 = trivially_graded(matrix_superalgebra(2, 0, field=QQ))
    x = E(M2, 2, 0, 1)
    e = find_idempotent_for_minimal_ideal(M2, x)
    assert e * e == e
    xA = [(x * basis_element(M2, j)).coords for j in range(4)]
    eA = [(e * basis_element(M2, j)).coords for j in range(4)]
    assert all(span_contains(xA, v) for v in eA) and all(span_contains(eA, v) for v in xA)
    with pytest.raises(NotMinimal):
        find_idempotent_for_minimal_ideal(M, E(M, 2, 0, 0) + E(M, 2, 0, 1))


@settings(max_examples=30)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3), st.integers(-3, 3))
def test_idempotent_of_matrix_unit_row(i, j, s, t):
    # x = E_ij + s E_ik generates the row ideal E_i. A in M_{2+1}
    A = matrix_superalgebra(2, 1, field=QQ)
    k = (j + 1) % 3
    if A.parity[i * 3 + j] != A.parity[i * 3 + k]:
        s = 0
    x = E(A, 3, i, j) + s * E(A, 3, i, k)
    e = find_idempotent_for_minimal_ideal(A, x)
    assert e * e == e and e.parity == 0
    assert e * x == x


# ---------------------------------------------------------------------------
# classification


def test_classify_examples():
    rep = classify_css(matrix_superalgebra(2, 1, field=QQ))
    A = matrix_superalgebra(2, 1, field=QQ)
    assert rep.type == "even" and rep.a == 1 and rep.split
    assert rep.z.coords == (E(A, 3, 0, 0) + E(A, 3, 1, 1) - E(A, 3, 2, 2)).coords
    H = graded_quaternion(QQ, -1, -1)
    rep = classify_css(H)
    assert rep.type == "even" and rep.a == -1 and not rep.split
    assert rep.z == basis_element(H, 3)
    rep = classify_css(quadratic_graded(QQ, 3))
    assert rep.type == "odd" and rep.a == 3
    rep = classify_css(trivially_graded(matrix_superalgebra(2, 0, field=QQ)))
    assert rep.type == "trivial"


@pytest.mark.parametrize("name", sorted(suite_css()))
def test_classification_invariants(name):
    A = suite_css()[name]
    rep = classify_css(A)
    if rep.type == "trivial":
        assert not A.odd
        return
    z = rep.z
    assert z.is_homogeneous() and z * z == rep.a * unit(A)
    for i in range(A.dim):
        b = basis_element(A, i)
        if rep.type == "even":
            assert z.parity == 0
            assert z * b == (-1 if A.parity[i] else 1) * (b * z)
        else:
            assert z.parity == 1 and z * b == b * z


def test_odd_decompose():
    A = graded_tensor(trivially_graded(matrix_superalgebra(2, 0, field=QQ)), quadratic_graded(QQ, 5))
    D = odd_decompose(A)
    assert D.quadratic.dim == 2 and D.a0.dim == 4 and D.tensor.dim == A.dim
    # from_tensor is multiplicative and inverse to to_tensor
    for p in range(D.tensor.dim):
        back = _apply(A, D.from_tensor, _apply(D.tensor, D.to_tensor, A.basis(p)))
        assert back == A.basis(p)
    with pytest.raises(NotOddType):
        odd_decompose(trivially_graded(matrix_superalgebra(2, 0, field=QQ)))
    with pytest.raises(NotOddType):
        odd_decompose(graded_quaternion(QQ, -1, -1))


def _apply(A, cols, v):
    out = A.zero_vec()
    for c, col in zip(v, cols):
        if c:
            out = A.add(out, A.scale(c, col))
    return out


def test_even_split_idempotents():
    A = matrix_superalgebra(2, 1, field=QQ)
    S = even_split_idempotents(A)
    assert S.dims == (4, 1)
    assert S.e_plus * S.e_plus == S.e_plus and S.e_plus * S.e_minus == Element(A, A.zero_vec())
    assert S.e_plus + S.e_minus == unit(A)
    assert even_split_idempotents(matrix_superalgebra(1, 1, field=QQ)).dims == (1, 1)
    with pytest.raises(NotSplitEven):
        even_split_idempotents(graded_quaternion(QQ, -1, -1))
    with pytest.raises(NotSplitEven):
        even_split_idempotents(quadratic_graded(QQ, 2))


# ---------------------------------------------------------------------------
# validation


def test_corrupted_tables_are_rejected():
    rng = random.Random(7)
    sources = [matrix_superalgebra(1, 1, field=QQ), graded_quaternion(QQ, -1, 3),
               matrix_superalgebra(2, 1, field=QQ)]
    # F<sqrt a> is left out: changing u^2 there just gives another valid algebra
    for trial in range(100):
        A = rng.choice(sources)
        C = [[list(cell) for cell in row] for row in A.structure_constants]
        i, j, k = (rng.randrange(A.dim) for _ in range(3))
        C[i][j][k] += Fraction(rng.choice([1, -1, 2, Fraction(1, 2)]))
        with pytest.raises(InvalidAlgebra):
            SuperAlgebra.from_constants(QQ, A.parity, C, A.unit)


def test_validation_catches_grading_and_unit():
    with pytest.raises(InvalidAlgebra):
        from_rule(QQ, [0, 1], lambda i, j: {0: 1} if i == j == 1 else ({1: 1} if i + j == 1 else {0: 1}), unit_index=1)
    with pytest.raises(InvalidAlgebra):
        from_rule(QQ, [0, 1], lambda i, j: {1: 1} if i == j == 1 else ({i + j: 1}))

import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import rational_is_square
from superalg.algebra import basis_element, classify_css, unit
from superalg.constructors import (
    conjugate_superalgebra,
    graded_tensor,
    matrix_superalgebra,
    quadratic_graded,
    trivially_graded,
)
from superalg.errors import InvalidField, NotOddType, NotOverQuadraticExtension, NotSemilinearAntiauto, ZeroParameter
from superalg.fields import QQ, QuadraticField
from superalg.firstkind import Verdict
from superalg.maps import GradedMap, grading_automorphism, is_superantiautomorphism, is_superinvolution, square
from superalg.secondkind import (
    QuadExtensionContext,
    build_corestriction,
    centralizer_basis,
    corestriction_module_action,
    decide_superinvolution_second_kind,
    f_map_matrix,
    matrices_span,
    nu_square_second_kind_obstruction,
    odd_type_second_kind,
    quadratic_cor_spanning_set,
    quadratic_second_kind,
    starter_semilinear,
    xi_square_class,
)

QI = QuadraticField(-1)
Q2 = QuadraticField(2)
I = QI.gen
CTX_I = QuadExtensionContext(-1)


def bar_map(A):
    return GradedMap.from_columns([A.basis(j) for j in range(A.dim)], 0, True)


def test_context():
    assert QuadExtensionContext(-1).K == QI
    for t in (0, 1, 4, -12):
        with pytest.raises(InvalidField):
            QuadExtensionContext(t)
    with pytest.raises(NotOverQuadraticExtension):
        build_corestriction(quadratic_graded(QQ, 2))


def test_conjugate_of_quadratic():
    A = quadratic_graded(QI, I)
    Abar = conjugate_superalgebra(A)
    u = basis_element(Abar, 1)
    # u o u = -conj(i) = i
    assert u * u == I * unit(Abar)


# ---------------------------------------------------------------------------
# corestriction


@pytest.mark.parametrize("A", [
    quadratic_graded(QI, I),
    quadratic_graded(QI, QI(2)),
    quadratic_graded(QI, 1 + I),
    quadratic_graded(Q2, 1 + Q2.gen),
    matrix_superalgebra(1, 1, field=QI),
    trivially_graded(matrix_superalgebra(2, 0, field=QI)),
], ids=["i", "2", "1+i", "1+sqrt2", "M1+1", "M2"])
def test_corestriction_shape(A):
    cr = build_corestriction(A)
    assert cr.cor.dim == A.dim ** 2
    assert cr.pi_multiplicative
    # pi is an involution
    P = cr.pi
    N = len(P)
    assert all(sum(P[i][k] * P[k][j] for k in range(N)) == (1 if i == j else 0) for i in range(N) for j in range(N))
    rep = classify_css(cr.cor)
    assert rep.type in ("even", "trivial")


@pytest.mark.parametrize("mu", [I, QI(2), 1 + I, QI(3) - 2 * I])
def test_quadratic_spanning_set(mu):
    A = quadratic_graded(QI, mu)
    cr = build_corestriction(A)
    span = quadratic_cor_spanning_set(A)
    assert all(cr.in_cor(v) for v in span)
    x = span[1]
    N = (I * mu).norm()
    assert cr.T.mul(x, x) == cr.T.scale(QI(N), list(cr.T.unit))


def _random_cor_element(rng, cr):
    v = cr.T.zero_vec()
    for b in cr.basis:
        v = cr.T.add(v, cr.T.scale(QI(rng.randint(-2, 2)), b))
    return v


def test_module_action():
    A = quadratic_graded(QI, 3 * I)
    xi = starter_semilinear(A)
    cr = build_corestriction(A)
    x = basis_element(A, 0) * (2 + I) + basis_element(A, 1) * 3
    assert corestriction_module_action(A, xi, x, cr.T.unit) == list(x.coords)
    rng = random.Random(5)
    for _ in range(50):
        s, s2 = _random_cor_element(rng, cr), _random_cor_element(rng, cr)
        par = rng.randint(0, 1)
        y = A.scale(QI(rng.randint(-3, 3)) + QI(rng.randint(-3, 3)) * I, A.basis(par))
        left = corestriction_module_action(A, xi, corestriction_module_action(A, xi, y, s), s2)
        assert left == corestriction_module_action(A, xi, y, cr.T.mul(s, s2))


@pytest.mark.parametrize("mu", [I, 3 * I, QI(-2) * I])
def test_f_map_centralizes_the_action(mu):
    A = quadratic_graded(QI, mu)
    xi = starter_semilinear(A)
    cr = build_corestriction(A)
    b = list(xi_square_class(A, xi).b)
    C = centralizer_basis(A, xi, cr)
    assert len(C) == 4
    assert matrices_span(C, f_map_matrix(A, xi, b))


# ---------------------------------------------------------------------------
# xi^2 = iota_b


def test_no_starter_without_square():
    # -conj(1 + i)/(1 + i) = i is not a square in Q(i)
    assert starter_semilinear(quadratic_graded(QI, 1 + I)) is None


def test_xi_square_class_of_superinvolution():
    A = quadratic_graded(QI, I)
    cls = xi_square_class(A, bar_map(A))
    assert cls.b_parity == 0 and cls.c == 1 and cls.split
    assert cls.b == list(unit(A).coords)
    with pytest.raises(NotSemilinearAntiauto):
        xi_square_class(A, GradedMap(bar_map(A).matrix, 0, False))


def test_odd_b_example():
    # K = Q(sqrt 2), mu = 1 + sqrt 2: xi(u) = (1 - sqrt 2) u has xi^2 = nu = iota_u
    A = quadratic_graded(Q2, 1 + Q2.gen)
    xi = starter_semilinear(A)
    assert xi.column(1)[1] in (1 - Q2.gen, Q2.gen - 1)
    assert square(xi) == grading_automorphism(A)
    cls = xi_square_class(A, xi)
    assert cls.b_parity == 1 and cls.division_flag and cls.c == -1
    cert = decide_superinvolution_second_kind(A)
    assert cert.verdict is Verdict.NOT_EXISTS and cert.reason_tag == "le:xisquare(ii)"
    assert quadratic_second_kind(1 + Q2.gen, QuadExtensionContext(2)).verdict is Verdict.NOT_EXISTS
    # the centralizer of the cor-action contains f(x) = (-1)^{|x|} xi(x) u, which squares to c
    cr = build_corestriction(A)
    C = centralizer_basis(A, xi, cr)
    assert len(C) == 4 and matrices_span(C, f_map_matrix(A, xi, cls.b))


# ---------------------------------------------------------------------------
# decisions


@pytest.mark.parametrize("A", [
    quadratic_graded(QI, I),
    matrix_superalgebra(1, 1, field=QI),
    matrix_superalgebra(2, 1, field=QI),
    trivially_graded(matrix_superalgebra(2, 0, field=QI)),
    graded_tensor(quadratic_graded(QI, I), quadratic_graded(QI, 3 * I)),
], ids=["K<sqrt i>", "M1+1", "M2+1", "M2", "K<sqrt i>*K<sqrt 3i>"])
def test_second_kind_exists(A):
    cert = decide_superinvolution_second_kind(A)
    assert cert.exists and cert.witness.semilinear
    assert is_superinvolution(A, cert.witness)


def test_second_kind_witness_on_k_sqrt_i_is_conjugation():
    A = quadratic_graded(QI, I)
    assert decide_superinvolution_second_kind(A).witness == bar_map(A)


def test_quadratic_second_kind_examples():
    for mu in (I, QI(1), QI(3)):
        cert = quadratic_second_kind(mu, CTX_I)
        A = quadratic_graded(QI, mu)
        assert cert.exists and is_superinvolution(A, cert.witness)
        alpha = cert.extra["alpha"]
        g = alpha * alpha * mu
        assert g.x == 0 and g.y != 0  # alpha^2 mu in Q^x i
    assert quadratic_second_kind(I, CTX_I).extra["alpha"] == 1
    assert quadratic_second_kind(QI(2) + I, CTX_I).verdict is Verdict.NOT_EXISTS
    with pytest.raises(ZeroParameter):
        quadratic_second_kind(QI(0), CTX_I)


@settings(max_examples=50)
@given(st.sampled_from([-1, 2, -3]), st.integers(-9, 9), st.integers(-9, 9))
def test_decision_agrees_with_quadratic_criterion(t, x, y):
    ctx = QuadExtensionContext(t)
    K = ctx.K
    mu = K(x) + K(y) * K.gen
    assume(mu)
    expected = rational_is_square((K.gen * mu).norm())
    q = quadratic_second_kind(mu, ctx)
    d = decide_superinvolution_second_kind(quadratic_graded(K, mu), ctx)
    assert q.exists == expected
    assert d.exists == expected
    assert d.verdict in (Verdict.EXISTS, Verdict.NOT_EXISTS)
    if d.exists:
        assert is_superinvolution(quadratic_graded(K, mu), d.witness)


def test_odd_type_second_kind():
    M2 = trivially_graded(matrix_superalgebra(2, 0, field=QI))
    for mu in (I, QI(2)):
        A = graded_tensor(M2, quadratic_graded(QI, mu))
        cert = odd_type_second_kind(A)
        assert cert.exists and is_superinvolution(A, cert.witness)
    A = graded_tensor(M2, quadratic_graded(QI, 2 + I))
    assert odd_type_second_kind(A).verdict is Verdict.NOT_EXISTS
    assert odd_type_second_kind(quadratic_graded(QI, 2 + I)).verdict is Verdict.NOT_EXISTS
    with pytest.raises(NotOddType):
        odd_type_second_kind(matrix_superalgebra(1, 1, field=QI))


def test_nu_square_examples():
    cert = nu_square_second_kind_obstruction(quadratic_graded(QI, I))
    assert cert.verdict is Verdict.NOT_EXISTS and cert.reason_tag == "nu:normequation"
    A = matrix_superalgebra(1, 1, field=QI)
    cert = nu_square_second_kind_obstruction(A)
    assert cert.exists and cert.witness.semilinear
    assert square(cert.witness) == grading_automorphism(A) and is_superantiautomorphism(A, cert.witness)


def test_nu_square_over_q_sqrt2():
    # over Q(sqrt 2) the norm equation l conj(l) = -1 is solvable (1 + sqrt 2)
    K = Q2
    A = quadratic_graded(K, K.gen)
    cert = nu_square_second_kind_obstruction(A)
    # -N(sqrt 2) = 2 is not a square, so phi(u) = lam u cannot square to nu
    assert cert.verdict is Verdict.NOT_EXISTS
    A = quadratic_graded(K, 1 + K.gen)
    cert = nu_square_second_kind_obstruction(A)
    assert cert.exists and square(cert.witness) == grading_automorphism(A)

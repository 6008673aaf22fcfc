import random

import pytest

from catalog import QI, suite_css
from superalg.algebra import Element, basis_element, classify_css
from superalg.constructors import (
    graded_quaternion,
    graded_tensor,
    matrix_superalgebra,
    quadratic_graded,
    trivially_graded,
)
from superalg.errors import NoSuperantiautomorphism, NotAntiautomorphism, NotEvenCSS
from superalg.fields import QQ, PrimeField
from superalg.firstkind import (
    REASON_TAGS,
    SquareClass,
    Verdict,
    check_z_square_corollary,
    clifford_first_kind,
    decide_superantiautomorphism,
    decide_superinvolution_first_kind,
    normalize_to_grading,
    starter_superanti,
    superanti_square_invariant,
    swap_superinvolution,
    transpose_superanti,
)
from superalg.maps import (
    GradedMap,
    compose,
    grading_automorphism,
    inner_automorphism,
    is_superantiautomorphism,
    is_superinvolution,
    square,
)

SUITE = suite_css()


def test_first_kind_examples():
    c = decide_superinvolution_first_kind(matrix_superalgebra(1, 3, field=QQ))
    assert c.verdict is Verdict.NOT_EXISTS and c.reason_tag == "splitsuper"
    c = decide_superinvolution_first_kind(graded_quaternion(QQ, -1, -1))
    assert c.verdict is Verdict.NOT_EXISTS and c.reason_tag == "lemmaquatinv"
    A = matrix_superalgebra(1, 1, field=QQ)
    c = decide_superinvolution_first_kind(A)
    assert c.exists and is_superinvolution(A, c.witness)
    c = decide_superinvolution_first_kind(quadratic_graded(QQ, 2))
    assert c.verdict is Verdict.NOT_EXISTS and c.reason_tag == "th:oddfirstkind"


def test_superanti_examples():
    assert decide_superantiautomorphism(quadratic_graded(QQ, 2)).verdict is Verdict.NOT_EXISTS
    F = PrimeField(5)
    A = quadratic_graded(F, 2)
    c = decide_superantiautomorphism(A)
    assert c.exists and is_superantiautomorphism(A, c.witness)
    s = c.witness.column(1)[1]
    assert s * s == F(-1)
    assert decide_superantiautomorphism(matrix_superalgebra(1, 1, field=QQ)).exists


@pytest.mark.parametrize("name", sorted(SUITE))
def test_certificates_are_sound_and_exclusive(name):
    A = SUITE[name]
    inv = decide_superinvolution_first_kind(A)
    anti = decide_superantiautomorphism(A)
    for cert in (inv, anti):
        assert cert.reason_tag in REASON_TAGS
        assert cert.verification_trace
        if cert.verdict is Verdict.NOT_EXISTS:
            assert cert.witness is None
    if inv.exists:
        assert is_superinvolution(A, inv.witness)
        assert anti.verdict is not Verdict.NOT_EXISTS
    if anti.exists and anti.witness is not None:
        assert is_superantiautomorphism(A, anti.witness)


def test_square_class():
    assert SquareClass(QQ(8)) == SquareClass(QQ(2))
    assert SquareClass(QQ(2)) != SquareClass(QQ(3))
    assert SquareClass(QQ(9)).is_trivial and not SquareClass(QQ(-1)).is_trivial


def test_invariant_examples():
    A = matrix_superalgebra(1, 1, field=QQ)
    assert superanti_square_invariant(A, swap_superinvolution(1, QQ)).is_trivial
    # phi^2 = nu = iota_z with z = diag(1, -1), and z phi(z) = 1
    assert superanti_square_invariant(A, transpose_superanti(1, 1, QQ)).is_trivial
    with pytest.raises(NotEvenCSS):
        Q = quadratic_graded(QI, QI.gen)
        superanti_square_invariant(Q, starter_superanti(Q))


def test_invariant_is_independent_of_twist():
    A = matrix_superalgebra(2, 1, field=QQ)
    eta = transpose_superanti(2, 1, QQ)
    base = superanti_square_invariant(A, eta)
    rng = random.Random(11)
    done = 0
    while done < 20:
        parity = rng.randint(0, 1)
        v = A.zero_vec()
        for i in (A.even if parity == 0 else A.odd):
            v[i] = QQ(rng.randint(-3, 3))
        if A.inverse_vec(v) is None:
            continue
        twisted = compose(inner_automorphism(A, Element(A, v)), eta)
        assert superanti_square_invariant(A, twisted) == base
        done += 1


@pytest.mark.parametrize("a,b", [(-1, 2), (2, -1), (-1, 5), (2, -2), (3, -3), (5, -2)])
def test_z_square_corollary_on_quaternions(a, b):
    A = graded_quaternion(QQ, a, b)
    eta = decide_superantiautomorphism(A).witness
    assert eta is not None
    assert check_z_square_corollary(A, eta)
    assert superanti_square_invariant(A, eta) == SquareClass(QQ(-a * b))


def test_z_square_corollary_split():
    A = matrix_superalgebra(1, 1, field=QQ)
    assert check_z_square_corollary(A, transpose_superanti(1, 1, QQ))


def test_corollary_rejects_perturbed_map():
    A = matrix_superalgebra(1, 1, field=QQ)
    cols = transpose_superanti(1, 1, QQ).columns()
    cols[1] = [2 * c for c in cols[1]]
    bad = GradedMap.from_columns(cols)
    with pytest.raises(NotAntiautomorphism):
        check_z_square_corollary(A, bad)
    with pytest.raises(NotAntiautomorphism):
        normalize_to_grading(A, bad)
    with pytest.raises(NoSuperantiautomorphism):
        normalize_to_grading(A, None)


def test_normalize_examples():
    A = matrix_superalgebra(2, 3, field=QQ)
    cert = normalize_to_grading(A, transpose_superanti(2, 3, QQ))
    assert cert.exists and square(cert.witness) == grading_automorphism(A)
    A = matrix_superalgebra(1, 1, field=QQ)
    cert = normalize_to_grading(A, swap_superinvolution(1, QQ))
    assert cert.exists and square(cert.witness) == grading_automorphism(A)
    A = graded_tensor(trivially_graded(matrix_superalgebra(2, 0, field=QI)), quadratic_graded(QI, 5))
    cert = normalize_to_grading(A, starter_superanti(A))
    assert cert.exists and square(cert.witness) == grading_automorphism(A)
    assert is_superantiautomorphism(A, cert.witness)


@pytest.mark.parametrize("a,b", [(-1, 2), (2, -2), (5, -1)])
def test_normalize_division_route(a, b):
    A = graded_quaternion(QQ, a, b)
    eta = decide_superantiautomorphism(A).witness
    # start from a twisted map so that every step of the procedure has work to do
    twisted = compose(inner_automorphism(A, basis_element(A, 1) + 2 * basis_element(A, 2)), eta)
    cert = normalize_to_grading(A, twisted)
    assert cert.exists and cert.reason_tag == ("albertgraded" if classify_css(A).split else "albertgradeddiv")
    assert square(cert.witness) == grading_automorphism(A)


def test_clifford_corollary_examples():
    c = clifford_first_kind([1])
    assert c.verdict is Verdict.NOT_EXISTS and c.reason_tag == "clifford(i)"
    c = clifford_first_kind([1, 1])
    assert c.verdict is Verdict.NOT_EXISTS and c.reason_tag == "clifford(ii)"
    c = clifford_first_kind([1, -1])
    assert c.exists and c.reason_tag == "clifford(iii)"

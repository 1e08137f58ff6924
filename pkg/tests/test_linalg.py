import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from acvlab.errors import NonSplitSpectrum, NotSquare
from acvlab.linalg import (
    ExactMatrix,
    UniPolynomial,
    char_poly,
    is_semisimple,
    minimal_poly,
    nullspace,
    poly_gcd,
    rank,
    rational_eigensystem,
    rational_roots,
    solve_affine,
)

from .conftest import low_rank_matrices, matrices


def to_sympy(m):
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(e.numerator, e.denominator) for e in m.entries])


def M(rows):
    return ExactMatrix.from_rows(rows)


# rank ----------------------------------------------------------------------


def test_rank_examples():
    assert rank(ExactMatrix.identity(4)) == 4
    assert rank(ExactMatrix.zeros(3, 5)) == 0
    # det [[1,2],[2,4]] = 0 and the matrix is nonzero
    assert rank(M([[1, 2], [2, 4]])) == 1


@given(low_rank_matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices(max_rows=6, max_cols=6))
def test_rank_matches_sympy_fractions(m):
    assert rank(m) == to_sympy(m).rank()


# nullspace -----------------------------------------------------------------


def test_nullspace_examples():
    assert nullspace(ExactMatrix.identity(3)) == []
    assert len(nullspace(ExactMatrix.zeros(2))) == 2
    (v,) = nullspace(M([[1, 1]]))
    assert v[0] == -v[1] != 0


@settings(max_examples=100)
@given(st.one_of(low_rank_matrices(), matrices(max_rows=6, max_cols=6)))
def test_rank_nullity_and_kernel_vectors(m):
    kernel = nullspace(m)
    assert rank(m) + len(kernel) == m.cols
    for v in kernel:
        assert not any(m.apply(v))
    if kernel:
        assert rank(ExactMatrix.from_rows(kernel)) == len(kernel)


# solve_affine ----------------------------------------------------------------


def test_solve_affine_examples():
    x0, kernel = solve_affine(ExactMatrix.identity(3), [1, Fraction(2, 3), -5])
    assert x0 == (1, Fraction(2, 3), -5) and kernel == []
    x0, kernel = solve_affine(ExactMatrix.zeros(2), [0, 0])
    assert x0 == (0, 0) and len(kernel) == 2
    # (0, 1) is not in the column span of [[1,0],[0,0]]
    assert solve_affine(M([[1, 0], [0, 0]]), [0, 1]) is None


@given(low_rank_matrices(), st.data())
def test_solve_affine_resubstitutes(a, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=a.cols, max_size=a.cols))
    b = a.apply([Fraction(v) for v in x])
    x0, kernel = solve_affine(a, b)
    assert a.apply(x0) == b
    for k in kernel:
        assert not any(a.apply(k))
    assert len(kernel) == a.cols - rank(a)


@given(low_rank_matrices(), st.data())
def test_solve_affine_none_iff_outside_span(a, data):
    b = data.draw(st.lists(st.integers(-3, 3), min_size=a.rows, max_size=a.rows))
    augmented = ExactMatrix.hstack(a, ExactMatrix.column(b))
    result = solve_affine(a, b)
    assert (result is None) == (rank(augmented) > rank(a))


# polynomials -------------------------------------------------------------------


def test_char_poly_examples():
    # (t-1)(t-2) = t^2 - 3t + 2
    assert char_poly(ExactMatrix.diag([1, 2])) == UniPolynomial([2, -3, 1])
    assert char_poly(M([[0, 1], [0, 0]])) == UniPolynomial([0, 0, 1])
    # (t-3)(t+3) = t^2 - 9
    assert char_poly(ExactMatrix.diag([3, -3])) == UniPolynomial([-9, 0, 1])
    with pytest.raises(NotSquare):
        char_poly(ExactMatrix.zeros(2, 3))


@given(matrices(max_rows=5, square=True))
def test_char_poly_matches_sympy(m):
    t = sympy.Symbol("t")
    expected = to_sympy(m).charpoly(t).all_coeffs()[::-1]
    assert [Fraction(int(c.p), int(c.q)) for c in expected] == list(char_poly(m).coeffs)


def test_cayley_hamilton_random_6x6():
    rng = random.Random(6)
    for _ in range(10):
        m = ExactMatrix(6, 6, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(36)])
        assert char_poly(m).eval_matrix(m).is_zero()


@pytest.mark.parametrize("size", range(1, 9))
def test_cayley_hamilton_up_to_8(size):
    rng = random.Random(size)
    m = ExactMatrix(size, size, [rng.randint(-3, 3) for _ in range(size * size)])
    assert char_poly(m).eval_matrix(m).is_zero()


def test_minimal_poly_examples():
    assert minimal_poly(ExactMatrix.identity(3)) == UniPolynomial([-1, 1])
    assert minimal_poly(ExactMatrix.diag([1, 1, 2])) == UniPolynomial.from_roots([1, 2])
    assert minimal_poly(M([[0, 1], [0, 0]])) == UniPolynomial([0, 0, 1])


@given(st.one_of(matrices(max_rows=5, square=True), low_rank_matrices(max_dim=5).filter(lambda m: m.is_square)))
def test_minimal_poly_divides_char_poly(m):
    mp = minimal_poly(m)
    assert mp.eval_matrix(m).is_zero()
    assert (char_poly(m) % mp).is_zero()
    assert mp.lead == 1


def test_minimal_poly_is_lowest_degree():
    # block diag(J_2(0), 0): minimal poly t^2 even though char poly is t^3
    m = M([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert minimal_poly(m) == UniPolynomial([0, 0, 1])


def test_is_semisimple_examples():
    assert is_semisimple(ExactMatrix.diag([1, 2, 2, -7]))
    assert not is_semisimple(M([[0, 1], [0, 0]]))
    # companion matrix of t^2 + 1 is squarefree over Q
    assert is_semisimple(M([[0, -1], [1, 0]]))
    assert not is_semisimple(M([[2, 1], [0, 2]]))


def test_poly_arithmetic():
    p = UniPolynomial.from_roots([1, 2, 2])
    q, r = divmod(p, UniPolynomial.from_roots([2]))
    assert r.is_zero() and q == UniPolynomial.from_roots([1, 2])
    assert poly_gcd(p, p.derivative()) == UniPolynomial.from_roots([2])
    assert p(2) == 0 and p(3) == 2


def test_rational_roots_with_cofactor():
    p = UniPolynomial.from_roots([Fraction(1, 2), -3, -3]) * UniPolynomial([1, 0, 1])
    roots, rest = rational_roots(p)
    assert roots == [(Fraction(-3), 2), (Fraction(1, 2), 1)]
    assert rest == UniPolynomial([1, 0, 1])


# eigensystems ------------------------------------------------------------------


def test_eigensystem_examples():
    es = rational_eigensystem(ExactMatrix.diag([1, 2, 2]))
    assert [(lam, len(b)) for lam, b in es] == [(1, 1), (2, 2)]
    with pytest.raises(NonSplitSpectrum):
        rational_eigensystem(M([[0, 1], [-1, 0]]))
    assert [(lam, len(b)) for lam, b in rational_eigensystem(ExactMatrix.zeros(4))] == [(0, 4)]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.data())
def test_eigensystem_on_conjugated_diagonal(diag, data):
    n = len(diag)
    # unit upper triangular conjugator keeps everything integral
    entries = [1 if i == j else (data.draw(st.integers(-2, 2)) if j > i else 0) for i in range(n) for j in range(n)]
    p = ExactMatrix(n, n, entries)
    m = p @ ExactMatrix.diag(diag) @ p.inverse()
    es = rational_eigensystem(m)
    assert sorted(set(diag)) == [lam for lam, _ in es]
    for lam, basis in es:
        assert len(basis) == diag.count(lam)
        for v in basis:
            assert m.apply(v) == tuple(lam * c for c in v)


def test_inverse_round_trip():
    m = M([[2, 1, 0], [1, 3, Fraction(1, 2)], [0, 1, 1]])
    assert m @ m.inverse() == ExactMatrix.identity(3)
    with pytest.raises(ZeroDivisionError):
        M([[1, 2], [2, 4]]).inverse()


def test_matrix_is_immutable_and_hashable():
    m = M([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = 3
    assert hash(m) == hash(M([[1, 2], [3, 4]]))
    with pytest.raises(TypeError):
        ExactMatrix(1, 1, [0.5])

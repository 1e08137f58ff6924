from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acvlab.errors import NotInSp, SpaceMismatch
from acvlab.linalg import ExactMatrix, rank
from acvlab.symplectic import (
    CartanPoint,
    PhaseVector,
    SignedPermutation,
    SpElement,
    SymplecticSpace,
    ad_matrix,
    bracket,
    cartan_embed,
    cartan_part,
    centralizer_dim,
    from_coords,
    gram_matrix,
    is_in_sp,
    is_regular,
    is_symplectic_matrix,
    phase_act,
    sigma,
    sp_basis,
    sp_coords,
    trace_form,
    weyl_act,
    weyl_canonical_form,
    weyl_group,
)

from .conftest import phase_vectors, sp_elements

ONE_SPACE = SymplecticSpace(1)
H = cartan_embed(CartanPoint([1]))
E = SpElement(ONE_SPACE, ExactMatrix.from_rows([[0, 1], [0, 0]]))
F_ = SpElement(ONE_SPACE, ExactMatrix.from_rows([[0, 0], [1, 0]]))


def pair(a, b):
    return CartanPoint(a), CartanPoint(b)


# basis ---------------------------------------------------------------------


@pytest.mark.parametrize("n,size", [(1, 3), (2, 10), (3, 21)])
def test_basis_size_and_membership(n, size):
    space = SymplecticSpace(n)
    basis = sp_basis(space)
    assert len(basis) == size == space.lie_dim
    for b in basis:
        assert is_in_sp(b.mat, space)
    assert rank(ExactMatrix.from_rows([b.mat.entries for b in basis])) == size


@given(sp_elements(2))
def test_coordinates_round_trip(x):
    assert from_coords(x.space, sp_coords(x)) == x


def test_sp_element_rejects_non_members():
    with pytest.raises(NotInSp):
        SpElement(ONE_SPACE, ExactMatrix.identity(2))


def test_form_is_standard():
    J = SymplecticSpace(2).form
    assert J == ExactMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


# bracket -------------------------------------------------------------------


def test_bracket_examples():
    assert bracket(H, H).is_zero()
    assert bracket(H, E) == E.scale(2)
    assert bracket(H, F_) == F_.scale(-2)
    assert bracket(E, F_) == H


@given(sp_elements(2), sp_elements(2))
def test_bracket_antisymmetric_and_closed(x, y):
    b = bracket(x, y)
    assert b == -bracket(y, x)
    assert is_in_sp(b.mat, x.space)


def test_bracket_space_mismatch():
    with pytest.raises(SpaceMismatch):
        bracket(H, SpElement.zero(SymplecticSpace(2)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jacobi_on_basis(n):
    basis = sp_basis(SymplecticSpace(n))
    # all triples at n <= 2; a sliding window of triples at n = 3 keeps runtime small
    triples = product(basis, repeat=3) if n < 3 else (
        (basis[a], basis[(a + 5) % 21], basis[(a + 11) % 21]) for a in range(21)
    )
    for x, y, z in triples:
        total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert total.is_zero()


# sigma ---------------------------------------------------------------------


def test_sigma_examples():
    assert sigma(PhaseVector.zero(ONE_SPACE)).is_zero()
    assert sigma(PhaseVector(ONE_SPACE, [1], [0])).mat == ExactMatrix.from_rows([[0, 1], [0, 0]])


@given(phase_vectors(2), st.integers(-4, 4))
def test_sigma_rank_and_scaling(i, c):
    s = sigma(i)
    assert rank(s.mat) == (0 if i.is_zero() else 1)
    assert sigma(i.scale(c)) == s.scale(c * c)
    # v -> omega(i, v) i
    for k in range(4):
        v = [1 if j == k else 0 for j in range(4)]
        assert s.mat.apply(v) == tuple(i.space.omega(i.vec, v) * a for a in i.vec)


@given(phase_vectors(2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_sigma_pairs_with_cartan_as_minus_two_pq(i, t):
    h = cartan_embed(CartanPoint(t))
    assert trace_form(sigma(i), h) == -2 * sum(tk * p * q for tk, p, q in zip(t, i.p, i.q))


@given(phase_vectors(2))
def test_sigma_equivariant_under_weyl_matrices(i):
    for w in weyl_group(2):
        g = w.symplectic_matrix()
        assert sigma(i).conjugate(g, g.inverse()) == sigma(phase_act(w, i))


# trace form ----------------------------------------------------------------


def test_trace_form_examples():
    assert trace_form(H, H) == 2
    assert rank(gram_matrix(SymplecticSpace(2))) == 10
    assert rank(gram_matrix(SymplecticSpace(1))) == 3


@given(sp_elements(2), sp_elements(2), sp_elements(2))
def test_trace_form_symmetric_and_invariant(a, b, c):
    assert trace_form(a, b) == trace_form(b, a)
    assert trace_form(bracket(a, b), c) + trace_form(b, bracket(a, c)) == 0


# Cartan --------------------------------------------------------------------


def test_cartan_examples():
    assert cartan_embed(CartanPoint([0, 0])).is_zero()
    assert cartan_embed(CartanPoint([1, 2])).mat == ExactMatrix.diag([1, 2, -1, -2])
    assert cartan_part(cartan_embed(CartanPoint([3, -1]))) == CartanPoint([3, -1])
    assert cartan_part(E) is None


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_cartan_embeds_commute(t, s):
    assert bracket(cartan_embed(CartanPoint(t)), cartan_embed(CartanPoint(s))).is_zero()


def test_is_regular_examples():
    assert is_regular(CartanPoint([1, 2, 3]))
    assert not is_regular(CartanPoint([1, -1]))
    assert not is_regular(CartanPoint([0, 2]))
    assert not is_regular(CartanPoint([2, 2]))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_is_regular_matches_centralizer_dimension(t):
    h = CartanPoint(t)
    assert is_regular(h) == (centralizer_dim(cartan_embed(h)) == len(t))


def test_ad_matrix_examples():
    space = SymplecticSpace(2)
    assert ad_matrix(SpElement.zero(space)).is_zero()
    x = cartan_embed(CartanPoint([1, 3]))
    assert rank(ad_matrix(x)) == 8
    assert not any(ad_matrix(x).apply(sp_coords(x)))


@given(sp_elements(2), sp_elements(2))
def test_ad_matrix_matches_bracket(x, z):
    assert ad_matrix(x).apply(sp_coords(z)) == sp_coords(bracket(x, z))


# Weyl group ----------------------------------------------------------------


def test_weyl_group_order():
    assert len(list(weyl_group(1))) == 2
    assert len(list(weyl_group(2))) == 8
    assert len(set(weyl_group(3))) == 48


def test_weyl_act_examples():
    p = pair([3, -1], [5, 2])
    assert weyl_act(SignedPermutation.identity(2), p) == p
    assert weyl_act(SignedPermutation((0,), (-1,)), pair([3], [5])) == pair([-3], [-5])


def test_weyl_group_law_brute_force():
    p = pair([1, 2], [3, -5])
    group = list(weyl_group(2))
    for w1 in group:
        assert weyl_act(w1 * w1.inverse(), p) == p
        for w2 in group:
            assert weyl_act(w1, weyl_act(w2, p)) == weyl_act(w1 * w2, p)


def test_symplectic_matrix_realizes_weyl_action():
    t = CartanPoint([1, 2, 5])
    for w in weyl_group(3):
        g = w.symplectic_matrix()
        assert is_symplectic_matrix(g, SymplecticSpace(3))
        assert cartan_embed(t).conjugate(g, g.inverse()) == cartan_embed(CartanPoint(w.act(t.t)))


def test_signed_permutation_json_is_one_based():
    w = SignedPermutation((1, 0), (1, -1))
    assert w.to_json() == {"perm": [2, 1], "signs": [1, -1]}
    assert SignedPermutation.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        SignedPermutation((0, 0), (1, 1))


def test_canonical_form_examples():
    assert weyl_canonical_form(pair([-1], [2])) == pair([1], [-2])
    assert weyl_canonical_form(pair([0], [-3])) == pair([0], [3])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_form_is_orbit_invariant(n):
    t = [Fraction(v) for v in (2, -1, 0)[:n]]
    s = [Fraction(v) for v in (1, 3, -2)[:n]]
    p = (CartanPoint(t), CartanPoint(s))
    canon = weyl_canonical_form(p)
    orbit = {weyl_act(w, p) for w in weyl_group(n)}
    assert canon in orbit
    for q in orbit:
        assert weyl_canonical_form(q) == canon


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3))
def test_canonical_form_idempotent(coords):
    p = pair([a for a, _ in coords], [b for _, b in coords])
    c = weyl_canonical_form(p)
    assert weyl_canonical_form(c) == c

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acvlab.errors import NotOnVariety, NotRegular, NotRegularCartan, SpaceMismatch
from acvlab.linalg import ExactMatrix, rank
from acvlab.sampling import random_point, random_regular_cartan, trial_rng
from acvlab.scheme import (
    ACVPoint,
    Choice,
    GGPoint,
    ambient_dim,
    dimension_certificate,
    escapes_image,
    expected_dim,
    flip_action,
    gg_completion,
    gg_dim,
    gg_fiber_nonempty,
    gg_is_member,
    gg_moment_residual,
    is_member,
    jacobian_mu,
    levi_dimension_identity,
    levi_dims,
    levi_nilpotent_bound,
    levi_types,
    min_orbit_escape_witness,
    moment_residual,
    sample_regular_point,
    sign_vector,
    stabilizer_dim,
    weyl_transitivity_check,
    witness_point,
    yn_components,
    yn_membership,
)
from acvlab.symplectic import (
    CartanPoint,
    LeviType,
    PhaseVector,
    SpElement,
    SymplecticSpace,
    bracket,
    cartan_embed,
    from_coords,
    sigma,
    sp_coords,
    trace_form,
    weyl_group,
)

from .conftest import phase_vectors, sp_elements


def origin(n):
    space = SymplecticSpace(n)
    return ACVPoint(SpElement.zero(space), SpElement.zero(space), PhaseVector.zero(space))


# membership ----------------------------------------------------------------


def test_residual_examples():
    space = SymplecticSpace(2)
    h = cartan_embed(CartanPoint([1, 2]))
    assert moment_residual(ACVPoint(h, SpElement.zero(space), PhaseVector.zero(space))).is_zero()
    e = from_coords(space, [0] * 4 + [1, 0, 0] + [0] * 3)
    f = from_coords(space, [0] * 7 + [1, 0, 0])
    assert not is_member(ACVPoint(e, f, PhaseVector.zero(space)))
    assert is_member(witness_point(2, CartanPoint([1, 2])))


def test_residual_space_mismatch():
    with pytest.raises(SpaceMismatch):
        ACVPoint(SpElement.zero(SymplecticSpace(1)), SpElement.zero(SymplecticSpace(2)),
                 PhaseVector.zero(SymplecticSpace(1)))


def test_dimensions():
    assert [ambient_dim(n) for n in (1, 2, 3)] == [8, 24, 48]
    assert [expected_dim(n) for n in (1, 2, 3)] == [5, 14, 27]


# Jacobian ------------------------------------------------------------------


def test_jacobian_zero_at_origin():
    assert jacobian_mu(origin(2)).is_zero()


@settings(max_examples=30, deadline=None)
@given(sp_elements(2), sp_elements(2), phase_vectors(2), sp_elements(2), sp_elements(2), phase_vectors(2))
def test_jacobian_matches_exact_expansion(x, y, i, dx, dy, di):
    # mu is quadratic: mu(p + e d) = mu(p) + e J d + e^2 mu_2(d) exactly
    pt = ACVPoint(x, y, i)
    d = list(sp_coords(dx)) + list(sp_coords(dy)) + list(di.vec)
    linear = jacobian_mu(pt).apply(d)
    quad = sp_coords(bracket(dx, dy) + sigma(di))
    base = sp_coords(moment_residual(pt))
    for eps in (1, 2, 3):
        moved = ACVPoint(x + dx.scale(eps), y + dy.scale(eps), PhaseVector.from_vector(
            x.space, [a + eps * b for a, b in zip(i.vec, di.vec)]))
        lhs = sp_coords(moment_residual(moved))
        assert lhs == tuple(b + eps * l + eps * eps * q for b, l, q in zip(base, linear, quad))


# certificates --------------------------------------------------------------


@pytest.mark.parametrize("n,t,expected", [(1, [1], (3, 5)), (2, [1, 2], (10, 14)), (3, [1, 2, 3], (21, 27))])
def test_witness_certificates(n, t, expected):
    cert = dimension_certificate(witness_point(n, CartanPoint(t)))
    assert (cert.jacobian_rank, cert.local_dim, cert.stabilizer_dim) == (*expected, 0)
    assert cert.verdict and cert.smooth
    assert cert.ambient_dim == ambient_dim(n)


def test_origin_certificate_makes_no_claim():
    cert = dimension_certificate(origin(2))
    assert cert.jacobian_rank == 0
    assert cert.stabilizer_dim == 10
    assert not cert.verdict


def test_certificate_refuses_non_members():
    space = SymplecticSpace(1)
    pt = ACVPoint(SpElement.zero(space), SpElement.zero(space), PhaseVector(space, [1], [0]))
    with pytest.raises(NotOnVariety):
        dimension_certificate(pt)


# witness and sampler --------------------------------------------------------


def test_witness_n1_solves_two_by_two_system():
    pt = witness_point(1, CartanPoint([1]))
    assert pt.x.mat == ExactMatrix.diag([1, -1])
    assert pt.i.vec == (1, 0)
    # [diag(1,-1), c E_12] = 2c E_12 and sigma(i) = E_12, so c = -1/2
    assert pt.y.mat == ExactMatrix.from_rows([[0, Fraction(-1, 2)], [0, 0]])
    assert stabilizer_dim(pt) == 0


def test_witness_requires_regular_t():
    with pytest.raises(NotRegular):
        witness_point(2, CartanPoint([1, -1]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_witness_lies_on_yn(n):
    pt = witness_point(n, CartanPoint(range(1, n + 1)))
    assert all(p * q == 0 for p, q in zip(pt.i.p, pt.i.q))
    assert stabilizer_dim(pt) == 0


def test_sampler_reduces_to_witness():
    t = CartanPoint([2, -3])
    pt = sample_regular_point(2, t, sign_vector("PP"), [1, 1], CartanPoint([0, 0]))
    assert pt == witness_point(2, t)


def test_fiber_shifts_y_by_cartan():
    t = CartanPoint([1, 3])
    a = sample_regular_point(2, t, sign_vector("PQ"), [2, -1], CartanPoint([0, 0]))
    b = sample_regular_point(2, t, sign_vector("PQ"), [2, -1], CartanPoint([5, -2]))
    assert a.x == b.x and a.i == b.i
    assert b.y - a.y == cartan_embed(CartanPoint([5, -2]))


def test_hundred_seeded_samples_at_n3():
    for k in range(100):
        pt = random_point(trial_rng(2024, k), 3)
        assert moment_residual(pt).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_submersion_at_free_samples(n):
    for k in range(4):
        cert = dimension_certificate(random_point(trial_rng(7, k), n))
        assert cert.stabilizer_dim == 0
        assert cert.jacobian_rank == 2 * n * n + n


@pytest.mark.parametrize("n", [1, 2])
def test_moment_map_equivariant_under_sign_flips(n):
    rng = random.Random(n)
    for k in range(3):
        pt = random_point(trial_rng(11, k), n)
        # an arbitrary non-member is just as good a test input
        pt = ACVPoint(pt.x, pt.y + cartan_embed(CartanPoint([rng.randint(1, 3)] * n)),
                      pt.i.scale(rng.randint(1, 2)))
        for w in weyl_group(n):
            g = w.symplectic_matrix()
            g_inv = g.inverse()
            moved = pt.conjugate(g, g_inv)
            assert moment_residual(moved) == moment_residual(pt).conjugate(g, g_inv)


# Y_n -----------------------------------------------------------------------


def test_yn_membership_examples():
    space1, space2 = SymplecticSpace(1), SymplecticSpace(2)
    assert yn_membership(PhaseVector.zero(space2)) == sign_vector("PP")
    assert yn_membership(PhaseVector(space2, [1, 0], [0, 5])) == sign_vector("PQ")
    assert yn_membership(PhaseVector(space1, [1], [1])) is None


@given(phase_vectors(3))
def test_yn_membership_matches_equations(i):
    sv = yn_membership(i)
    assert (sv is not None) == all(p * q == 0 for p, q in zip(i.p, i.q))
    if sv is not None:
        for c, p, q in zip(sv, i.p, i.q):
            assert (q == 0) if c is Choice.P else (p == 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_component_count(n):
    comps = yn_components(n)
    assert len(comps) == len(set(comps)) == 2 ** n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_flips_act_simply_transitively(n):
    report = weyl_transitivity_check(n)
    assert report.passed and report.group_order == 2 ** n


def test_transitivity_negative_control():
    comps = yn_components(2)
    assert not weyl_transitivity_check(2, comps[1:]).passed


def test_flip_example():
    assert flip_action((-1, 1), sign_vector("PQ")) == sign_vector("QQ")


# GL side -------------------------------------------------------------------


def test_gg_examples():
    z1 = ExactMatrix.zeros(1)
    assert gg_is_member(GGPoint(z1, z1, [0], [7]))
    assert gg_dim(1) == 1 and gg_dim(2) == 6
    x, y = ExactMatrix.diag([1, -1]), ExactMatrix.diag([3, -3])
    assert gg_is_member(GGPoint(x, y, [0, 0], [0, 0]))


def test_gg_rank_two_obstruction():
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    y = ExactMatrix.diag([1, -1])
    assert rank(x @ y - y @ x) == 2
    assert not gg_fiber_nonempty(x, y)
    assert gg_completion(x, y) is None


def test_gg_completion_rank_one():
    x = ExactMatrix.from_rows([[1, 0], [0, -1]])
    y = ExactMatrix.from_rows([[0, 1], [0, 0]])
    pt = gg_completion(x, y)
    assert pt is not None and gg_moment_residual(pt).is_zero()


# Levi bookkeeping -----------------------------------------------------------


def test_levi_examples():
    d = levi_dims(LeviType(1, (1,)))
    assert (d["dim_G/L"], d["center"], d["M_parts"], d["X_n0"]) == (6, 2, 1, 5)
    assert levi_dimension_identity(LeviType(1, (1,)))
    d = levi_dims(LeviType(1, ()))
    assert (d["dim_G/L"], d["center"], d["M_parts"], d["X_n0"]) == (0, 0, 0, 5)


@pytest.mark.parametrize("n", range(1, 7))
def test_levi_identity_all_partitions(n):
    types = levi_types(n)
    # number of (n0, partition of n - n0) pairs = sum of partition counts p(0..n)
    partition_counts = [1, 1, 2, 3, 5, 7, 11]
    assert len(types) == sum(partition_counts[: n + 1])
    for lt in types:
        assert levi_dimension_identity(lt)
        assert levi_nilpotent_bound(lt) == 2 * n * n + n + 2 * n - 1 - lt.k


# escape witness --------------------------------------------------------------


def test_escape_examples():
    x1 = cartan_embed(CartanPoint([1]))
    i1 = PhaseVector(SymplecticSpace(1), [1], [1])
    assert trace_form(sigma(i1), x1) == -2
    assert escapes_image(x1, i1)
    x2 = cartan_embed(CartanPoint([1, 2]))
    assert escapes_image(x2, PhaseVector(SymplecticSpace(2), [1, 0], [1, 0]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_escape_witness_is_certified(n):
    for k in range(5):
        x = cartan_embed(random_regular_cartan(trial_rng(3, k), n))
        i = min_orbit_escape_witness(x)
        assert escapes_image(x, i)


@given(phase_vectors(2), st.sampled_from([[1, 2], [-3, 1], [2, 5]]))
def test_escape_iff_some_pq_nonzero(i, t):
    x = cartan_embed(CartanPoint(t))
    assert escapes_image(x, i) == any(p * q for p, q in zip(i.p, i.q))


def test_escape_witness_rejects_non_cartan_or_singular():
    with pytest.raises(NotRegularCartan):
        min_orbit_escape_witness(cartan_embed(CartanPoint([1, 1])))
    e = from_coords(SymplecticSpace(1), [0, 1, 0])
    with pytest.raises(NotRegularCartan):
        min_orbit_escape_witness(e)

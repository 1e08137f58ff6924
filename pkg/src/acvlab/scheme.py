"""The almost-commuting schemes X_n (symplectic) and M_n (GL side).

X_n is the zero fiber of the moment map ``mu(x, y, i) = [x, y] + i^2`` on
``sp_2n + sp_2n + Q^2n``.  Everything here works at sampled points: exact
membership, the Jacobian of ``mu`` and its rank, stabilizer dimensions,
the affine-bundle sampler over the regular Cartan locus, the components of
``Y_n = {p_k q_k = 0}``, Levi dimension bookkeeping and the escape witness
showing the minimal orbit is not contained in ``[g, x]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import NoSolution, NotOnVariety, NotRegular, NotRegularCartan, SpaceMismatch
from .linalg import (
    ONE,
    ZERO,
    ExactMatrix,
    Vector,
    column_span_contains,
    commutator,
    nullspace,
    rank,
    solve_affine,
    vector,
)
from .symplectic import (
    CartanPoint,
    LeviType,
    PhaseVector,
    SpElement,
    SymplecticSpace,
    ad_matrix,
    bracket,
    cartan_coord_indices,
    cartan_embed,
    cartan_part,
    from_coords,
    is_regular,
    sigma,
    sigma_polar,
    sp_basis,
    sp_coords,
)


@dataclass(frozen=True)
class ACVPoint:
    x: SpElement
    y: SpElement
    i: PhaseVector

    def __post_init__(self):
        if not (self.x.space == self.y.space == self.i.space):
            raise SpaceMismatch("x, y and i must share one symplectic space")

    @property
    def space(self) -> SymplecticSpace:
        return self.x.space

    @property
    def n(self) -> int:
        return self.space.n

    @classmethod
    def origin(cls, n: int) -> "ACVPoint":
        space = SymplecticSpace(n)
        return cls(SpElement.zero(space), SpElement.zero(space), PhaseVector.zero(space))

    def conjugate(self, g: ExactMatrix, g_inv: ExactMatrix | None = None) -> "ACVPoint":
        """Action of a symplectic matrix: ``(g x g^-1, g y g^-1, g i)``."""
        g_inv = g.inverse() if g_inv is None else g_inv
        return ACVPoint(self.x.conjugate(g, g_inv), self.y.conjugate(g, g_inv),
                        PhaseVector.from_vector(self.space, g.apply(self.i.vec)))


def ambient_dim(n: int) -> int:
    return 2 * (2 * n * n + n) + 2 * n


def expected_dim(n: int) -> int:
    """dim X_n = 2n^2 + 3n."""
    return 2 * n * n + 3 * n


def moment_residual(pt: ACVPoint) -> SpElement:
    return bracket(pt.x, pt.y) + sigma(pt.i)


def is_member(pt: ACVPoint) -> bool:
    return moment_residual(pt).is_zero()


def jacobian_mu(pt: ACVPoint) -> ExactMatrix:
    """Differential of ``mu`` at ``pt``.

    Columns: ``dx`` in sp-basis order, then ``dy``, then ``di`` along the
    standard basis of Q^2n.  Rows: sp-basis coordinates of the image.
    """
    space = pt.space
    x, y = pt.x.mat, pt.y.mat
    basis = [b.mat for b in sp_basis(space)]
    cols = [sp_coords(commutator(b, y), space) for b in basis]
    cols += [sp_coords(commutator(x, b), space) for b in basis]
    for k in range(space.dim):
        e = [ZERO] * space.dim
        e[k] = ONE
        cols.append(sp_coords(sigma_polar(space, pt.i.vec, e), space))
    return ExactMatrix.from_columns(cols)


def stabilizer_matrix(pt: ACVPoint) -> ExactMatrix:
    """Linear map ``z -> ([z, x], [z, y], z i)`` on sp-basis coordinates."""
    cols = []
    for z in sp_basis(pt.space):
        cols.append(
            commutator(z.mat, pt.x.mat).entries
            + commutator(z.mat, pt.y.mat).entries
            + z.mat.apply(pt.i.vec)
        )
    return ExactMatrix.from_columns(cols)


def stabilizer_dim(pt: ACVPoint) -> int:
    """Dimension of the stabilizer Lie algebra of ``pt`` in sp_2n."""
    return len(nullspace(stabilizer_matrix(pt)))


@dataclass(frozen=True)
class DimensionCertificate:
    point: ACVPoint
    jacobian_rank: int
    ambient_dim: int
    expected_variety_dim: int
    stabilizer_dim: int

    @property
    def smooth(self) -> bool:
        """``mu`` is a submersion here, so X_n is smooth of the expected dimension."""
        return self.jacobian_rank == self.point.space.lie_dim

    @property
    def local_dim(self) -> int | None:
        return self.ambient_dim - self.jacobian_rank if self.smooth else None

    @property
    def verdict(self) -> bool:
        return self.smooth and self.local_dim == self.expected_variety_dim


def dimension_certificate(pt: ACVPoint) -> DimensionCertificate:
    if not is_member(pt):
        raise NotOnVariety("point does not satisfy [x,y] + i^2 = 0")
    return DimensionCertificate(
        point=pt,
        jacobian_rank=rank(jacobian_mu(pt)),
        ambient_dim=ambient_dim(pt.n),
        expected_variety_dim=expected_dim(pt.n),
        stabilizer_dim=stabilizer_dim(pt),
    )


# ---------------------------------------------------------------------------
# Y_n components


class Choice(enum.Enum):
    P = "P"  # p_k free, q_k = 0
    Q = "Q"  # q_k free, p_k = 0

    def flipped(self) -> "Choice":
        return Choice.Q if self is Choice.P else Choice.P


SignVector = tuple  # tuple[Choice, ...]


def sign_vector(spec: str | Sequence) -> SignVector:
    """``"PQP"`` or a sequence of choices to a sign vector."""
    return tuple(c if isinstance(c, Choice) else Choice(c) for c in spec)


def yn_membership(i: PhaseVector) -> SignVector | None:
    """Component of Y_n containing ``i``; ties ``p_k = q_k = 0`` go to P."""
    out = []
    for pk, qk in zip(i.p, i.q):
        if pk and qk:
            return None
        out.append(Choice.Q if qk else Choice.P)
    return tuple(out)


def yn_components(n: int) -> list[SignVector]:
    return [tuple(c) for c in product((Choice.P, Choice.Q), repeat=n)]


def flip_action(signs: Sequence[int], sv: SignVector) -> SignVector:
    """Sign flips ``{+-1}^n`` in W: a ``-1`` at ``k`` swaps P and Q there."""
    return tuple(c.flipped() if s == -1 else c for s, c in zip(signs, sv))


@dataclass(frozen=True)
class TransitivityReport:
    n: int
    components: int
    group_order: int
    simply_transitive: bool
    fixed_point_free: bool

    @property
    def passed(self) -> bool:
        return self.simply_transitive and self.fixed_point_free and self.components == 2 ** self.n


def weyl_transitivity_check(n: int, components: Sequence[SignVector] | None = None) -> TransitivityReport:
    """Check that sign flips act simply transitively on the given components.

    For every ordered pair of components exactly one group element maps the
    first to the second; the component list defaults to all of Y_n.
    """
    comps = list(yn_components(n) if components is None else components)
    group = list(product((1, -1), repeat=n))
    compset = set(comps)
    simply = len(compset) == len(comps)
    for a in comps:
        images = [flip_action(s, a) for s in group]
        for b in comps:
            if sum(1 for im in images if im == b) != 1:
                simply = False
        if any(im not in compset for im in images):
            simply = False
    fixed_free = all(
        flip_action(s, a) != a for s in group if any(v == -1 for v in s) for a in comps
    )
    return TransitivityReport(n, len(comps), len(group), simply, fixed_free)


def phase_from_sign(space: SymplecticSpace, sign: SignVector, free_coords: Sequence) -> PhaseVector:
    free_coords = vector(free_coords)
    if len(sign) != space.n or len(free_coords) != space.n:
        raise ValueError("sign vector and free coordinates must have length n")
    p = [c if s is Choice.P else ZERO for s, c in zip(sign, free_coords)]
    q = [c if s is Choice.Q else ZERO for s, c in zip(sign, free_coords)]
    return PhaseVector(space, p, q)


# ---------------------------------------------------------------------------
# sampling over the regular Cartan locus


def _solve_for_y(x: SpElement, i: PhaseVector) -> SpElement:
    """``y`` with ``[x, y] = -sigma(i)`` and zero Cartan component."""
    space = x.space
    target = [-c for c in sp_coords(sigma(i))]
    sol = solve_affine(ad_matrix(x), target)
    if sol is None:
        raise NoSolution("sigma(i) is not in the image of ad(x)")
    y0 = list(sol[0])
    for k in cartan_coord_indices(space.n):
        y0[k] = ZERO
    return from_coords(space, y0)


def sample_regular_point(n: int, t: CartanPoint, sign: SignVector, free_coords: Sequence,
                         fiber: CartanPoint) -> ACVPoint:
    """A point of X_n over the regular Cartan element ``t``.

    ``i`` lies on the Y_n component ``sign`` with the given free coordinates,
    and ``y`` is the particular solution of ``[x, y] = -i^2`` shifted by the
    Cartan element ``fiber`` (the n-dimensional affine fiber).
    """
    if t.n != n or fiber.n != n:
        raise ValueError("t and fiber must have length n")
    if not is_regular(t):
        raise NotRegular(f"{t.t} is not regular")
    space = SymplecticSpace(n)
    x = cartan_embed(t)
    i = phase_from_sign(space, sign, free_coords)
    y = _solve_for_y(x, i) + cartan_embed(fiber)
    pt = ACVPoint(x, y, i)
    assert is_member(pt), "sampler produced a non-member"
    return pt


def witness_point(n: int, t: CartanPoint) -> ACVPoint:
    """Free-orbit point: ``x = cartan_embed(t)``, ``p = (1..1)``, ``q = 0``.

    ``y`` is not zero: ``(x, 0, i)`` has residual ``sigma(i) != 0`` so it is
    repaired to the solution of ``[x, y] = -sigma(i)`` inside ``[g, x]``.
    """
    return sample_regular_point(n, t, (Choice.P,) * n, [1] * n, CartanPoint([0] * n))


# ---------------------------------------------------------------------------
# GL side: M_n


@dataclass(frozen=True)
class GGPoint:
    """``(x, y, i, j)`` with x, y traceless n x n, ``i`` a column, ``j`` a row."""

    x: ExactMatrix
    y: ExactMatrix
    i: Vector
    j: Vector

    def __post_init__(self):
        object.__setattr__(self, "i", vector(self.i))
        object.__setattr__(self, "j", vector(self.j))
        n = self.n
        if self.x.shape != (n, n) or self.y.shape != (n, n) or len(self.j) != n:
            raise ValueError("inconsistent GGPoint shapes")
        if self.x.trace() or self.y.trace():
            raise ValueError("x and y must be traceless")

    @property
    def n(self) -> int:
        return len(self.i)


def gg_dim(n: int) -> int:
    """Dimension of every component of M_n: n^2 + 2n - 2."""
    return n * n + 2 * n - 2


def gg_moment_residual(pt: GGPoint) -> ExactMatrix:
    return commutator(pt.x, pt.y) + ExactMatrix.column(pt.i) @ ExactMatrix.from_rows([pt.j])


def gg_is_member(pt: GGPoint) -> bool:
    return gg_moment_residual(pt).is_zero()


def gg_fiber_nonempty(x: ExactMatrix, y: ExactMatrix) -> bool:
    """Whether some ``(i, j)`` completes ``(x, y)`` to a point of M_n.

    ``i j`` ranges over all matrices of rank <= 1, so this holds exactly when
    ``rank [x, y] <= 1``.
    """
    return rank(commutator(x, y)) <= 1


def gg_completion(x: ExactMatrix, y: ExactMatrix) -> GGPoint | None:
    """An explicit ``(i, j)`` with ``[x, y] + i j = 0``, or ``None``."""
    c = commutator(x, y)
    n = x.rows
    r = rank(c)
    if r > 1:
        return None
    if r == 0:
        return GGPoint(x, y, [0] * n, [0] * n)
    # -c = col * row with col a nonzero column of -c
    k = next(j for j in range(n) if any(c.col(j)))
    col = [-v for v in c.col(k)]
    piv = next(a for a in range(n) if col[a])
    row = [-c[piv, j] / col[piv] for j in range(n)]
    return GGPoint(x, y, col, row)


# ---------------------------------------------------------------------------
# Levi bookkeeping


def levi_dims(lt: LeviType) -> dict[str, int]:
    n, n0 = lt.n, lt.n0
    dim_g = 2 * n * n + n
    dim_l = sum(p * p for p in lt.parts) + 2 * n0 * n0 + n0
    return {
        "dim_G/L": dim_g - dim_l,
        "center": 2 * lt.k,
        "M_parts": sum(gg_dim(p) for p in lt.parts),
        "X_n0": expected_dim(n0),
        "total": expected_dim(n),
        "dim_g": dim_g,
    }


def levi_dimension_identity(lt: LeviType) -> bool:
    """dim G/L + 2k + sum dim M_{n_i} + dim X_{n_0} == 2n^2 + 3n."""
    d = levi_dims(lt)
    return d["dim_G/L"] + d["center"] + d["M_parts"] + d["X_n0"] == d["total"]


def levi_nilpotent_bound(lt: LeviType) -> int:
    """Upper bound on a component avoiding the regular locus near a Levi stratum.

    Each factor loses one dimension on its nilpotent locus; the result is
    ``dim g + 2n - 1 - k`` and never exceeds ``dim g + 2n - 1``.
    """
    d = levi_dims(lt)
    return (d["dim_G/L"] + d["center"]
            + sum(gg_dim(p) - 1 for p in lt.parts) + d["X_n0"] - 1)


def _partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def levi_types(n: int) -> list[LeviType]:
    """Every Levi type for Sp_2n: a choice of ``n0`` and a partition of ``n - n0``."""
    return [LeviType(n0, parts) for n0 in range(n, -1, -1) for parts in _partitions(n - n0)]


# ---------------------------------------------------------------------------
# minimal-orbit escape


def escapes_image(x: SpElement, i: PhaseVector) -> bool:
    """Certificate that ``sigma(i)`` is outside the image of ``ad(x)``.

    Exact rank test: appending the coordinates of ``sigma(i)`` to a basis of
    the image raises its rank by one.
    """
    image = [c for c in ad_matrix(x).columns() if any(c)]
    return not column_span_contains(image, sp_coords(sigma(i)))


def min_orbit_escape_witness(x: SpElement) -> PhaseVector:
    """``i`` with ``i^2`` not in ``[g, x]`` for regular Cartan ``x``.

    For such ``x`` the image of ``ad(x)`` is the orthogonal complement of the
    Cartan, so any ``i`` with ``p_1 q_1 != 0`` escapes; the choice is
    re-certified by rank before returning.
    """
    t = cartan_part(x)
    if t is None or not is_regular(t):
        raise NotRegularCartan("escape witness needs x = cartan_embed(t) with t regular")
    n = x.space.n
    i = PhaseVector(x.space, [1] + [0] * (n - 1), [1] + [0] * (n - 1))
    if not escapes_image(x, i):
        raise AssertionError("escape witness failed its certificate")
    return i

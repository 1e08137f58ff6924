"""Simultaneous symplectic triangularization and closed-orbit classification.

If ``rank [x, y] <= 1`` then ``x`` and ``y`` share an eigenvector ``v``.
Its skew-orthogonal complement is stable under both, and the induced
operators on ``v^perp / <v>`` again have a commutator of rank <= 1, so
recursion produces a Lagrangian flag preserved by ``x`` and ``y``.  Putting
that flag first in a symplectic basis conjugates both into the standard
Borel ``[[A, B], [0, -A^T]]`` with ``A`` upper triangular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotCommonEigenvector, NotFound, NotOnVariety, RankTooHigh
from .linalg import (
    ONE,
    ZERO,
    ExactMatrix,
    Vector,
    commutator,
    is_semisimple,
    nullspace,
    rank,
    rational_eigensystem,
)
from .scheme import ACVPoint, is_member
from .symplectic import SpElement, SymplecticSpace, is_in_sp, is_symplectic_matrix


def common_eigenvector(x: ExactMatrix, y: ExactMatrix) -> Vector:
    """A common eigenvector of two matrices whose commutator has rank <= 1.

    Eigenvalue pairs ``(lambda, mu)`` are tried in lexicographic order and the
    first nonzero vector of ``ker(x - lambda) & ker(y - mu)`` is returned.
    """
    if rank(commutator(x, y)) > 1:
        raise RankTooHigh("commutator has rank > 1")
    spec_x = [lam for lam, _ in rational_eigensystem(x)]
    spec_y = [mu for mu, _ in rational_eigensystem(y)]
    ident = ExactMatrix.identity(x.rows)
    for lam in spec_x:
        shifted_x = x - ident.scale(lam)
        for mu in spec_y:
            kernel = nullspace(ExactMatrix.vstack(shifted_x, y - ident.scale(mu)))
            if kernel:
                return kernel[0]
    raise NotFound("no common eigenvector despite rank <= 1 commutator")


def _unit(dim: int, k: int) -> list[Fraction]:
    e = [ZERO] * dim
    e[k] = ONE
    return e


def symplectic_gram_schmidt(space: SymplecticSpace, vectors: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Darboux basis ``(e_1..e_m, f_1..f_m)`` of the span of ``vectors``.

    The span must be a symplectic subspace.  Pivots are taken in the order
    given, so the output is deterministic.
    """
    remaining = [list(v) for v in vectors if any(v)]
    es, fs = [], []
    while remaining:
        e = remaining.pop(0)
        idx = next((k for k, u in enumerate(remaining) if space.omega(e, u)), None)
        if idx is None:
            raise ValueError("span is not symplectic")
        u = remaining.pop(idx)
        c = space.omega(e, u)
        f = [a / c for a in u]
        projected = []
        for z in remaining:
            a, b = space.omega(z, f), space.omega(z, e)
            z = [zk - a * ek + b * fk for zk, ek, fk in zip(z, e, f)]
            if any(z):
                projected.append(z)
        remaining = projected
        es.append(tuple(e))
        fs.append(tuple(f))
    return es + fs


@dataclass(frozen=True)
class SkewReduction:
    """Data of one reduction step ``V -> v^perp / <v>``.

    ``basis`` holds a Darboux basis of a complement of ``<v>`` in ``v^perp``
    as columns; ``partner`` satisfies ``omega(v, partner) = 1`` and is
    orthogonal to that complement.
    """

    v: Vector
    partner: Vector
    basis: ExactMatrix
    x1: ExactMatrix
    y1: ExactMatrix


def skew_reduce(x: ExactMatrix, y: ExactMatrix, v: Sequence[Fraction]) -> SkewReduction:
    """Induced operators of ``x``, ``y`` on ``v^perp / <v>`` in a Darboux basis."""
    dim = x.rows
    space = SymplecticSpace(dim // 2)
    v = tuple(v)
    xv, yv = x.apply(v), y.apply(v)
    if not any(v) or rank(ExactMatrix.from_rows([v, xv])) > 1 or rank(ExactMatrix.from_rows([v, yv])) > 1:
        raise NotCommonEigenvector("v is not a common eigenvector")
    J = space.form
    k = next(k for k in range(dim) if space.omega(v, _unit(dim, k)))
    w = tuple(a / space.omega(v, _unit(dim, k)) for a in _unit(dim, k))
    constraints = ExactMatrix.from_rows([v, w]) @ J
    complement = symplectic_gram_schmidt(space, nullspace(constraints))
    if complement:
        basis = ExactMatrix.from_columns(complement)
        small = SymplecticSpace(space.n - 1).form
        # coordinates of z in the Darboux basis: -J' B^T J z (kills the v-part)
        proj = (-small) @ basis.T @ J
        x1, y1 = proj @ x @ basis, proj @ y @ basis
    else:
        basis = ExactMatrix(dim, 0, ())
        x1 = y1 = ExactMatrix(0, 0, ())
    return SkewReduction(v, w, basis, x1, y1)


@dataclass(frozen=True)
class BorelCertificate:
    """``x_conj = g x g^-1`` and ``y_conj = g y g^-1`` lie in the standard Borel."""

    g: ExactMatrix
    x: SpElement
    y: SpElement
    x_conj: SpElement
    y_conj: SpElement
    flag: tuple[Vector, ...] = field(default=())


def is_in_standard_borel(x: SpElement | ExactMatrix) -> bool:
    """Block form ``[[A, B], [0, -A^T]]`` with ``A`` upper triangular, ``B`` symmetric."""
    m = x.mat if isinstance(x, SpElement) else x
    n = m.rows // 2
    if m.shape != (2 * n, 2 * n):
        return False
    if any(m[n + a, b] for a in range(n) for b in range(n)):
        return False
    if any(m[a, b] for a in range(n) for b in range(a)):
        return False
    if any(m[a, n + b] != m[b, n + a] for a in range(n) for b in range(n)):
        return False
    return all(m[n + a, n + b] == -m[b, a] for a in range(n) for b in range(n))


def borel_dim(n: int) -> int:
    return n * n + n


def _flag_basis(x: ExactMatrix, y: ExactMatrix, trail: list[int]) -> ExactMatrix:
    """Symplectic matrix whose first n columns span an (x, y)-stable flag."""
    dim = x.rows
    if dim == 0:
        return ExactMatrix(0, 0, ())
    n = dim // 2
    before = rank(commutator(x, y))
    trail.append(before)
    v = common_eigenvector(x, y)
    red = skew_reduce(x, y, v)
    if rank(commutator(red.x1, red.y1)) > before:
        raise AssertionError("commutator rank grew under reduction")
    inner = _flag_basis(red.x1, red.y1, trail)
    lifted = (red.basis @ inner).columns() if n > 1 else []
    es, fs = lifted[:n - 1], lifted[n - 1:]
    return ExactMatrix.from_columns([red.v, *es, red.partner, *fs])


def symplectic_triangularize(x: SpElement, y: SpElement) -> BorelCertificate:
    """Symplectic ``g`` conjugating both ``x`` and ``y`` into the standard Borel."""
    x._check(y)
    space = x.space
    if rank(commutator(x.mat, y.mat)) > 1:
        raise RankTooHigh("[x, y] has rank > 1")
    trail: list[int] = []
    basis = _flag_basis(x.mat, y.mat, trail)
    if any(b > a for a, b in zip(trail, trail[1:])):
        raise AssertionError("commutator rank is not monotone along the recursion")
    J = space.form
    # basis is symplectic, so its inverse is -J basis^T J
    g = (-J) @ basis.T @ J
    x_conj = SpElement(space, g @ x.mat @ basis)
    y_conj = SpElement(space, g @ y.mat @ basis)
    flag = tuple(basis.col(k) for k in range(space.n))
    return BorelCertificate(g, x, y, x_conj, y_conj, flag)


def check_borel_data(space: SymplecticSpace, g: ExactMatrix, x: ExactMatrix, y: ExactMatrix,
                     x_conj: ExactMatrix, y_conj: ExactMatrix,
                     flag: Sequence[Sequence[Fraction]] = ()) -> list[str]:
    """Re-check every certificate invariant from raw matrices.

    Returns the list of violated invariants; empty means the certificate holds.
    """
    problems = []
    dim = space.dim
    for name, m in (("g", g), ("x", x), ("y", y), ("x_conj", x_conj), ("y_conj", y_conj)):
        if m.shape != (dim, dim):
            return [f"{name} has shape {m.shape}, expected {(dim, dim)}"]
    if not is_symplectic_matrix(g, space):
        problems.append("g is not symplectic (g^T J g != J)")
        try:
            g_inv = g.inverse()
        except ZeroDivisionError:
            return problems + ["g is singular"]
    else:
        g_inv = (-space.form) @ g.T @ space.form
    for name, orig, conj in (("x", x, x_conj), ("y", y, y_conj)):
        if not is_in_sp(orig, space):
            problems.append(f"{name} is not in sp")
        if not is_in_sp(conj, space):
            problems.append(f"{name}_conj is not in sp")
        if g @ orig @ g_inv != conj:
            problems.append(f"{name}_conj != g {name} g^-1")
        if not is_in_standard_borel(conj):
            problems.append(f"{name}_conj is not in the standard Borel")
        if g_inv @ conj @ g != orig:
            problems.append(f"round trip does not recover {name}")
    if flag:
        flag = [tuple(v) for v in flag]
        lagrangian = (
            len(flag) == space.n
            and all(space.omega(u, v) == 0 for u in flag for v in flag)
            and rank(ExactMatrix.from_rows(flag)) == len(flag)
        )
        if not lagrangian:
            problems.append("flag is not Lagrangian")
        for name, m in (("x", x), ("y", y)):
            for k in range(1, len(flag) + 1):
                head = ExactMatrix.from_rows(flag[:k])
                moved = [m.apply(v) for v in flag[:k]]
                if rank(ExactMatrix.vstack(head, ExactMatrix.from_rows(moved))) != rank(head):
                    problems.append(f"flag is not {name}-stable at step {k}")
                    break
    return problems


def verify_borel_certificate(cert: BorelCertificate) -> list[str]:
    return check_borel_data(cert.x.space, cert.g, cert.x.mat, cert.y.mat,
                            cert.x_conj.mat, cert.y_conj.mat, cert.flag)


# ---------------------------------------------------------------------------
# closed orbits


@dataclass(frozen=True)
class OrbitVerdict:
    closed: bool
    reasons: tuple[str, ...] = ()


def classify_closed_orbit(pt: ACVPoint) -> OrbitVerdict:
    """Closed iff ``i = 0``, ``[x, y] = 0`` and both ``x``, ``y`` semisimple."""
    if not is_member(pt):
        raise NotOnVariety("point does not satisfy [x,y] + i^2 = 0")
    reasons = []
    if not pt.i.is_zero():
        reasons.append("i != 0")
    if not commutator(pt.x.mat, pt.y.mat).is_zero():
        reasons.append("[x, y] != 0")
    if not is_semisimple(pt.x.mat):
        reasons.append("x not semisimple")
    if not is_semisimple(pt.y.mat):
        reasons.append("y not semisimple")
    return OrbitVerdict(not reasons, tuple(reasons))


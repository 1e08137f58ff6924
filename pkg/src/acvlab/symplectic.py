"""The symplectic Lie algebra sp_2n with its Cartan and Weyl data.

The symplectic form is fixed once and for all as ``J = [[0, I], [-I, 0]]``
on Q^2n with coordinates ``(p_1..p_n, q_1..q_n)`` and pairing
``omega(u, v) = u^T J v``.  With this choice sp_2n consists of the block
matrices ``[[A, B], [C, -A^T]]`` with ``B`` and ``C`` symmetric.

``sigma(i)`` realizes the square ``i^2`` as the rank <= 1 operator
``v -> omega(i, v) i``; no extra scalar factor is applied.  Any other nonzero
normalization of the identification S^2(Q^2n) = sp_2n gives an isomorphic
scheme after rescaling ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .errors import NotInSp, SpaceMismatch
from .linalg import ONE, ZERO, ExactMatrix, Vector, as_rational, dot, rank, vector


@lru_cache(maxsize=None)
def _standard_form(n: int) -> ExactMatrix:
    m = 2 * n
    rows = [[ZERO] * m for _ in range(m)]
    for k in range(n):
        rows[k][n + k] = ONE
        rows[n + k][k] = -ONE
    return ExactMatrix.from_rows(rows) if n else ExactMatrix(0, 0, ())


@dataclass(frozen=True)
class SymplecticSpace:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def form(self) -> ExactMatrix:
        return _standard_form(self.n)

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def lie_dim(self) -> int:
        """dim sp_2n = 2n^2 + n."""
        return 2 * self.n * self.n + self.n

    def omega(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        n = self.n
        return dot(u[:n], v[n:]) - dot(u[n:], v[:n])


def is_in_sp(mat: ExactMatrix, space: SymplecticSpace) -> bool:
    J = space.form
    if mat.shape != (space.dim, space.dim):
        return False
    return (mat.T @ J + J @ mat).is_zero()


def is_symplectic_matrix(g: ExactMatrix, space: SymplecticSpace) -> bool:
    """``g^T J g == J``."""
    if g.shape != (space.dim, space.dim):
        return False
    return g.T @ space.form @ g == space.form


class SpElement:
    """An element of sp_2n; membership is checked on construction."""

    __slots__ = ("space", "mat")

    def __init__(self, space: SymplecticSpace, mat: ExactMatrix):
        if not is_in_sp(mat, space):
            raise NotInSp(f"matrix is not in sp_{space.dim}")
        self.space = space
        self.mat = mat

    @classmethod
    def zero(cls, space: SymplecticSpace) -> "SpElement":
        return cls(space, ExactMatrix.zeros(space.dim))

    @classmethod
    def from_blocks(cls, space: SymplecticSpace, a, b, c) -> "SpElement":
        """Build ``[[A, B], [C, -A^T]]`` from n x n row lists."""
        n = space.n
        a = [vector(r) for r in a]
        b = [vector(r) for r in b]
        c = [vector(r) for r in c]
        rows = [list(a[i]) + list(b[i]) for i in range(n)]
        rows += [list(c[i]) + [-a[j][i] for j in range(n)] for i in range(n)]
        return cls(space, ExactMatrix.from_rows(rows) if n else ExactMatrix(0, 0, ()))

    def blocks(self) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
        n = self.space.n
        m = self.mat
        return m.block(0, n, 0, n), m.block(0, n, n, 2 * n), m.block(n, 2 * n, 0, n)

    def _check(self, other: "SpElement") -> None:
        if self.space != other.space:
            raise SpaceMismatch(f"sp_{self.space.dim} vs sp_{other.space.dim}")

    def __add__(self, other: "SpElement") -> "SpElement":
        self._check(other)
        return SpElement(self.space, self.mat + other.mat)

    def __sub__(self, other: "SpElement") -> "SpElement":
        self._check(other)
        return SpElement(self.space, self.mat - other.mat)

    def __neg__(self) -> "SpElement":
        return SpElement(self.space, -self.mat)

    def scale(self, c) -> "SpElement":
        return SpElement(self.space, self.mat.scale(c))

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def conjugate(self, g: ExactMatrix, g_inv: ExactMatrix | None = None) -> "SpElement":
        """``g x g^-1`` for a symplectic ``g``."""
        g_inv = g.inverse() if g_inv is None else g_inv
        return SpElement(self.space, g @ self.mat @ g_inv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpElement):
            return NotImplemented
        return self.space == other.space and self.mat == other.mat

    def __hash__(self) -> int:
        return hash((self.space, self.mat))

    def __repr__(self) -> str:
        return f"SpElement(n={self.space.n}, {self.mat!r})"


@dataclass(frozen=True)
class PhaseVector:
    """A vector of Q^2n split into Darboux coordinates ``p`` and ``q``."""

    space: SymplecticSpace
    p: Vector
    q: Vector

    def __post_init__(self):
        object.__setattr__(self, "p", vector(self.p))
        object.__setattr__(self, "q", vector(self.q))
        if len(self.p) != self.space.n or len(self.q) != self.space.n:
            raise ValueError("p and q must both have length n")

    @classmethod
    def from_vector(cls, space: SymplecticSpace, v: Sequence) -> "PhaseVector":
        v = vector(v)
        return cls(space, v[:space.n], v[space.n:])

    @classmethod
    def zero(cls, space: SymplecticSpace) -> "PhaseVector":
        return cls(space, (ZERO,) * space.n, (ZERO,) * space.n)

    @property
    def vec(self) -> Vector:
        return self.p + self.q

    def is_zero(self) -> bool:
        return not any(self.vec)

    def scale(self, c) -> "PhaseVector":
        c = as_rational(c)
        return PhaseVector(self.space, [c * a for a in self.p], [c * a for a in self.q])


@dataclass(frozen=True)
class CartanPoint:
    """``t`` standing for ``diag(t_1..t_n, -t_1..-t_n)``."""

    t: Vector

    def __post_init__(self):
        object.__setattr__(self, "t", vector(self.t))

    @property
    def n(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class SignedPermutation:
    """Element of the hyperoctahedral group W(C_n).

    ``perm`` is 0-based internally; acting on ``t`` gives
    ``(sign_k * t[perm[k]])_k``.  Composition ``(w1 * w2)`` acts as ``w1``
    after ``w2``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "signs", tuple(self.signs))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1, one per index")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def act(self, t: Sequence) -> Vector:
        return tuple(s * as_rational(t[j]) for s, j in zip(self.signs, self.perm))

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (w1 w2) t = w1 (w2 t):  [w1 (u)]_k = s1_k u[p1_k],  u_j = s2_j t[p2_j]
        return SignedPermutation(
            tuple(other.perm[j] for j in self.perm),
            tuple(s * other.signs[j] for s, j in zip(self.signs, self.perm)),
        )

    def inverse(self) -> "SignedPermutation":
        n = self.n
        perm = [0] * n
        signs = [1] * n
        for k, (s, j) in enumerate(zip(self.signs, self.perm)):
            perm[j] = k
            signs[j] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def symplectic_matrix(self) -> ExactMatrix:
        """Monomial symplectic ``g`` with ``g cartan_embed(t) g^-1 = cartan_embed(w t)``.

        A negative sign swaps the pair ``(p_j, q_j)`` with a sign so that the
        result stays symplectic.  The lift is not a group homomorphism (a
        sign flip lifts to an element of order 4), so invert ``g`` directly
        rather than lifting ``w.inverse()``.
        """
        n = self.n
        rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
        for k, (s, j) in enumerate(zip(self.signs, self.perm)):
            if s == 1:
                rows[k][j] = ONE
                rows[n + k][n + j] = ONE
            else:
                rows[k][n + j] = ONE
                rows[n + k][j] = -ONE
        return ExactMatrix.from_rows(rows)

    def to_json(self) -> dict:
        return {"perm": [j + 1 for j in self.perm], "signs": list(self.signs)}

    @classmethod
    def from_json(cls, data: dict) -> "SignedPermutation":
        return cls(tuple(j - 1 for j in data["perm"]), tuple(int(s) for s in data["signs"]))


def weyl_group(n: int) -> Iterator[SignedPermutation]:
    """All ``2^n n!`` elements in a fixed order."""
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


@dataclass(frozen=True)
class LeviType:
    """Levi ``prod GL_{n_i} x Sp_{2 n0}`` inside Sp_2n."""

    n0: int
    parts: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.n0 < 0 or any(p < 1 for p in self.parts):
            raise ValueError("n0 must be >= 0 and parts >= 1")

    @property
    def n(self) -> int:
        return self.n0 + sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)


# ---------------------------------------------------------------------------
# basis and coordinates


def _basis_layout(n: int) -> list[tuple[str, int, int]]:
    layout = [("A", a, b) for a in range(n) for b in range(n)]
    layout += [("B", a, b) for a in range(n) for b in range(a, n)]
    layout += [("C", a, b) for a in range(n) for b in range(a, n)]
    return layout


@lru_cache(maxsize=None)
def _basis_cached(n: int) -> tuple[ExactMatrix, ...]:
    out = []
    for kind, a, b in _basis_layout(n):
        rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
        if kind == "A":
            rows[a][b] = ONE
            rows[n + b][n + a] = -ONE
        elif kind == "B":
            rows[a][n + b] = ONE
            rows[b][n + a] = ONE
        else:
            rows[n + a][b] = ONE
            rows[n + b][a] = ONE
        out.append(ExactMatrix.from_rows(rows))
    return tuple(out)


def sp_basis(space: SymplecticSpace) -> list[SpElement]:
    """Ordered basis of sp_2n, size 2n^2 + n.

    A-units ``E_ab`` (with ``-E_ba`` in the lower-right block) in row-major
    order, then symmetric B-units ``E_ab + E_ba`` for ``a <= b``, then
    symmetric C-units for ``a <= b``.  Diagonal symmetric units are ``E_aa``.
    """
    return [SpElement(space, m) for m in _basis_cached(space.n)]


def sp_coords(x: SpElement | ExactMatrix, space: SymplecticSpace | None = None) -> Vector:
    """Coordinates of ``x`` in :func:`sp_basis` order (read off the blocks)."""
    mat = x.mat if isinstance(x, SpElement) else x
    n = (x.space.n if isinstance(x, SpElement) else space.n)
    out = []
    for kind, a, b in _basis_layout(n):
        if kind == "A":
            out.append(mat[a, b])
        elif kind == "B":
            out.append(mat[a, n + b])
        else:
            out.append(mat[n + a, b])
    return tuple(out)


def from_coords(space: SymplecticSpace, coords: Sequence) -> SpElement:
    coords = vector(coords)
    n = space.n
    rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for c, (kind, a, b) in zip(coords, _basis_layout(n)):
        if not c:
            continue
        if kind == "A":
            rows[a][b] += c
            rows[n + b][n + a] -= c
        elif kind == "B":
            rows[a][n + b] = c
            rows[b][n + a] = c
        else:
            rows[n + a][b] = c
            rows[n + b][a] = c
    return SpElement(space, ExactMatrix.from_rows(rows) if n else ExactMatrix(0, 0, ()))


def cartan_coord_indices(n: int) -> list[int]:
    """Positions of the diagonal A-units (the Cartan) in the basis order."""
    return [a * n + a for a in range(n)]


# ---------------------------------------------------------------------------
# operations


def bracket(x: SpElement, y: SpElement) -> SpElement:
    x._check(y)
    return SpElement(x.space, x.mat @ y.mat - y.mat @ x.mat)


def sigma_matrix(space: SymplecticSpace, i: Sequence[Fraction]) -> ExactMatrix:
    """``v -> omega(i, v) i`` as the matrix ``i i^T J``."""
    J = space.form
    row = ExactMatrix.from_rows([i]) @ J
    return ExactMatrix.column(i) @ row


def sigma(i: PhaseVector) -> SpElement:
    """The square ``i^2`` viewed as an element of sp_2n."""
    return SpElement(i.space, sigma_matrix(i.space, i.vec))


def sigma_polar(space: SymplecticSpace, i: Sequence[Fraction], di: Sequence[Fraction]) -> ExactMatrix:
    """Polarization ``v -> omega(i, v) di + omega(di, v) i``; derivative of sigma."""
    J = space.form
    i_col, di_col = ExactMatrix.column(i), ExactMatrix.column(di)
    return di_col @ (i_col.T @ J) + i_col @ (di_col.T @ J)


def trace_form(a: SpElement, b: SpElement) -> Fraction:
    a._check(b)
    return (a.mat @ b.mat).trace()


def gram_matrix(space: SymplecticSpace) -> ExactMatrix:
    basis = sp_basis(space)
    return ExactMatrix.from_rows([[trace_form(u, v) for v in basis] for u in basis])


def cartan_embed(h: CartanPoint) -> SpElement:
    space = SymplecticSpace(h.n)
    return SpElement(space, ExactMatrix.diag(list(h.t) + [-t for t in h.t]))


def cartan_part(x: SpElement) -> CartanPoint | None:
    """``t`` if ``x`` equals ``cartan_embed(t)``, else ``None``."""
    n = x.space.n
    m = x.mat
    if any(m[i, j] for i in range(2 * n) for j in range(2 * n) if i != j):
        return None
    return CartanPoint([m[k, k] for k in range(n)])


def is_regular(h: CartanPoint) -> bool:
    """No root ``+-2 t_k`` or ``+-t_k +- t_l`` vanishes."""
    t = h.t
    if any(v == 0 for v in t):
        return False
    absolute = [abs(v) for v in t]
    return len(set(absolute)) == len(absolute)


def ad_matrix(x: SpElement) -> ExactMatrix:
    """Matrix of ``z -> [x, z]`` on sp_2n in basis coordinates."""
    cols = [sp_coords(bracket(x, z)) for z in sp_basis(x.space)]
    return ExactMatrix.from_columns(cols) if cols else ExactMatrix(0, 0, ())


def centralizer_dim(x: SpElement) -> int:
    return x.space.lie_dim - rank(ad_matrix(x))


CartanPair = tuple[CartanPoint, CartanPoint]


def weyl_act(w: SignedPermutation, pair: CartanPair) -> CartanPair:
    a, b = pair
    return CartanPoint(w.act(a.t)), CartanPoint(w.act(b.t))


def weyl_canonical_form(pair: CartanPair) -> CartanPair:
    """Canonical representative of the diagonal W-orbit of ``pair``.

    Each coordinate pair ``(a_k, b_k)`` is replaced by the lexicographically
    larger of ``+-(a_k, b_k)``; the pairs are then sorted in descending order.
    """
    a, b = pair
    if a.n != b.n:
        raise ValueError("pair components must have equal length")
    pts = []
    for ak, bk in zip(a.t, b.t):
        pts.append(max((ak, bk), (-ak, -bk)))
    pts.sort(reverse=True)
    return CartanPoint([u for u, _ in pts]), CartanPoint([v for _, v in pts])


def phase_act(w: SignedPermutation, i: PhaseVector) -> PhaseVector:
    """Action on Q^2n through :meth:`SignedPermutation.symplectic_matrix`."""
    return PhaseVector.from_vector(i.space, w.symplectic_matrix().apply(i.vec))

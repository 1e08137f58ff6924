"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are immutable :class:`ExactMatrix` objects.  Rank, kernels and affine
solves go through a fraction-free (Bareiss) echelon form over the integers,
obtained by clearing denominators row by row.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import NonSplitSpectrum, NotSquare

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a ``Fraction``.

    Floats are refused: nothing in this package is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return not any(v)


class ExactMatrix:
    """Dense row-major matrix of rationals. Immutable and hashable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "ExactMatrix":
        if not columns:
            return cls(rows or 0, 0, ())
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        values = vector(values)
        n = len(values)
        return cls(n, n, (values[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        values = vector(values)
        return cls(len(values), 1, values)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix.from_rows([self.row(i)[c0:c1] for i in range(r0, r1)]) \
            if r1 > r0 else ExactMatrix(0, c1 - c0, ())

    # arithmetic -----------------------------------------------------------

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c) -> "ExactMatrix":
        c = as_rational(c)
        return ExactMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in ocols:
                out.append(sum((a * c[k] for k, a in nz if c[k]), ZERO))
        return ExactMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product ``m @ v`` as a tuple."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NotSquare(f"trace of {self.shape} matrix")
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def power(self, k: int) -> "ExactMatrix":
        if not self.is_square:
            raise NotSquare(f"power of {self.shape} matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse; raises ``ZeroDivisionError`` when singular."""
        if not self.is_square:
            raise NotSquare(f"inverse of {self.shape} matrix")
        n = self.rows
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [a * inv for a in aug[c]]
            for r in range(n):
                f = aug[r][c]
                if r != c and f:
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return ExactMatrix.from_rows([r[n:] for r in aug])

    @staticmethod
    def hstack(*ms: "ExactMatrix") -> "ExactMatrix":
        rows = ms[0].rows
        return ExactMatrix.from_rows([sum((m.row(i) for m in ms), ()) for i in range(rows)])

    @staticmethod
    def vstack(*ms: "ExactMatrix") -> "ExactMatrix":
        cols = ms[0].cols
        if any(m.cols != cols for m in ms):
            raise ValueError("column mismatch in vstack")
        return ExactMatrix(sum(m.rows for m in ms), cols, (e for m in ms for e in m.entries))

    # dunder ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# fraction-free elimination


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for e in r:
            if e.denominator != 1:
                den = den * e.denominator // math.gcd(den, e.denominator)
        out.append([int(e * den) for e in r])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix (in place).

    Returns the nonzero echelon rows and the pivot column of each.
    """
    m = rows
    nrows = len(m)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        pr = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pr[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _echelon(m: ExactMatrix) -> tuple[list[list[int]], list[int]]:
    return _bareiss(_integer_rows(m.to_rows()), m.cols)


def rank(m: ExactMatrix) -> int:
    """Rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_echelon(m)[1])


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int,
                     rhs: Sequence[Fraction], free_values: dict[int, Fraction]) -> list[Fraction]:
    x = [ZERO] * ncols
    for c, val in free_values.items():
        x[c] = val
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = ech[r]
        s = rhs[r] - sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), ZERO)
        x[c] = s / row[c]
    return x


def nullspace(m: ExactMatrix) -> list[Vector]:
    """Basis of the right kernel ``{v : m v = 0}``, one vector per free column."""
    n = m.cols
    if m.rows == 0:
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    ech, pivots = _echelon(m)
    pivset = set(pivots)
    zeros = [ZERO] * len(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        free = {c: (ONE if c == f else ZERO) for c in range(n) if c not in pivset}
        basis.append(tuple(_back_substitute(ech, pivots, n, zeros, free)))
    return basis


def solve_affine(a: ExactMatrix, b: Sequence) -> tuple[Vector, list[Vector]] | None:
    """Solve ``a x = b``.

    Returns ``None`` when ``b`` is outside the column span, otherwise a
    particular solution (free variables set to zero) and a kernel basis.
    """
    b = vector(b)
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    n = a.cols
    aug = ExactMatrix.hstack(a, ExactMatrix.column(b)) if a.rows else ExactMatrix(0, n + 1, ())
    if a.rows == 0:
        return tuple([ZERO] * n), nullspace(a)
    ech, pivots = _bareiss(_integer_rows(aug.to_rows()), n + 1)
    if pivots and pivots[-1] == n:
        return None
    rhs = [Fraction(row[n]) for row in ech]
    free = {c: ZERO for c in range(n) if c not in set(pivots)}
    x0 = tuple(_back_substitute(ech, pivots, n, rhs, free))
    return x0, nullspace(a)


def column_span_contains(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """True iff ``v`` lies in the span of ``basis`` (rank does not grow)."""
    if not basis:
        return is_zero_vector(v)
    base = ExactMatrix.from_rows(basis)
    return rank(ExactMatrix.vstack(base, ExactMatrix.from_rows([v]))) == rank(base)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPolynomial:
    """Polynomial over Q in one variable, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPolynomial is immutable")

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __add__(self, other: "UniPolynomial") -> "UniPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPolynomial((a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n))

    def __neg__(self) -> "UniPolynomial":
        return UniPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "UniPolynomial") -> "UniPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "UniPolynomial":
        if not isinstance(other, UniPolynomial):
            c = as_rational(other)
            return UniPolynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPolynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPolynomial") -> tuple["UniPolynomial", "UniPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [ZERO] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPolynomial(q), UniPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPolynomial":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> "UniPolynomial":
        return UniPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, value) -> Fraction:
        value = as_rational(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_matrix(self, m: ExactMatrix) -> ExactMatrix:
        """Horner evaluation at a square matrix."""
        if not m.is_square:
            raise NotSquare(f"cannot evaluate polynomial at {m.shape} matrix")
        ident = ExactMatrix.identity(m.rows)
        acc = ExactMatrix.zeros(m.rows)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "UniPolynomial(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c in (1, -1):
                s = ("-" if c < 0 else "+") + mono
            else:
                s = f"{'+' if c > 0 else '-'}{abs(c)}{mono}"
            terms.append(s)
        body = " ".join(terms).lstrip("+")
        return f"UniPolynomial({body})"


def poly_gcd(a: UniPolynomial, b: UniPolynomial) -> UniPolynomial:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def char_poly(m: ExactMatrix) -> UniPolynomial:
    """Monic characteristic polynomial ``det(t I - m)`` via Faddeev-LeVerrier."""
    if not m.is_square:
        raise NotSquare(f"char_poly of {m.shape} matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = ExactMatrix.identity(n)
    mk = ExactMatrix.zeros(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ mk).trace() / k
    return UniPolynomial(coeffs)


def minimal_poly(m: ExactMatrix) -> UniPolynomial:
    """First linear dependency among ``I, m, m^2, ...``, made monic."""
    if not m.is_square:
        raise NotSquare(f"minimal_poly of {m.shape} matrix")
    n = m.rows
    powers = [ExactMatrix.identity(n).entries]
    current = ExactMatrix.identity(n)
    for d in range(1, n + 1):
        current = current @ m
        powers.append(current.entries)
        kernel = nullspace(ExactMatrix.from_columns(powers))
        if kernel:
            # the first dependency is unique up to scale and uses m^d
            (v,) = kernel
            return UniPolynomial(v).monic()
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def is_semisimple(m: ExactMatrix) -> bool:
    """Diagonalizable over the algebraic closure: squarefree minimal polynomial."""
    mp = minimal_poly(m)
    return poly_gcd(mp, mp.derivative()).is_constant()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for p, e in factors.items():
        divs = [x * p ** k for x in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: UniPolynomial) -> tuple[list[tuple[Fraction, int]], UniPolynomial]:
    """Rational roots of ``p`` with multiplicity, plus the leftover cofactor.

    The cofactor is constant exactly when ``p`` splits over Q.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots: list[tuple[Fraction, int]] = []
    rest = p.monic()
    mult = 0
    while rest.degree > 0 and not rest.coeffs[0]:
        rest = UniPolynomial(rest.coeffs[1:])
        mult += 1
    if mult:
        roots.append((ZERO, mult))
    if rest.degree > 0:
        den = math.lcm(*(c.denominator for c in rest.coeffs))
        ints = [int(c * den) for c in rest.coeffs]
        candidates = set()
        for num, dd in product(_divisors(ints[0]), _divisors(ints[-1])):
            candidates.add(Fraction(num, dd))
            candidates.add(Fraction(-num, dd))
        for r in sorted(candidates):
            lin = UniPolynomial([-r, 1])
            mult = 0
            while rest.degree > 0:
                q, rem = divmod(rest, lin)
                if not rem.is_zero():
                    break
                rest = q
                mult += 1
            if mult:
                roots.append((r, mult))
    roots.sort()
    return roots, rest


def rational_eigensystem(m: ExactMatrix) -> list[tuple[Fraction, list[Vector]]]:
    """Distinct rational eigenvalues in increasing order with eigenspace bases.

    Raises ``NonSplitSpectrum`` when the characteristic polynomial has a
    non-rational root.
    """
    if not m.is_square:
        raise NotSquare(f"eigensystem of {m.shape} matrix")
    roots, rest = rational_roots(char_poly(m))
    if rest.degree > 0:
        raise NonSplitSpectrum(f"characteristic polynomial has irreducible factor {rest!r}")
    ident = ExactMatrix.identity(m.rows)
    return [(lam, nullspace(m - ident.scale(lam))) for lam, _ in roots]


def eigenvalues_with_multiplicity(m: ExactMatrix) -> list[tuple[Fraction, int]]:
    """Rational eigenvalues with algebraic multiplicity; requires a split spectrum."""
    roots, rest = rational_roots(char_poly(m))
    if rest.degree > 0:
        raise NonSplitSpectrum(f"characteristic polynomial has irreducible factor {rest!r}")
    return roots

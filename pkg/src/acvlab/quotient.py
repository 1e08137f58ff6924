"""Invariants on the quotient side: h+h modulo the diagonal Weyl action.

Commuting semisimple pairs in sp_2n are recorded by their joint spectrum
modulo W; trace words separate such pairs in practice.  On the Cartan side,
polynomials in ``h_1..h_n, k_1..k_n`` carry the canonical Poisson bracket
``{h_a, k_b} = delta_ab``, and the bounded-degree closure check confirms that
the two copies of Q[h]^W generate Q[h+h]^W as a Poisson algebra.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotCommuting, NotSemisimple
from .linalg import (
    ZERO,
    ExactMatrix,
    UniPolynomial,
    as_rational,
    char_poly,
    commutator,
    eigenvalues_with_multiplicity,
    is_semisimple,
    nullspace,
)
from .symplectic import CartanPair, CartanPoint, SpElement, weyl_canonical_form, weyl_group

Exponent = tuple  # tuple[int, ...] of length 2n: h-exponents then k-exponents


class MultiPolynomial:
    """Polynomial in ``h_1..h_n, k_1..k_n`` with rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                if len(e) != 2 * n:
                    raise ValueError(f"exponent {e} has wrong length for n={n}")
                clean[tuple(e)] = c
        self.terms: dict[Exponent, Fraction] = clean

    @classmethod
    def constant(cls, n: int, c=1) -> "MultiPolynomial":
        return cls(n, {(0,) * (2 * n): c})

    @classmethod
    def h(cls, n: int, a: int) -> "MultiPolynomial":
        e = [0] * (2 * n)
        e[a] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def k(cls, n: int, a: int) -> "MultiPolynomial":
        e = [0] * (2 * n)
        e[n + a] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def power_sum(cls, n: int, degree: int, second: bool = False) -> "MultiPolynomial":
        """``sum_a h_a^degree`` (or of ``k_a`` when ``second``)."""
        terms = {}
        for a in range(n):
            e = [0] * (2 * n)
            e[a + (n if second else 0)] = degree
            terms[tuple(e)] = 1
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPolynomial(self.n, out)

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "MultiPolynomial":
        if not isinstance(other, MultiPolynomial):
            c = as_rational(other)
            return MultiPolynomial(self.n, {e: c * v for e, v in self.terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPolynomial(self.n, out)

    __rmul__ = __mul__

    def diff(self, var: int) -> "MultiPolynomial":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = c * e[var]
        return MultiPolynomial(self.n, out)

    def evaluate(self, h: Sequence, k: Sequence) -> Fraction:
        vals = [as_rational(v) for v in list(h) + list(k)]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            total += term
        return total

    def substitute_weyl(self, perm: Sequence[int], signs: Sequence[int]) -> "MultiPolynomial":
        """``f(w.(h, k))``: the exponent of variable ``a`` moves to index ``perm[a]``."""
        n = self.n
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * (2 * n)
            sign = 1
            for a in range(n):
                j = perm[a]
                e2[j] = e[a]
                e2[n + j] = e[n + a]
                if signs[a] == -1 and (e[a] + e[n + a]) % 2:
                    sign = -sign
            key = tuple(e2)
            out[key] = out.get(key, ZERO) + sign * c
        return MultiPolynomial(n, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPolynomial(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                (f"{'h' if v < self.n else 'k'}{v % self.n + 1}" + (f"^{p}" if p > 1 else ""))
                for v, p in enumerate(e) if p
            )
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return "MultiPolynomial(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {",".join(map(str, e)): str(c) for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, n: int, data: Mapping[str, str]) -> "MultiPolynomial":
        return cls(n, {tuple(int(v) for v in key.split(",")): val for key, val in data.items()})


def poisson_bracket(f: MultiPolynomial, g: MultiPolynomial) -> MultiPolynomial:
    """``sum_a df/dh_a dg/dk_a - df/dk_a dg/dh_a``."""
    if f.n != g.n:
        raise ValueError("polynomials live in different rings")
    n = f.n
    out = MultiPolynomial(n)
    for a in range(n):
        out = out + f.diff(a) * g.diff(n + a) - f.diff(n + a) * g.diff(a)
    return out


class PolySpan:
    """Incrementally maintained linear span of polynomials.

    Each stored element has a distinct leading monomial (largest exponent
    tuple) with coefficient one, which is enough to reduce any polynomial to
    a normal form and decide membership.
    """

    def __init__(self, n: int):
        self.n = n
        self.pivots: dict[Exponent, dict[Exponent, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, f: MultiPolynomial) -> dict[Exponent, Fraction]:
        terms = dict(f.terms)
        done: dict[Exponent, Fraction] = {}
        while terms:
            lead = max(terms)
            c = terms.pop(lead)
            row = self.pivots.get(lead)
            if row is None:
                done[lead] = c
                continue
            for e, v in row.items():
                if e != lead:
                    nv = terms.get(e, ZERO) - c * v
                    if nv:
                        terms[e] = nv
                    else:
                        terms.pop(e, None)
        return done

    def add(self, f: MultiPolynomial) -> bool:
        """Insert ``f``; returns True iff the span grew."""
        rem = self.reduce(f)
        if not rem:
            return False
        lead = max(rem)
        inv = 1 / rem[lead]
        self.pivots[lead] = {e: c * inv for e, c in rem.items()}
        return True

    def contains(self, f: MultiPolynomial) -> bool:
        return not self.reduce(f)

    def basis(self) -> list[MultiPolynomial]:
        return [MultiPolynomial(self.n, row) for _, row in sorted(self.pivots.items())]

    def dims_by_degree(self, max_degree: int) -> list[int]:
        counts = [0] * (max_degree + 1)
        for lead in self.pivots:
            counts[sum(lead)] += 1
        return counts


# ---------------------------------------------------------------------------
# Weyl invariants


def _monomials(nvars: int, degree: int) -> Iterator[Exponent]:
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


def reynolds(f: MultiPolynomial) -> MultiPolynomial:
    """Sum of ``f`` over the diagonal hyperoctahedral action (unnormalized)."""
    out = MultiPolynomial(f.n)
    for w in weyl_group(f.n):
        out = out + f.substitute_weyl(w.perm, w.signs)
    return out


def is_weyl_invariant(f: MultiPolynomial) -> bool:
    return all(f.substitute_weyl(w.perm, w.signs) == f for w in weyl_group(f.n))


def invariant_span(n: int, max_degree: int) -> PolySpan:
    span = PolySpan(n)
    for d in range(max_degree + 1):
        if d % 2:
            # -1 lies in W, so odd-degree invariants vanish
            continue
        for e in _monomials(2 * n, d):
            avg = reynolds(MultiPolynomial(n, {e: 1}))
            if not avg.is_zero():
                span.add(avg)
    return span


def invariant_space(n: int, max_degree: int) -> list[MultiPolynomial]:
    """Basis of W-invariant polynomials of degree <= ``max_degree``."""
    return invariant_span(n, max_degree).basis()


@dataclass
class WallachReport:
    n: int
    degree_bound: int
    reached_dim: int
    full_dim: int
    reached_by_degree: list[int]
    full_by_degree: list[int]
    passes: int
    seconds: float = 0.0
    note: str = ("bounded-degree evidence only: agreement up to the degree bound "
                 "does not prove generation in all degrees")

    @property
    def passed(self) -> bool:
        return self.reached_dim == self.full_dim

    def to_json(self) -> dict:
        return {
            "config": {"n": self.n, "degree_bound": self.degree_bound},
            "reached_dim": self.reached_dim,
            "full_dim": self.full_dim,
            "reached_by_degree": self.reached_by_degree,
            "full_by_degree": self.full_by_degree,
            "passes": self.passes,
            "pass": self.passed,
            "note": self.note,
        }


def wallach_seeds(n: int) -> list[MultiPolynomial]:
    seeds = [MultiPolynomial.constant(n)]
    for m in range(1, n + 1):
        seeds.append(MultiPolynomial.power_sum(n, 2 * m))
        seeds.append(MultiPolynomial.power_sum(n, 2 * m, second=True))
    return seeds


def poisson_closure(seeds: Iterable[MultiPolynomial], max_degree: int) -> tuple[PolySpan, int]:
    """Span of the Poisson algebra generated by ``seeds``, truncated at ``max_degree``.

    Products and brackets above the bound are discarded.  New elements are
    combined with everything found so far until a pass adds nothing.
    """
    seeds = list(seeds)
    n = seeds[0].n
    span = PolySpan(n)
    elements: list[MultiPolynomial] = []
    for s in seeds:
        if s.degree <= max_degree and span.add(s):
            elements.append(s)
    frontier = range(len(elements))
    passes = 0
    while frontier:
        passes += 1
        new_start = len(elements)
        for a in frontier:
            for b in range(new_start):
                if b in frontier and b < a:
                    continue
                f, g = elements[a], elements[b]
                if f.degree + g.degree <= max_degree:
                    prod_ = f * g
                    if span.add(prod_):
                        elements.append(prod_)
                if f.degree + g.degree - 2 <= max_degree:
                    br = poisson_bracket(f, g)
                    if not br.is_zero() and br.degree <= max_degree and span.add(br):
                        elements.append(br)
        frontier = range(new_start, len(elements))
    return span, passes


def wallach_generation_check(n: int, max_degree: int) -> WallachReport:
    """Compare the Poisson closure of the two copies of Q[h]^W with Q[h+h]^W."""
    start = time.perf_counter()
    closure, passes = poisson_closure(wallach_seeds(n), max_degree)
    full = invariant_span(n, max_degree)
    # the closure consists of invariants, so equal dimension means equal spaces
    assert all(full.contains(f) for f in closure.basis()), "closure left the invariants"
    return WallachReport(
        n=n,
        degree_bound=max_degree,
        reached_dim=len(closure),
        full_dim=len(full),
        reached_by_degree=closure.dims_by_degree(max_degree),
        full_by_degree=full.dims_by_degree(max_degree),
        passes=passes,
        seconds=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# commuting semisimple pairs


@dataclass(frozen=True)
class SpectralPairs:
    pairs: tuple[tuple[Fraction, Fraction], ...]

    @property
    def as_cartan(self) -> CartanPair:
        return CartanPoint([a for a, _ in self.pairs]), CartanPoint([b for _, b in self.pairs])


def joint_spectrum(x: SpElement, y: SpElement) -> SpectralPairs:
    """W-canonical joint spectrum of a commuting pair of split semisimple elements."""
    x._check(y)
    if not commutator(x.mat, y.mat).is_zero():
        raise NotCommuting("[x, y] != 0")
    if not (is_semisimple(x.mat) and is_semisimple(y.mat)):
        raise NotSemisimple("x and y must both be semisimple")
    n = x.space.n
    spec_x = eigenvalues_with_multiplicity(x.mat)
    spec_y = eigenvalues_with_multiplicity(y.mat)
    ident = ExactMatrix.identity(2 * n)
    joint: dict[tuple[Fraction, Fraction], int] = {}
    for lam, _ in spec_x:
        xs = x.mat - ident.scale(lam)
        for mu, _ in spec_y:
            d = len(nullspace(ExactMatrix.vstack(xs, y.mat - ident.scale(mu))))
            if d:
                joint[(lam, mu)] = d
    assert sum(joint.values()) == 2 * n, "joint eigenspaces do not fill the space"
    reps: list[tuple[Fraction, Fraction]] = []
    for (lam, mu), d in sorted(joint.items()):
        if (lam, mu) == (ZERO, ZERO):
            assert d % 2 == 0
            reps += [(lam, mu)] * (d // 2)
        elif (lam, mu) > (-lam, -mu):
            assert joint.get((-lam, -mu)) == d, "spectrum is not symmetric"
            reps += [(lam, mu)] * d
    a, b = weyl_canonical_form((CartanPoint([p for p, _ in reps]), CartanPoint([q for _, q in reps])))
    return SpectralPairs(tuple(zip(a.t, b.t)))


@dataclass(frozen=True)
class TraceWord:
    """``tr(x^a1 y^b1 x^a2 y^b2 ...)``."""

    word: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple((int(a), int(b)) for a, b in self.word))
        if not self.word or any(a < 0 or b < 0 for a, b in self.word) or self.degree < 1:
            raise ValueError("trace word needs nonnegative exponents and degree >= 1")

    @property
    def degree(self) -> int:
        return sum(a + b for a, b in self.word)

    @classmethod
    def from_letters(cls, letters: str) -> "TraceWord":
        """``"xxyx"`` -> ``[(2, 1), (1, 0)]``."""
        word = []
        for ch in letters:
            if ch == "x":
                if word and word[-1][1] == 0:
                    word[-1] = (word[-1][0] + 1, 0)
                else:
                    word.append((1, 0))
            elif ch == "y":
                if word:
                    word[-1] = (word[-1][0], word[-1][1] + 1)
                else:
                    word.append((0, 1))
            else:
                raise ValueError(f"unknown letter {ch!r}")
        return cls(tuple(word))

    def letters(self) -> str:
        return "".join("x" * a + "y" * b for a, b in self.word)


def trace_word_invariant(x: SpElement, y: SpElement, w: TraceWord) -> Fraction:
    m = ExactMatrix.identity(x.space.dim)
    for a, b in w.word:
        if a:
            m = m @ x.mat.power(a)
        if b:
            m = m @ y.mat.power(b)
    return m.trace()


def trace_words(max_degree: int) -> list[TraceWord]:
    """One word per cyclic class of x/y strings of length 1..max_degree."""
    seen = set()
    out = []
    for d in range(1, max_degree + 1):
        for letters in product("xy", repeat=d):
            s = "".join(letters)
            canon = min(s[r:] + s[:r] for r in range(d))
            if canon not in seen:
                seen.add(canon)
                out.append(TraceWord.from_letters(canon))
    return out


@dataclass
class ConsistencyReport:
    spectra: tuple[SpectralPairs, SpectralPairs]
    spectra_equal: bool
    invariants_equal: bool
    words_checked: int
    separating_word: str | None = None
    values: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.spectra_equal == self.invariants_equal


def quotient_consistency_check(p1: tuple[SpElement, SpElement], p2: tuple[SpElement, SpElement],
                               max_degree: int) -> ConsistencyReport:
    """Compare canonical spectra with every trace word of degree <= ``max_degree``.

    Equal spectra force equal trace words; the converse is checked per
    instance and reported through ``separating_word``.
    """
    s1, s2 = joint_spectrum(*p1), joint_spectrum(*p2)
    separating = None
    words = trace_words(max_degree)
    for w in words:
        v1, v2 = trace_word_invariant(*p1, w), trace_word_invariant(*p2, w)
        if v1 != v2:
            separating = w.letters()
            break
    return ConsistencyReport(
        spectra=(s1, s2),
        spectra_equal=s1 == s2,
        invariants_equal=separating is None,
        words_checked=len(words),
        separating_word=separating,
    )


@dataclass(frozen=True)
class RestrictionReport:
    char_poly: UniPolynomial
    cartan: CartanPoint
    expected: UniPolynomial

    @property
    def passed(self) -> bool:
        return self.char_poly == self.expected

    @property
    def elementary_symmetric(self) -> list[Fraction]:
        """``e_m(t_1^2..t_n^2)`` for m = 1..n."""
        n = self.cartan.n
        return [(-1) ** m * self.expected.coeffs[2 * (n - m)] for m in range(1, n + 1)]


def restriction_check(x: SpElement) -> RestrictionReport:
    """``char_poly(x) == prod_k (t^2 - t_k^2)`` for the eigenvalues ``+-t_k``."""
    if not is_semisimple(x.mat):
        raise NotSemisimple("x must be semisimple")
    n = x.space.n
    eig = dict(eigenvalues_with_multiplicity(x.mat))
    reps = []
    for lam, mult in sorted(eig.items(), reverse=True):
        if lam > 0:
            reps += [lam] * mult
        elif lam == 0:
            reps += [lam] * (mult // 2)
    assert len(reps) == n, "spectrum of an sp element must be symmetric"
    expected = UniPolynomial([1])
    for t in reps:
        expected = expected * UniPolynomial([-t * t, 0, 1])
    return RestrictionReport(char_poly(x.mat), CartanPoint(reps), expected)

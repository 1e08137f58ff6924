"""Seeded random inputs drawn from small integer ranges.

Every trial gets its own ``random.Random`` derived from ``(seed, index)``, so
trials can run in any order or concurrently without changing their content.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import ExactMatrix
from .scheme import ACVPoint, Choice, sample_regular_point
from .symplectic import CartanPoint, SignedPermutation, SpElement, cartan_embed

# documented in every suite report header
RANGES = {
    "regular_t": "distinct absolute values in 1..2n+3, random signs",
    "free_coords": "nonzero integers in -3..3",
    "fiber": "integers in -3..3",
    "conjugator": "product of 3 elementary symplectic matrices, entries in -2..2",
    "cartan": "integers in -4..4",
}


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random((seed & 0xFFFFFFFFFFFFFFFF) * 1_000_003 + index)


def random_regular_cartan(rng: random.Random, n: int) -> CartanPoint:
    values = rng.sample(range(1, 2 * n + 4), n)
    return CartanPoint([v * rng.choice((1, -1)) for v in values])


def random_cartan(rng: random.Random, n: int, bound: int = 4) -> CartanPoint:
    return CartanPoint([rng.randint(-bound, bound) for _ in range(n)])


def random_sign_vector(rng: random.Random, n: int) -> tuple:
    return tuple(rng.choice((Choice.P, Choice.Q)) for _ in range(n))


def random_free_coords(rng: random.Random, n: int) -> list[int]:
    return [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(n)]


def random_signed_permutation(rng: random.Random, n: int) -> SignedPermutation:
    perm = list(range(n))
    rng.shuffle(perm)
    return SignedPermutation(tuple(perm), tuple(rng.choice((1, -1)) for _ in range(n)))


@dataclass(frozen=True)
class Conjugator:
    g: ExactMatrix
    g_inv: ExactMatrix


def _elementary(rng: random.Random, n: int) -> tuple[ExactMatrix, ExactMatrix]:
    """One elementary symplectic matrix and its inverse.

    Shears ``[[I, S], [0, I]]`` / ``[[I, 0], [S, I]]`` with ``S`` symmetric,
    or ``diag(U, U^-T)`` with ``U`` unit upper triangular.
    """
    kind = rng.choice(("upper", "lower", "levi"))
    ident = ExactMatrix.identity(n)
    zero = ExactMatrix.zeros(n)
    if kind in ("upper", "lower"):
        s = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                s[a][b] = s[b][a] = rng.randint(-2, 2)
        S = ExactMatrix.from_rows(s)
        if kind == "upper":
            g = ExactMatrix.vstack(ExactMatrix.hstack(ident, S), ExactMatrix.hstack(zero, ident))
            gi = ExactMatrix.vstack(ExactMatrix.hstack(ident, -S), ExactMatrix.hstack(zero, ident))
        else:
            g = ExactMatrix.vstack(ExactMatrix.hstack(ident, zero), ExactMatrix.hstack(S, ident))
            gi = ExactMatrix.vstack(ExactMatrix.hstack(ident, zero), ExactMatrix.hstack(-S, ident))
        return g, gi
    u = [[(1 if a == b else (rng.randint(-2, 2) if b > a else 0)) for b in range(n)] for a in range(n)]
    U = ExactMatrix.from_rows(u)
    U_inv = U.inverse()
    g = ExactMatrix.vstack(ExactMatrix.hstack(U, zero), ExactMatrix.hstack(zero, U_inv.T))
    gi = ExactMatrix.vstack(ExactMatrix.hstack(U_inv, zero), ExactMatrix.hstack(zero, U.T))
    return g, gi


def random_symplectic(rng: random.Random, n: int, factors: int = 3) -> Conjugator:
    g = gi = ExactMatrix.identity(2 * n)
    for _ in range(factors):
        e, ei = _elementary(rng, n)
        g = e @ g
        gi = gi @ ei
    return Conjugator(g, gi)


def random_point(rng: random.Random, n: int) -> ACVPoint:
    """Sampler output over a random regular ``t`` with nonzero free coordinates."""
    return sample_regular_point(
        n,
        random_regular_cartan(rng, n),
        random_sign_vector(rng, n),
        random_free_coords(rng, n),
        random_cartan(rng, n, 3),
    )


def random_rank_one_pair(rng: random.Random, n: int, conjugate: bool = True) -> tuple[SpElement, SpElement]:
    """A Q-split pair with commutator of rank <= 1.

    Every fifth draw or so is a commuting Cartan pair; the rest come from the
    sampler.  Both are moved off the diagonal by a random symplectic matrix.
    """
    if rng.random() < 0.2:
        x, y = cartan_embed(random_cartan(rng, n)), cartan_embed(random_cartan(rng, n))
    else:
        pt = random_point(rng, n)
        x, y = pt.x, pt.y
    if conjugate:
        c = random_symplectic(rng, n)
        x, y = x.conjugate(c.g, c.g_inv), y.conjugate(c.g, c.g_inv)
    return x, y


def random_commuting_semisimple(rng: random.Random, n: int) -> tuple[tuple[CartanPoint, CartanPoint], Conjugator]:
    t, s = random_cartan(rng, n), random_cartan(rng, n)
    return (t, s), random_symplectic(rng, n)

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from acvlab.linalg import ExactMatrix

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, square=False, elements=small_rationals):
    rows = draw(st.integers(1, max_rows))
    cols = rows if square else draw(st.integers(1, max_cols))
    entries = draw(st.lists(elements, min_size=rows * cols, max_size=rows * cols))
    return ExactMatrix(rows, cols, entries)


@st.composite
def low_rank_matrices(draw, max_dim=6):
    """Products of thin factors so that rank deficiency actually occurs."""
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    inner = draw(st.integers(1, max(1, min(rows, cols) - 1)))
    ints = st.integers(-3, 3)
    a = ExactMatrix(rows, inner, draw(st.lists(ints, min_size=rows * inner, max_size=rows * inner)))
    b = ExactMatrix(inner, cols, draw(st.lists(ints, min_size=inner * cols, max_size=inner * cols)))
    return a @ b


@pytest.fixture
def F():
    return Fraction


@st.composite
def sp_elements(draw, n, bound=3):
    from acvlab.symplectic import SymplecticSpace, from_coords

    space = SymplecticSpace(n)
    coords = draw(st.lists(st.integers(-bound, bound), min_size=space.lie_dim, max_size=space.lie_dim))
    return from_coords(space, coords)


@st.composite
def phase_vectors(draw, n, bound=3):
    from acvlab.symplectic import PhaseVector, SymplecticSpace

    coords = draw(st.lists(st.integers(-bound, bound), min_size=2 * n, max_size=2 * n))
    return PhaseVector.from_vector(SymplecticSpace(n), coords)

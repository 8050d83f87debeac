import random

from hypothesis import strategies as st

from heavycol import BinaryMatrix


@st.composite
def matrices(draw, max_n=5, max_m=8, distinct_rows=False):
    """Arbitrary small matrices; ordered rows, duplicates allowed by default."""
    n = draw(st.integers(1, max_n))
    top = 2**n - 1
    if distinct_rows:
        rows = draw(st.sets(st.integers(0, top), min_size=1, max_size=min(max_m, top + 1)))
        rows = list(rows)
        draw(st.randoms(use_true_random=False)).shuffle(rows)
    else:
        rows = draw(st.lists(st.integers(0, top), min_size=1, max_size=max_m))
    return BinaryMatrix(tuple(rows), n)


def shuffled_rows(matrix, seed):
    rows = list(matrix.rows)
    random.Random(seed).shuffle(rows)
    return BinaryMatrix(tuple(rows), matrix.n)

from fractions import Fraction

from hypothesis import strategies as st

from constrank.matrix import QMatrix
from constrank.poly import MPoly

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
PARAMS = ["t1", "t2", "t3"]


@st.composite
def mpolys(draw, max_terms=5, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {v: draw(st.integers(0, max_exp)) for v in draw(st.sets(st.sampled_from(PARAMS), max_size=3))}
        terms[tuple(sorted((k, e) for k, e in exps.items() if e))] = draw(rationals)
    return MPoly(terms)


@st.composite
def qmatrices(draw, max_rows=5, max_cols=5, entries=small_ints):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return QMatrix.from_rows([[draw(entries) for _ in range(n)] for _ in range(m)], n)


@st.composite
def symmetric_qmatrices(draw, max_n=5, entries=small_ints):
    n = draw(st.integers(1, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(entries)
    return QMatrix.from_rows(rows)


def point_strategy(names):
    return st.fixed_dictionaries({v: rationals for v in names})


@st.composite
def square_qmatrices(draw, max_n=5, entries=small_ints):
    n = draw(st.integers(1, max_n))
    return QMatrix.from_rows([[draw(entries) for _ in range(n)] for _ in range(n)])

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from symprod.linalg import EchelonBasis, add_scaled, rank, solve

rows_strategy = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4).map(Fraction), max_size=4),
    max_size=6,
)


def _dense_rank(rows, ncols=6):
    # plain Gauss-Jordan on a dense copy
    m = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def test_add_scaled_drops_cancelled_entries():
    v = {0: Fraction(1), 1: Fraction(2)}
    add_scaled(v, {1: 1, 3: 1}, -2)
    assert v == {0: 1, 3: -2}


def test_rank_small_examples():
    assert rank([]) == 0
    assert rank([{0: 1, 1: 1}, {0: 2, 1: 2}]) == 1
    assert rank([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
    assert rank([{0: Fraction(1, 3)}, {0: Fraction(2, 7), 2: 1}]) == 2


@settings(max_examples=100, deadline=None)
@given(rows_strategy)
def test_rank_matches_dense_elimination(rows):
    assert rank(rows) == _dense_rank(rows)
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    assert basis.rank == rank(rows)


@settings(max_examples=100, deadline=None)
@given(rows_strategy)
def test_echelon_rows_have_unit_pivots_and_contain_inputs(rows):
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    basis.fully_reduce()
    for p, row in basis.rows.items():
        assert row[p] == 1 and max(row) == p
        assert all(q == p or q not in row for q in basis.rows)
    assert all(basis.contains(r) for r in rows)


@settings(max_examples=100, deadline=None)
@given(rows_strategy, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_finds_combination_when_one_exists(cols, weights):
    target: dict = {}
    for c, w in zip(cols, weights):
        add_scaled(target, c, w)
    coeffs = solve(cols, target)
    assert coeffs is not None
    back: dict = {}
    for c, w in zip(cols, coeffs):
        add_scaled(back, c, w)
    assert back == target


def test_solve_reports_inconsistency():
    assert solve([{0: 1}], {1: 1}) is None
    assert solve([], {}) == []

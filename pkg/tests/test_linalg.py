import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quivergrad import _kernel_py
from quivergrad.linalg import (Echelon, Quotient, echelon, intersect_rowspaces, kernel_basis,
                               rank, row_space_contains, rref, solve_left)


def matrices(max_rows=6, max_cols=6, lo=-4, hi=4):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=0, max_size=max_rows).map(lambda m: (m, n)))


def test_rref_small():
    rows, piv = rref([[2, 4], [1, 3]])
    assert rows == [[1, 0], [0, 1]]
    assert piv == [0, 1]
    rows, piv = rref([[0, 0, 3], [0, 2, 1]])
    assert piv == [1, 2]
    assert rows[0] == [0, 1, 0]


def test_rref_keeps_shape():
    rows, piv = rref([[1, 1], [2, 2], [3, 3]])
    assert len(rows) == 3
    assert rows[1] == [0, 0] and rows[2] == [0, 0]
    assert piv == [0]


def test_kernel_examples():
    assert kernel_basis([[1, 2], [1, 2]], 2) == [[F(1), F(-1, 2)]]
    assert kernel_basis([], 2) == [[1, 0], [0, 1]]
    assert kernel_basis([[1, 0], [0, 1]], 2) == []


def test_intersect_examples():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[0, 1, 0], [0, 0, 1]]
    assert intersect_rowspaces([a, b], 3) == [[0, 1, 0]]
    assert intersect_rowspaces([a, []], 3) == []


def test_ncols_needed_for_empty():
    with pytest.raises(ValueError):
        echelon([])
    with pytest.raises(ValueError):
        rref([[1, 2], [1]])


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rref_matches_sympy(mn):
    m, n = mn
    rows, piv = rref(m, n)
    if m:
        ref, sp = sympy.Matrix(m).rref()
        assert list(sp) == piv
        assert [[F(int(x.p), int(x.q)) for x in ref.row(i)] for i in range(len(m))] == rows
    else:
        assert rows == [] and piv == []


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_kernel_is_kernel(mn):
    m, n = mn
    ker = kernel_basis(m, n)
    assert len(ker) == n - rank(m, n)
    for v in ker:
        for r in m:
            assert sum(a * b for a, b in zip(r, v)) == 0


@given(matrices(4, 5), matrices(4, 5))
@settings(max_examples=60, deadline=None)
def test_intersection_dimension(a, b):
    (ma, na), (mb, nb) = a, b
    n = min(na, nb)
    ma = [r[:n] for r in ma]
    mb = [r[:n] for r in mb]
    inter = intersect_rowspaces([ma, mb], n)
    ra, rb, rs = rank(ma, n), rank(mb, n), rank(ma + mb, n)
    assert len(inter) == ra + rb - rs
    for v in inter:
        assert row_space_contains(ma, v, n) and row_space_contains(mb, v, n)


@given(matrices(5, 5))
@settings(max_examples=60, deadline=None)
def test_solve_left_roundtrip(mn):
    m, n = mn
    if not m:
        return
    rng = random.Random(len(m) * 7 + n)
    coeffs = [rng.randint(-2, 2) for _ in m]
    target = [sum(c * r[j] for c, r in zip(coeffs, m)) for j in range(n)]
    x = solve_left(m, target, n)
    assert x is not None
    assert [sum(c * r[j] for c, r in zip(x, m)) for j in range(n)] == target


def test_solve_left_inconsistent():
    assert solve_left([[1, 0]], [0, 1], 2) is None
    assert solve_left([], [0, 0], 2) == []


def test_echelon_incremental_matches_batch():
    rng = random.Random(3)
    rows = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(7)]
    e = Echelon(5)
    for r in rows:
        e.add(r)
    assert e.rows == echelon(rows, 5)[0]


def test_quotient_coords():
    q = Quotient(3, [[1, 1, 0]])
    assert q.dim == 2
    # e0 == -e1 modulo the subspace
    assert q.coords([1, 0, 0]) == [-1, 0]


@given(matrices(8, 8, -50, 50))
@settings(max_examples=60, deadline=None)
def test_kernels_agree(mn):
    from quivergrad import _backend

    m, n = mn
    assert _backend.rref_int(m, n) == _kernel_py.rref_int(m, n)


def test_compiled_kernel_handles_big_entries():
    from quivergrad import _backend

    big = 2 ** 40
    m = [[big, 1, 3], [7, big + 1, 2], [5, 9, big * 3]]
    assert _backend.rref_int(m, 3) == _kernel_py.rref_int(m, 3)
    rng = random.Random(11)
    dense = [[rng.randint(-9, 9) for _ in range(30)] for _ in range(28)]
    assert _backend.rref_int(dense, 30) == _kernel_py.rref_int(dense, 30)

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from toricsalvetti.exactmath import (
    IntMatrix, LinearSystem, determinant, feasible, gf2_rank, integer_rank, inverse, nullspace, primitive,
    rank_q, smith_normal_form, solve_affine,
)


def _is_unimodular(M):
    return abs(determinant(M.tolist())) == 1


def _check_snf(A, res):
    assert res.U @ A @ res.V == res.D
    assert res.D.is_diagonal()
    assert _is_unimodular(res.U) and _is_unimodular(res.V)
    f = res.invariant_factors
    assert all(d > 0 for d in f)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.integers(-9, 9), min_size=m * n, max_size=m * n).map(
            lambda e: IntMatrix(m, n, e))))


def test_snf_known_values():
    A = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    res = smith_normal_form(A)
    assert res.invariant_factors == [2, 6, 12]
    _check_snf(A, res)


def test_snf_torsion_of_rp2_boundary():
    # 2-cell attached by degree 2 to a circle: single factor 2
    A = IntMatrix.from_rows([[2]])
    assert smith_normal_form(A).invariant_factors == [2]


def test_snf_zero_and_empty():
    assert smith_normal_form(IntMatrix(3, 2)).rank == 0
    assert smith_normal_form(IntMatrix(0, 4)).rank == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_property(A):
    res = smith_normal_form(A)
    _check_snf(A, res)
    assert smith_normal_form(A, transforms=False).D == res.D
    assert res.rank == rank_q(A.tolist())


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_gf2_rank_matches_brute_force_on_small(A):
    rows = [[v % 2 for v in r] for r in A.tolist()]
    # rank over F2 = log2 of the size of the row space
    span = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 2 for j in range(A.cols)))
    assert 2 ** gf2_rank(rows) == len(span)


def test_determinant_and_inverse():
    M = [[2, 1], [7, 4]]
    assert determinant(M) == 1
    assert inverse(M) == [[4, -1], [-7, 2]]
    assert determinant([[1, 2], [2, 4]]) == 0
    assert integer_rank(IntMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_nullspace_and_solve():
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2
    assert all(sum(v) == 0 for v in ns)
    p, basis = solve_affine([[1, 1]], [Fraction(1, 2)], 2)
    assert p[0] + p[1] == Fraction(1, 2) and len(basis) == 1
    assert solve_affine([[1, 1], [1, 1]], [0, 1], 2) is None


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_feasible_open_triangle():
    s = LinearSystem(2, strict=[((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])
    x = feasible(s)
    assert x is not None and s.satisfied_by(x)


def test_feasible_detects_empty():
    assert feasible(LinearSystem(1, strict=[((1,), 0), ((-1,), 0)])) is None
    assert feasible(LinearSystem(1, nonstrict=[((1,), 0), ((-1,), 0)])) == (0,)
    s = LinearSystem(2, strict=[((1, 0), 0)], equalities=[((1, 0), 1)])
    assert feasible(s) is None


def test_feasible_unbounded_direction():
    s = LinearSystem(3, strict=[((1, 0, 0), 5)])
    x = feasible(s)
    assert x is not None and s.satisfied_by(x)


def test_feasible_dimension_mismatch():
    with pytest.raises(ValueError):
        feasible(LinearSystem(2, strict=[((1,), 0)]))


coef = st.integers(-4, 4)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.tuples(st.tuples(coef, coef), st.integers(-5, 5), st.booleans()), min_size=1, max_size=6))
def test_feasible_agrees_with_grid_search(rows):
    # a returned witness must satisfy the system; a grid point that does forces a witness
    s = LinearSystem(2)
    for a, c, strict in rows:
        (s.strict if strict else s.nonstrict).append((a, c))
    x = feasible(s)
    if x is not None:
        assert s.satisfied_by(x)
    grid = [Fraction(i, 4) for i in range(-40, 41)]
    hit = next(((u, v) for u in grid for v in grid if s.satisfied_by((u, v))), None)
    if hit is not None:
        assert x is not None

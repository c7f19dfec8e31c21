import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gradss.linfp import (
    FpMatrix,
    RowSpan,
    SubquotientError,
    is_prime,
    kernel_basis,
    rank,
    rref,
    solve,
    subquotient_basis,
)


def mat(p, rows):
    return FpMatrix.from_rows(p, rows)


def matrices(p, max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def test_rref_empty_matrix():
    red, pivots = rref(FpMatrix.zeros(5, 0, 0))
    assert red.rows == 0 and red.cols == 0
    assert pivots == []


def test_rref_identity():
    m = FpMatrix.identity(5, 3)
    red, pivots = rref(m)
    assert red == m
    assert pivots == [0, 1, 2]


def test_rref_hand_reduction():
    # hand oracle: scale first row by 2^-1 = 3, clear the second
    red, pivots = rref(mat(5, [[2, 4], [1, 2]]))
    assert red.entries.tolist() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_kernel_zero_matrix():
    basis = kernel_basis(FpMatrix.zeros(5, 2, 3))
    assert [v.tolist() for v in basis] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_kernel_identity():
    assert kernel_basis(FpMatrix.identity(7, 4)) == []


def test_kernel_single_row_exhaustive():
    m = mat(5, [[1, 2]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    assert basis[0].tolist() == [3, 1]
    # exhaust all 25 vectors of F_5^2
    true_kernel = {
        (a, b)
        for a in range(5)
        for b in range(5)
        if (a + 2 * b) % 5 == 0
    }
    assert tuple(basis[0]) in true_kernel
    assert len(true_kernel) == 5  # a line: dim 1 matches


def test_solve_consistent_and_inconsistent():
    m = mat(5, [[1, 2], [0, 0]])
    x = solve(m, np.array([3, 0]))
    assert x is not None and (m.entries @ x % 5).tolist() == [3, 0]
    assert solve(m, np.array([0, 1])) is None


def e(i, n=3):
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def test_subquotient_full_space_no_boundaries():
    reps = subquotient_basis(3, [e(0), e(1), e(2)], [], 5)
    assert len(reps) == 3


def test_subquotient_cycles_equal_boundaries():
    cycles = [e(0), e(1)]
    assert subquotient_basis(3, cycles, cycles, 5) == []


def test_subquotient_dimension_count():
    # cycles span e1, e2; boundaries span e1 + e2: quotient is 1-dimensional
    reps = subquotient_basis(3, [e(0), e(1)], [(e(0) + e(1)) % 5], 5)
    assert len(reps) == 1
    assert reps[0].tolist() == [1, 0, 0]


def test_subquotient_rejects_boundary_outside_cycles():
    with pytest.raises(SubquotientError):
        subquotient_basis(3, [e(0)], [e(1)], 5)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        FpMatrix.zeros(6, 1, 1)
    assert is_prime(7) and not is_prime(9)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7]), st.data())
def test_rank_nullity(p, data):
    rows = data.draw(matrices(p))
    m = mat(p, rows)
    assert rank(m) + len(kernel_basis(m)) == m.cols


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7]), st.data())
def test_rref_idempotent(p, data):
    rows = data.draw(matrices(p))
    red, _ = rref(mat(p, rows))
    red2, _ = rref(red)
    assert red2 == red


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7]), st.data())
def test_kernel_annihilated(p, data):
    rows = data.draw(matrices(p))
    m = mat(p, rows)
    for v in kernel_basis(m):
        assert not np.any(m.entries @ v % p)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_subquotient_reps_independent_mod_boundaries(data):
    p = 5
    dim = data.draw(st.integers(2, 5))
    vecs = data.draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=dim, max_size=dim),
            min_size=1,
            max_size=6,
        )
    )
    cycles = [np.array(v, dtype=np.int64) for v in vecs]
    # boundaries: combinations of the first few cycles, so containment holds
    bnd = [sum(c for c in cycles[:2]) % p] if len(cycles) >= 2 else []
    reps = subquotient_basis(dim, cycles, bnd, p)
    span = RowSpan(p, dim)
    for v in bnd:
        span.add(v)
    for r in reps:
        assert span.add(r), "representative dependent modulo boundaries"
    # count matches dim(cycles) - dim(boundaries)
    cyc = RowSpan(p, dim)
    for v in cycles:
        cyc.add(v)
    bspan = RowSpan(p, dim)
    for v in bnd:
        bspan.add(v)
    assert len(reps) == cyc.rank() - bspan.rank()

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from raagpres.snf import abelian_invariants, matmul, smith_normal_form


def check_transforms(m, res):
    assert [list(r) for r in matmul(matmul([list(r) for r in res.U], m), [list(r) for r in res.V])] == \
        [list(r) for r in res.D]
    rows, cols = len(m), len(m[0]) if m else 0
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert res.D[i][j] == 0
    assert abs(Matrix(res.U).det()) == 1
    assert abs(Matrix(res.V).det()) == 1
    nz = [d for d in res.diagonal if d]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0


def test_two_by_two():
    res = smith_normal_form([[2, 4], [6, 8]])
    # by hand: gcd of entries is 2, determinant is -8, so the invariants are 2 and 4
    assert res.diagonal == (2, 4)
    check_transforms([[2, 4], [6, 8]], res)


def test_zero_and_identity():
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == (0, 0)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert smith_normal_form(eye).diagonal == (1, 1, 1)


def test_empty_matrix():
    assert smith_normal_form([]).rank == 0


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_transforms_and_sympy_agree(m):
    res = smith_normal_form(m)
    check_transforms(m, res)
    ref = sympy_snf(Matrix(m), domain=ZZ)
    k = min(len(m), len(m[0]))
    theirs = sorted(abs(ref[i, i]) for i in range(k))
    assert sorted(res.diagonal) == theirs


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_sparse_route_matches_dense(m):
    res = smith_normal_form(m, transforms=False)
    free, torsion = abelian_invariants(m, len(m[0]))
    assert free == len(m[0]) - res.rank
    assert torsion == [d for d in res.diagonal if d > 1]

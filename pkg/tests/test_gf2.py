import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from triplecup import gf2


def naive_rank(rows):
    """Plain-integer elimination, one Python int per row."""
    ints = [int("".join(str(int(b)) for b in r) or "0", 2) for r in rows]
    rank = 0
    while ints:
        pivot = max(ints)
        ints.remove(pivot)
        if pivot == 0:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        ints = [x ^ pivot if (x >> top) & 1 else x for x in ints]
    return rank


def matrices(max_rows=12, max_cols=70):
    shape = st.tuples(st.integers(0, max_rows), st.integers(0, max_cols))
    return shape.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@given(matrices())
def test_rank_matches_naive(m):
    assert gf2.rank(m) == naive_rank(m)


@given(matrices())
def test_rank_nullity(m):
    ker = gf2.kernel_basis(m)
    assert gf2.rank(m) + ker.shape[0] == m.shape[1]
    if ker.shape[0] and m.shape[0]:
        assert not ((m.astype(int) @ ker.T.astype(int)) % 2).any()
    assert gf2.span_rank(ker) == ker.shape[0]


@given(matrices(), st.data())
def test_solve(m, data):
    b = data.draw(arrays(np.uint8, m.shape[0], elements=st.integers(0, 1)))
    x = gf2.solve(m, b)
    if x is None:
        assert naive_rank(np.column_stack([m, b])) > naive_rank(m)
    else:
        assert np.array_equal((m.astype(int) @ x) % 2, b)


@given(matrices())
def test_image_basis_spans_columns(m):
    img = gf2.image_basis(m)
    assert img.shape[0] == gf2.rank(m)
    if m.size:
        assert naive_rank(np.vstack([img, m.T])) == img.shape[0]


@given(st.integers(1, 10), st.data())
def test_inverse(n, data):
    m = data.draw(arrays(np.uint8, (n, n), elements=st.integers(0, 1)))
    if naive_rank(m) < n:
        with pytest.raises(ValueError):
            gf2.inverse(m)
    else:
        inv = gf2.inverse(m)
        assert np.array_equal((m.astype(int) @ inv) % 2, np.eye(n, dtype=int))


@given(matrices(max_rows=10, max_cols=130))
def test_bitmatrix_round_trip(m):
    bm = gf2.BitMatrix.from_dense(m)
    assert np.array_equal(bm.to_dense(), m)
    assert np.array_equal(gf2.BitMatrix.from_sparse(sp.csr_matrix(m)).to_dense(), m)
    assert np.array_equal(bm.T.to_dense(), m.T)
    assert np.array_equal(bm.row_weights(), m.sum(axis=1))


@given(matrices(max_rows=8, max_cols=8), matrices(max_rows=8, max_cols=8))
def test_product(a, b):
    if a.shape[1] != b.shape[0]:
        return
    got = (gf2.BitMatrix.from_dense(a) @ gf2.BitMatrix.from_dense(b)).to_dense()
    assert np.array_equal(got, (a.astype(int) @ b.astype(int)) % 2)


@settings(max_examples=60)
@given(matrices(max_rows=25, max_cols=25))
def test_sparse_rank_agrees(m):
    assert gf2.sparse_rank(sp.csc_matrix(m)) == naive_rank(m)


@given(matrices(max_rows=10, max_cols=20))
def test_quotient_basis(m):
    sub = m[: m.shape[0] // 2]
    q = gf2.quotient_basis(m, sub)
    assert q.shape[0] + gf2.span_rank(sub) == gf2.span_rank(m)


def test_quotient_basis_rejects_outside_vector():
    with pytest.raises(gf2.SubspaceNotContained):
        gf2.quotient_basis(np.array([[1, 0, 0]]), np.array([[0, 1, 0]]))


@given(matrices(max_rows=10, max_cols=40))
def test_coords_round_trip(m):
    back = gf2.parse_coords(gf2.format_coords(m))
    assert back.shape == m.shape
    assert np.array_equal(back.toarray(), m)


def test_known_ranks():
    # cycle graph incidence on n vertices has rank n - 1
    n = 7
    inc = np.zeros((n, n), dtype=np.uint8)
    for e in range(n):
        inc[e, e] = inc[(e + 1) % n, e] = 1
    assert gf2.rank(inc) == n - 1
    assert gf2.rank(np.eye(5, dtype=np.uint8)) == 5
    assert gf2.rank(np.ones((4, 4), dtype=np.uint8)) == 1


def test_matvec_shape_errors():
    with pytest.raises(ValueError):
        gf2.matvec(np.eye(3, dtype=np.uint8), np.ones(4, dtype=np.uint8))

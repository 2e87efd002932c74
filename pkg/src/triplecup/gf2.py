"""Linear algebra over GF(2).

Dense matrices are stored bit-packed, row-major, 64 columns per ``uint64``
word.  Vectors are plain 1-D ``uint8`` arrays holding 0/1 entries, and a list
of vectors is a 2-D ``uint8`` array with one vector per row.

Sparse matrices (``scipy.sparse``) are accepted everywhere a matrix is
expected.  They are densified when the packed form stays below
``DENSE_LIMIT`` bits; :func:`rank` alone has a sparse elimination path for
larger inputs, every other operation raises :class:`CapacityExceeded`.
"""

from __future__ import annotations

from pathlib import Path

import numba
import numpy as np
import scipy.sparse as sp

DENSE_LIMIT = 1 << 26


class CapacityExceeded(ValueError):
    """A matrix is too large for the dense kernels."""


class SubspaceNotContained(ValueError):
    """A claimed subspace is not inside the ambient span."""


def _pack(dense: np.ndarray) -> np.ndarray:
    dense = np.ascontiguousarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nwords = max(1, -(-cols // 64))
    packed = np.packbits(dense, axis=1, bitorder="little")
    buf = np.zeros((rows, nwords * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return buf.view("<u8").astype(np.uint64, copy=False).reshape(rows, nwords)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).astype("<u8", copy=False).view(np.uint8)
    as_bytes = as_bytes.reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, count=cols, bitorder="little")


class BitMatrix:
    """Dense GF(2) matrix with packed rows."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        nwords = max(1, -(-self.cols // 64))
        if words is None:
            words = np.zeros((self.rows, nwords), dtype=np.uint64)
        if words.shape != (self.rows, nwords):
            raise ValueError(f"word array has shape {words.shape}, expected {(self.rows, nwords)}")
        self.words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8))
        return cls(dense.shape[0], dense.shape[1], _pack(dense))

    @classmethod
    def from_coords(cls, rows: int, cols: int, coords) -> BitMatrix:
        """Build from ``(r, c)`` pairs; repeated pairs cancel mod 2."""
        _check_capacity(rows, cols)
        dense = np.zeros((rows, cols), dtype=np.uint8)
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 2)
        np.add.at(dense, (coords[:, 0], coords[:, 1]), 1)
        return cls.from_dense(dense & 1)

    @classmethod
    def from_sparse(cls, m) -> BitMatrix:
        m = sp.coo_matrix(m)
        return cls.from_coords(m.shape[0], m.shape[1], np.column_stack([m.row, m.col])[m.data % 2 == 1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return _unpack(self.words, self.cols)

    def to_sparse(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.to_dense())

    def coords(self) -> np.ndarray:
        r, c = np.nonzero(self.to_dense())
        return np.column_stack([r, c])

    def row(self, i: int) -> np.ndarray:
        return _unpack(self.words[i : i + 1], self.cols)[0]

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    def row_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=1, dtype=np.int64)

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
            return BitMatrix.from_dense((prod & 1).astype(np.uint8))
        other = np.asarray(other, dtype=np.uint8)
        if other.ndim == 1:
            return (self.to_dense().astype(np.int64) @ other.astype(np.int64) & 1).astype(np.uint8)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, nnz={int(self.to_dense().sum())})"


def _check_capacity(rows: int, cols: int) -> None:
    if rows * cols > DENSE_LIMIT:
        raise CapacityExceeded(f"{rows}x{cols} exceeds the dense limit of {DENSE_LIMIT} bits")


def as_bitmatrix(m) -> BitMatrix:
    """Coerce a BitMatrix, sparse matrix or 0/1 array into a BitMatrix."""
    if isinstance(m, BitMatrix):
        return m
    if sp.issparse(m):
        _check_capacity(*m.shape)
        return BitMatrix.from_sparse(m)
    m = np.atleast_2d(np.asarray(m, dtype=np.uint8))
    _check_capacity(*m.shape)
    return BitMatrix.from_dense(m)


def matvec(m, v: np.ndarray) -> np.ndarray:
    """Product ``m @ v`` mod 2 for sparse or dense ``m``."""
    v = np.asarray(v, dtype=np.uint8)
    if isinstance(m, BitMatrix):
        return m @ v
    if sp.issparse(m):
        out = m.astype(np.int64) @ v.astype(np.int64)
    else:
        out = np.asarray(m, dtype=np.int64) @ v.astype(np.int64)
    return (np.asarray(out) & 1).astype(np.uint8)


# ---------------------------------------------------------------- kernels


@numba.njit(cache=True)
def _rref_inplace(words, ncols):
    rows, nwords = words.shape
    pivots = np.empty(min(rows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        p = -1
        for i in range(r, rows):
            if words[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(nwords):
                tmp = words[p, k]
                words[p, k] = words[r, k]
                words[r, k] = tmp
        for i in range(rows):
            if i != r and (words[i, w] & bit):
                for k in range(w, nwords):
                    words[i, k] ^= words[r, k]
        pivots[r] = c
        r += 1
    return pivots[:r]


@numba.njit(cache=True)
def _lowest_bit(row):
    for k in range(row.shape[0]):
        x = row[k]
        if x:
            b = 0
            while not (x & np.uint64(1)):
                x >>= np.uint64(1)
                b += 1
            return k * 64 + b
    return -1


@numba.njit(cache=True)
def _independent_rows(words):
    """Flag each row that is independent of all rows before it."""
    rows, nwords = words.shape
    basis = np.empty_like(words)
    piv = np.empty(rows, dtype=np.int64)
    nb = 0
    flags = np.zeros(rows, dtype=np.bool_)
    cur = np.empty(nwords, dtype=np.uint64)
    for i in range(rows):
        for k in range(nwords):
            cur[k] = words[i, k]
        for j in range(nb):
            p = piv[j]
            if cur[p >> 6] & (np.uint64(1) << np.uint64(p & 63)):
                for k in range(nwords):
                    cur[k] ^= basis[j, k]
        low = _lowest_bit(cur)
        if low >= 0:
            for k in range(nwords):
                basis[nb, k] = cur[k]
            piv[nb] = low
            nb += 1
            flags[i] = True
    return flags


# ------------------------------------------------------------- operations


def rref(m) -> tuple[BitMatrix, np.ndarray]:
    """Reduced row echelon form and pivot columns (lowest row wins ties)."""
    bm = as_bitmatrix(m)
    words = bm.words.copy()
    pivots = _rref_inplace(words, bm.cols)
    return BitMatrix(bm.rows, bm.cols, words), pivots


def rank(m) -> int:
    """GF(2) rank.  Large sparse inputs use column reduction instead."""
    if sp.issparse(m) and m.shape[0] * m.shape[1] > DENSE_LIMIT:
        return sparse_rank(m)
    shape = m.shape if isinstance(m, BitMatrix) or sp.issparse(m) else np.shape(m)
    if 0 in shape:
        return 0
    return len(rref(m)[1])


def kernel_basis(m) -> np.ndarray:
    """Basis of the null space, one vector per row (free-column order)."""
    bm = as_bitmatrix(m)
    if bm.rows == 0:
        return np.eye(bm.cols, dtype=np.uint8)
    reduced, pivots = rref(bm)
    free = np.setdiff1d(np.arange(bm.cols), pivots)
    basis = np.zeros((len(free), bm.cols), dtype=np.uint8)
    if len(free) == 0:
        return basis
    basis[np.arange(len(free)), free] = 1
    if len(pivots):
        top = reduced.to_dense()[: len(pivots)]
        basis[:, pivots] = top[:, free].T
    return basis


def image_basis(m) -> np.ndarray:
    """Independent columns of ``m`` spanning its image, one per row."""
    bm = as_bitmatrix(m)
    if bm.cols == 0 or bm.rows == 0:
        return np.zeros((0, bm.rows), dtype=np.uint8)
    _, pivots = rref(bm)
    return np.ascontiguousarray(bm.to_dense()[:, pivots].T)


def solve(m, b) -> np.ndarray | None:
    """Some ``x`` with ``m @ x = b``, or ``None`` when ``b`` is not in the image."""
    bm = as_bitmatrix(m)
    b = np.asarray(b, dtype=np.uint8).reshape(-1)
    if b.shape[0] != bm.rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {bm.rows}")
    aug = np.concatenate([bm.to_dense(), b[:, None]], axis=1)
    reduced, pivots = rref(aug)
    if len(pivots) and pivots[-1] == bm.cols:
        return None
    x = np.zeros(bm.cols, dtype=np.uint8)
    if len(pivots):
        x[pivots] = reduced.to_dense()[: len(pivots), bm.cols]
    return x


def inverse(m) -> np.ndarray:
    """Inverse of a square nonsingular matrix as a dense 0/1 array.

    Raises:
        ValueError: the matrix is singular.
    """
    dense = np.atleast_2d(np.asarray(as_bitmatrix(m).to_dense(), dtype=np.uint8))
    n = dense.shape[0]
    if dense.shape != (n, n):
        raise ValueError(f"inverse of a non-square {dense.shape} matrix")
    if n == 0:
        return dense
    reduced, pivots = rref(np.concatenate([dense, np.eye(n, dtype=np.uint8)], axis=1))
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular over GF(2)")
    return reduced.to_dense()[:, n:]


def independent_rows(vectors) -> np.ndarray:
    """Boolean mask of rows independent of all earlier rows."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.uint8))
    if vectors.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    _check_capacity(*vectors.shape)
    return _independent_rows(_pack(vectors))


def span_rank(vectors) -> int:
    vectors = np.asarray(vectors, dtype=np.uint8)
    if vectors.size == 0:
        return 0
    return int(independent_rows(vectors).sum())


def quotient_basis(space, subspace) -> np.ndarray:
    """Vectors of ``space`` completing a basis of ``subspace`` to one of ``space``.

    Returns original ``space`` vectors, earliest first.

    Raises:
        SubspaceNotContained: some ``subspace`` vector is outside span(space).
    """
    space = np.atleast_2d(np.asarray(space, dtype=np.uint8))
    subspace = np.asarray(subspace, dtype=np.uint8)
    n = space.shape[1] if space.size else (subspace.shape[-1] if subspace.size else 0)
    subspace = subspace.reshape(-1, n) if subspace.size else np.zeros((0, n), dtype=np.uint8)
    space = space.reshape(-1, n) if space.size else np.zeros((0, n), dtype=np.uint8)
    if subspace.shape[0]:
        flags = independent_rows(np.vstack([space, subspace]))
        if flags[space.shape[0] :].any():
            raise SubspaceNotContained("subspace vector outside the span of space")
    if space.shape[0] == 0:
        return space
    flags = independent_rows(np.vstack([subspace, space]))
    return space[flags[subspace.shape[0] :]]


# ----------------------------------------------------------- sparse rank


@numba.njit(cache=True)
def _symdiff(a, na, b, nb, out):
    i = 0
    j = 0
    k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return k


@numba.njit(cache=True)
def _reduce_columns(indptr, indices, nrows, skip):
    """Standard lowest-one column reduction; returns the low of each column (-1 if zero)."""
    ncols = indptr.shape[0] - 1
    owner = np.full(nrows, -1, dtype=np.int64)
    lows = np.full(ncols, -1, dtype=np.int64)
    pool = np.empty(max(16, 2 * indices.shape[0]), dtype=np.int32)
    start = np.zeros(ncols, dtype=np.int64)
    length = np.zeros(ncols, dtype=np.int64)
    used = 0
    cur = np.empty(1024, dtype=np.int32)
    tmp = np.empty(1024, dtype=np.int32)
    for j in range(ncols):
        if skip[j]:
            continue
        n = indptr[j + 1] - indptr[j]
        if n > cur.shape[0]:
            cur = np.empty(2 * n, dtype=np.int32)
            tmp = np.empty(2 * n, dtype=np.int32)
        for t in range(n):
            cur[t] = indices[indptr[j] + t]
        while n > 0:
            o = owner[cur[n - 1]]
            if o < 0:
                break
            need = n + length[o]
            if need > tmp.shape[0]:
                bigger = np.empty(2 * need, dtype=np.int32)
                bigger[:n] = cur[:n]
                cur = bigger
                tmp = np.empty(2 * need, dtype=np.int32)
            n = _symdiff(cur, n, pool[start[o] : start[o] + length[o]], length[o], tmp)
            cur, tmp = tmp, cur
        if n > 0:
            if used + n > pool.shape[0]:
                bigger = np.empty(2 * (used + n), dtype=np.int32)
                bigger[:used] = pool[:used]
                pool = bigger
            pool[used : used + n] = cur[:n]
            start[j] = used
            length[j] = n
            used += n
            owner[cur[n - 1]] = j
            lows[j] = cur[n - 1]
    return lows


def sparse_lows(m, skip: np.ndarray | None = None) -> np.ndarray:
    """Column reduction of a sparse GF(2) matrix.

    Returns the pivot row of every reduced column, ``-1`` for columns that
    reduce to zero or are listed in ``skip``.
    """
    csc = sp.csc_matrix(m)
    csc.sum_duplicates()
    csc.data %= 2
    csc.eliminate_zeros()
    csc.sort_indices()
    if skip is None:
        skip = np.zeros(csc.shape[1], dtype=np.bool_)
    return _reduce_columns(
        csc.indptr.astype(np.int64), csc.indices.astype(np.int32), csc.shape[0], np.asarray(skip, dtype=np.bool_)
    )


def sparse_rank(m) -> int:
    return int((sparse_lows(m) >= 0).sum())


# ---------------------------------------------------------------- file io


def write_coords(m, path) -> None:
    """Coordinate text: ``rows cols`` then one sorted ``r c`` line per set entry."""
    Path(path).write_text(format_coords(m))


def format_coords(m) -> str:
    if isinstance(m, BitMatrix):
        rows, cols = m.shape
        pairs = m.coords()
    else:
        coo = sp.coo_matrix(m)
        coo.sum_duplicates()
        keep = coo.data % 2 == 1
        rows, cols = coo.shape
        pairs = np.column_stack([coo.row[keep], coo.col[keep]])
    if len(pairs):
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    lines = [f"{rows} {cols}"] + [f"{r} {c}" for r, c in pairs]
    return "\n".join(lines) + "\n"


def parse_coords(text: str) -> sp.csr_matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows, cols = (int(x) for x in lines[0].split())
    pairs = np.array([[int(x) for x in ln.split()] for ln in lines[1:]], dtype=np.int64).reshape(-1, 2)
    data = np.ones(len(pairs), dtype=np.uint8)
    return sp.csr_matrix((data, (pairs[:, 0], pairs[:, 1])), shape=(rows, cols), dtype=np.uint8)


def read_coords(path) -> sp.csr_matrix:
    return parse_coords(Path(path).read_text())

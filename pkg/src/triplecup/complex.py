"""Ordered simplicial complexes, their chain complexes and product triangulations.

A complex stores, for every degree q, a ``(f_q, q+1)`` int32 array of vertex
tuples.  Tuples are strictly increasing and rows are sorted
lexicographically, so the row number of a simplex is its qubit index.

Products use the staircase (shuffle) triangulation.  A vertex of ``a x b``
is the pair ``(u, v)`` with index ``u * V_b + v``, which makes the global
order lexicographic.  A k-simplex is a chain of k+1 pairs, strictly
increasing in the product partial order, whose two projections are simplices
of the factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .gf2 import CapacityExceeded, format_coords, matvec, parse_coords

# Largest simplex count per degree that we are willing to materialize.
MAX_SIMPLICES = 1 << 24


class NotAComplex(ValueError):
    """Boundary of a boundary is nonzero, or the closure property fails."""


class TooSmall(ValueError):
    """Generator size below the smallest valid triangulation."""


class DegreeOutOfRange(ValueError):
    pass


def _keys(tuples: np.ndarray, n_vertices: int) -> np.ndarray:
    """Order-preserving scalar keys for rows of a vertex-tuple array."""
    tuples = np.asarray(tuples)
    width = tuples.shape[1]
    if width == 0:
        return np.zeros(tuples.shape[0], dtype=np.int64)
    if float(max(n_vertices, 2)) ** width < 2.0**62:
        key = np.zeros(tuples.shape[0], dtype=np.int64)
        for c in range(width):
            key = key * n_vertices + tuples[:, c].astype(np.int64)
        return key
    big = np.ascontiguousarray(tuples.astype(">u4"))
    return big.view(f"V{4 * width}").ravel()


def _sorted_unique(tuples: np.ndarray, n_vertices: int) -> np.ndarray:
    if tuples.shape[0] == 0:
        return tuples.astype(np.int32)
    key = _keys(tuples, n_vertices)
    _, first = np.unique(key, return_index=True)
    return np.ascontiguousarray(tuples[first].astype(np.int32))


class SimplicialComplex:
    """Finite simplicial complex with a global vertex order.

    Args:
        simplices: per-degree vertex-tuple arrays, degree 0 first.  Rows must be
            strictly increasing tuples; they are sorted and deduplicated here.
        n_vertices: size of the vertex set (vertex labels are ``0..V-1``).
        factors: for product complexes, the factor complexes in order.  The
            vertex index is then the mixed-radix number of the factor vertices.
    """

    def __init__(self, simplices, n_vertices: int, factors: tuple | None = None):
        self.n_vertices = int(n_vertices)
        arrays = []
        for q, arr in enumerate(simplices):
            arr = np.asarray(arr, dtype=np.int64).reshape(-1, q + 1)
            if arr.shape[0] > MAX_SIMPLICES:
                raise CapacityExceeded(f"{arr.shape[0]} simplices in degree {q}")
            if q and arr.shape[0] and not (np.diff(arr, axis=1) > 0).all():
                raise NotAComplex(f"degree-{q} tuple not strictly increasing")
            arrays.append(_sorted_unique(arr, self.n_vertices))
        while len(arrays) > 1 and arrays[-1].shape[0] == 0:
            arrays.pop()
        self.simplices: tuple[np.ndarray, ...] = tuple(arrays)
        self.factors = tuple(factors) if factors else None
        self._key_cache: dict[int, np.ndarray] = {}
        self._boundary_cache: dict[int, sp.csc_matrix] = {}

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_top(cls, top_simplices, n_vertices: int | None = None) -> SimplicialComplex:
        """Close a list of maximal simplices under taking faces."""
        tops = [tuple(sorted(int(v) for v in s)) for s in top_simplices]
        if not tops:
            return cls([np.zeros((0, 1))], n_vertices or 0)
        dim = max(len(s) for s in tops) - 1
        if n_vertices is None:
            n_vertices = max(max(s) for s in tops) + 1
        by_dim: list[list[np.ndarray]] = [[] for _ in range(dim + 1)]
        for width in {len(s) for s in tops}:
            block = np.array([s for s in tops if len(s) == width], dtype=np.int64)
            by_dim[width - 1].append(block)
        levels = [None] * (dim + 1)
        for q in range(dim, -1, -1):
            parts = [b for b in by_dim[q]]
            if q < dim and levels[q + 1].shape[0]:
                upper = levels[q + 1]
                for drop in range(q + 2):
                    parts.append(np.delete(upper, drop, axis=1))
            stacked = np.concatenate(parts) if parts else np.zeros((0, q + 1), dtype=np.int64)
            levels[q] = _sorted_unique(stacked, n_vertices)
        levels[0] = np.arange(n_vertices, dtype=np.int32).reshape(-1, 1)
        return cls(levels, n_vertices)

    # -- basic queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, q: int) -> int:
        if 0 <= q <= self.dim:
            return self.simplices[q].shape[0]
        return 0

    @property
    def f_vector(self) -> list[int]:
        return [s.shape[0] for s in self.simplices]

    def _sorted_keys(self, q: int) -> np.ndarray:
        if q not in self._key_cache:
            self._key_cache[q] = _keys(self.simplices[q], self.n_vertices)
        return self._key_cache[q]

    def index_of(self, q: int, tuples, strict: bool = True) -> np.ndarray:
        """Row indices of the given q-simplices (``-1`` for absent ones unless strict)."""
        tuples = np.asarray(tuples, dtype=np.int64).reshape(-1, q + 1)
        if q > self.dim or q < 0:
            if strict and tuples.shape[0]:
                raise KeyError(f"no simplices of degree {q}")
            return np.full(tuples.shape[0], -1, dtype=np.int64)
        keys = self._sorted_keys(q)
        probe = _keys(tuples, self.n_vertices)
        pos = np.searchsorted(keys, probe)
        pos_c = np.minimum(pos, max(len(keys) - 1, 0))
        hit = (pos < len(keys)) & (keys[pos_c] == probe) if len(keys) else np.zeros(len(probe), dtype=bool)
        if strict and not hit.all():
            bad = tuples[np.flatnonzero(~hit)[0]]
            raise KeyError(f"simplex {tuple(int(v) for v in bad)} not in complex")
        return np.where(hit, pos_c, -1).astype(np.int64)

    def boundary(self, q: int) -> sp.csc_matrix:
        """Sparse ``∂_q``: rows are (q-1)-simplices, columns q-simplices.

        ``∂_0`` and ``∂_(n+1)`` are the zero maps; other degrees outside
        ``0..n`` raise ``DegreeOutOfRange``.
        """
        if q < 0 or q > self.dim + 1:
            raise DegreeOutOfRange(f"boundary degree {q} outside 0..{self.dim + 1}")
        if q == 0 or q > self.dim:
            return sp.csc_matrix((self.count(q - 1), self.count(q)), dtype=np.uint8)
        if q not in self._boundary_cache:
            cols = self.simplices[q]
            f = cols.shape[0]
            rows = np.empty((q + 1, f), dtype=np.int64)
            for drop in range(q + 1):
                rows[drop] = self.index_of(q - 1, np.delete(cols, drop, axis=1))
            colidx = np.broadcast_to(np.arange(f), (q + 1, f))
            m = sp.csc_matrix(
                (np.ones(rows.size, dtype=np.uint8), (rows.ravel(), colidx.ravel())),
                shape=(self.count(q - 1), f),
            )
            self._boundary_cache[q] = m
        return self._boundary_cache[q]

    def coboundary(self, q: int) -> sp.csr_matrix:
        """Sparse ``d^q`` from q-cochains to (q+1)-cochains."""
        return self.boundary(q + 1).T.tocsr()

    @cached_property
    def is_closed_manifold(self) -> bool:
        """Every codimension-one simplex has exactly two cofaces (pseudomanifold test)."""
        n = self.dim
        if n == 0:
            return self.count(0) == 1
        cofaces = np.bincount(self.boundary(n).indices, minlength=self.count(n - 1))
        return bool((cofaces == 2).all())

    def top_chain(self) -> np.ndarray:
        return np.ones(self.count(self.dim), dtype=np.uint8)

    def faces(self, q: int, start: int, simplices: np.ndarray | None = None) -> np.ndarray:
        """Indices of the consecutive q-faces ``[v_start..v_{start+q}]`` of top simplices."""
        tops = self.simplices[self.dim] if simplices is None else simplices
        return self.index_of(q, tops[:, start : start + q + 1])

    def delete_top(self, index: int) -> SimplicialComplex:
        """Copy with one top simplex removed (its faces stay)."""
        levels = list(self.simplices)
        levels[-1] = np.delete(levels[-1], index, axis=0)
        return SimplicialComplex(levels, self.n_vertices)

    def transfer(self, q: int, chain, target: SimplicialComplex, vertex_map=None) -> np.ndarray:
        """Push a q-chain into ``target`` along an injective vertex map."""
        chain = np.asarray(chain, dtype=np.uint8)
        support = self.simplices[q][chain.astype(bool)]
        if vertex_map is not None:
            support = np.sort(np.asarray(vertex_map)[support], axis=1)
        out = np.zeros(target.count(q), dtype=np.uint8)
        np.add.at(out, target.index_of(q, support), 1)
        return out & 1

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector})"


@dataclass(frozen=True)
class Cochain:
    """A q-cochain as a coefficient vector over the q-simplex list."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=np.uint8) & 1)

    def __add__(self, other: Cochain) -> Cochain:
        if other.degree != self.degree:
            raise ValueError("cochain degrees differ")
        return Cochain(self.degree, self.coeffs ^ other.coeffs)

    @property
    def weight(self) -> int:
        return int(self.coeffs.sum())


class ChainComplex:
    """Boundary maps ``∂_1 .. ∂_n`` over GF(2), stored sparse.

    ``dims[q]`` is the rank of ``C_q``.  ``boundary(q)`` is defined for every
    integer q and is an empty matrix outside ``1..n``.
    """

    def __init__(self, boundaries, dims=None, verify: bool = True):
        self._maps = [sp.csc_matrix(b, dtype=np.uint8) for b in boundaries]
        if dims is None:
            if not self._maps:
                raise ValueError("need dims when there are no boundary maps")
            dims = [self._maps[0].shape[0]] + [b.shape[1] for b in self._maps]
        self.dims = [int(d) for d in dims]
        for q, b in enumerate(self._maps, start=1):
            if b.shape != (self.dims[q - 1], self.dims[q]):
                raise ValueError(f"∂_{q} has shape {b.shape}, expected {(self.dims[q - 1], self.dims[q])}")
        if verify:
            self.verify()

    @property
    def dim(self) -> int:
        return len(self.dims) - 1

    def boundary(self, q: int) -> sp.csc_matrix:
        if 1 <= q <= self.dim:
            return self._maps[q - 1]
        rows = self.dims[q - 1] if 0 <= q - 1 <= self.dim else 0
        cols = self.dims[q] if 0 <= q <= self.dim else 0
        return sp.csc_matrix((rows, cols), dtype=np.uint8)

    def coboundary(self, q: int) -> sp.csr_matrix:
        return self.boundary(q + 1).T.tocsr()

    def verify(self) -> None:
        for q in range(2, self.dim + 1):
            prod = self.boundary(q - 1).astype(np.int64) @ self.boundary(q).astype(np.int64)
            prod.data %= 2
            if prod.count_nonzero():
                raise NotAComplex(f"∂_{q - 1} ∂_{q} is nonzero")

    def to_text(self) -> str:
        """Header ``chain n d_0 .. d_n``, then per map a ``boundary q nnz`` line and its coordinates."""
        parts = [f"chain {self.dim} " + " ".join(str(d) for d in self.dims)]
        for q in range(1, self.dim + 1):
            body = format_coords(self.boundary(q)).rstrip("\n")
            parts.append(f"boundary {q} {body.count(chr(10))}")
            parts.append(body)
        return "\n".join(parts) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ChainComplex:
        lines = text.splitlines()
        dims = [int(x) for x in lines[0].split()[2:]]
        maps, i = [], 1
        while i < len(lines):
            _, _, nnz = lines[i].split()
            block = lines[i + 1 : i + 2 + int(nnz)]
            maps.append(parse_coords("\n".join(block)))
            i += 2 + int(nnz)
        return cls(maps, dims)


def chain_complex_of(sc: SimplicialComplex, verify: bool = True) -> ChainComplex:
    """Simplicial chain complex of ``sc``; ``∂∘∂ = 0`` is checked unless disabled."""
    return ChainComplex([sc.boundary(q) for q in range(1, sc.dim + 1)], dims=sc.f_vector, verify=verify)


# ---------------------------------------------------------------- generators


def point() -> SimplicialComplex:
    return SimplicialComplex([np.zeros((1, 1))], 1)


def circle(L: int) -> SimplicialComplex:
    """Boundary of an L-gon: vertices ``0..L-1``, edges ``(i, i+1)`` and ``(0, L-1)``."""
    if L < 3:
        raise TooSmall(f"a triangulated circle needs at least 3 vertices, got {L}")
    edges = [(i, i + 1) for i in range(L - 1)] + [(0, L - 1)]
    return SimplicialComplex([np.arange(L).reshape(-1, 1), np.array(edges)], L)


def interval(L: int) -> SimplicialComplex:
    """Path with L vertices (a complex with boundary)."""
    if L < 2:
        raise TooSmall(f"an interval needs at least 2 vertices, got {L}")
    edges = [(i, i + 1) for i in range(L - 1)]
    return SimplicialComplex([np.arange(L).reshape(-1, 1), np.array(edges)], L)


def torus(L: int, dim: int = 2) -> SimplicialComplex:
    """Staircase triangulation of the product of ``dim`` copies of circle(L)."""
    return product_of(*[circle(L) for _ in range(dim)])


def _lattice_paths(i: int, j: int, diagonal: bool = True):
    """Monotone paths (0,0) -> (i,j) with steps (1,0), (0,1) and optionally (1,1).

    Returns the a- and b-coordinate sequences of each path.
    """
    steps = ((1, 0), (0, 1), (1, 1)) if diagonal else ((1, 0), (0, 1))
    out = []

    def walk(a, b, sa, sb):
        if a == i and b == j:
            out.append((tuple(sa), tuple(sb)))
            return
        for da, db in steps:
            na, nb = a + da, b + db
            if na <= i and nb <= j:
                walk(na, nb, sa + [na], sb + [nb])

    walk(0, 0, [0], [0])
    return out


def _product_levels(a_levels, Va, b_levels, Vb):
    dim = len(a_levels) + len(b_levels) - 2
    buckets: list[list[np.ndarray]] = [[] for _ in range(dim + 1)]
    for i, A in enumerate(a_levels):
        A = A.astype(np.int64)
        for j, B in enumerate(b_levels):
            B = B.astype(np.int64)
            if A.shape[0] == 0 or B.shape[0] == 0:
                continue
            total = A.shape[0] * B.shape[0]
            if total > MAX_SIMPLICES:
                raise CapacityExceeded(f"product block of {total} simplices")
            for ta, tb in _lattice_paths(i, j):
                k = len(ta) - 1
                block = A[:, None, list(ta)] * Vb + B[None, :, list(tb)]
                buckets[k].append(block.reshape(-1, k + 1).astype(np.int32))
    levels = []
    for k in range(dim + 1):
        stacked = np.concatenate(buckets[k])
        if stacked.shape[0] > MAX_SIMPLICES:
            raise CapacityExceeded(f"{stacked.shape[0]} simplices in degree {k}")
        levels.append(stacked)
    return levels


def product_of(*factors: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of a product with lexicographic vertex order.

    The result remembers ``factors``; its vertex index is the mixed-radix
    number ``((v_1 * V_2 + v_2) * V_3 + v_3) ...`` of the factor vertices.
    """
    if not factors:
        return point()
    levels = list(factors[0].simplices)
    V = factors[0].n_vertices
    for f in factors[1:]:
        levels = _product_levels(levels, V, list(f.simplices), f.n_vertices)
        V *= f.n_vertices
    if len(factors) == 1:
        return factors[0]
    return SimplicialComplex(levels, V, factors=factors)


def ordered_product(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``a x b``; vertex ``(u, v)`` has index ``u * V_b + v``."""
    return product_of(a, b)


def triple_product(a: SimplicialComplex, b: SimplicialComplex, c: SimplicialComplex) -> SimplicialComplex:
    """``a x b x c`` as one complex with three remembered factors."""
    return product_of(a, b, c)


def connected_sum(a: SimplicialComplex, b: SimplicialComplex, ia: int = 0, ib: int = 0) -> SimplicialComplex:
    """Glue two closed n-manifolds along the boundaries of removed top simplices.

    Vertices of top simplex ``ib`` of ``b`` are identified in order with those
    of top simplex ``ia`` of ``a``; the other vertices of ``b`` follow the
    vertices of ``a``.
    """
    if a.dim != b.dim:
        raise ValueError("connected sum needs equal dimensions")
    n = a.dim
    sa = a.simplices[n][ia]
    sb = b.simplices[n][ib]
    vmap = np.full(b.n_vertices, -1, dtype=np.int64)
    vmap[sb] = sa
    rest = np.setdiff1d(np.arange(b.n_vertices), sb)
    vmap[rest] = a.n_vertices + np.arange(len(rest))
    V = a.n_vertices + len(rest)
    tops_a = np.delete(a.simplices[n], ia, axis=0)
    tops_b = np.sort(vmap[np.delete(b.simplices[n], ib, axis=0)], axis=1)
    out = SimplicialComplex.from_top(np.concatenate([tops_a, tops_b]).tolist(), V)
    out.vertex_maps = (np.arange(a.n_vertices), vmap)
    return out


def tensor_chain_product(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product complex: ``C_k = ⊕_{i+j=k} A_i ⊗ B_j``, blocks ordered by i.

    Basis element ``x_s ⊗ y_t`` of block ``(i, j)`` sits at offset
    ``s * dim B_j + t`` within the block.
    """
    n = a.dim + b.dim

    def blocks(k):
        return [(i, k - i) for i in range(max(0, k - b.dim), min(a.dim, k) + 1)]

    dims = [sum(a.dims[i] * b.dims[j] for i, j in blocks(k)) for k in range(n + 1)]
    maps = []
    for k in range(1, n + 1):
        src, dst = blocks(k), blocks(k - 1)
        dst_off, off = {}, 0
        for i, j in dst:
            dst_off[(i, j)] = off
            off += a.dims[i] * b.dims[j]
        cols = []
        for i, j in src:
            parts = []
            for ti, tj in dst:
                if (ti, tj) == (i - 1, j):
                    blk = sp.kron(a.boundary(i), sp.identity(b.dims[j], dtype=np.uint8), format="csc")
                elif (ti, tj) == (i, j - 1):
                    blk = sp.kron(sp.identity(a.dims[i], dtype=np.uint8), b.boundary(j), format="csc")
                else:
                    blk = sp.csc_matrix((a.dims[ti] * b.dims[tj], a.dims[i] * b.dims[j]), dtype=np.uint8)
                parts.append(blk)
            cols.append(sp.vstack(parts, format="csc"))
        m = sp.hstack(cols, format="csc") if cols else sp.csc_matrix((dims[k - 1], dims[k]), dtype=np.uint8)
        maps.append(m.astype(np.uint8))
    return ChainComplex(maps, dims)


def repetition_complex(n: int) -> ChainComplex:
    """Two-term complex of the length-n cyclic repetition code."""
    return chain_complex_of(circle(n))


# -------------------------------------------------------------- projections


def factor_vertices(sc: SimplicialComplex, vertices: np.ndarray) -> list[np.ndarray]:
    """Split product vertex indices into per-factor vertex indices."""
    if not sc.factors:
        return [np.asarray(vertices)]
    out = []
    rest = np.asarray(vertices, dtype=np.int64)
    for f in reversed(sc.factors):
        out.append(rest % f.n_vertices)
        rest = rest // f.n_vertices
    return out[::-1]


def factor_vertex(sc: SimplicialComplex, vertices: np.ndarray, k: int) -> np.ndarray:
    """Vertex indices of factor ``k`` only."""
    stride = 1
    for f in sc.factors[k + 1 :]:
        stride *= f.n_vertices
    v = np.asarray(vertices, dtype=np.int64)
    return (v // stride) % sc.factors[k].n_vertices if stride > 1 else v % sc.factors[k].n_vertices


# ------------------------------------------------------------------ file io


def format_complex(sc: SimplicialComplex) -> str:
    """Header ``dim n vertices V``, an optional ``factors`` line, then the top simplices.

    Maximal simplices of lower dimension are written too, so closure on load
    recovers the same complex.
    """
    lines = [f"dim {sc.dim} vertices {sc.n_vertices}"]
    if sc.factors:
        lines.append("factors " + " ".join(str(f.n_vertices) for f in sc.factors))
    covered = np.zeros(0, dtype=bool)
    for q in range(sc.dim, -1, -1):
        arr = sc.simplices[q]
        if q == sc.dim:
            keep = np.ones(arr.shape[0], dtype=bool)
        else:
            keep = ~covered
        for row in arr[keep]:
            lines.append(" ".join(str(int(v)) for v in row))
        if q > 0:
            covered = np.zeros(sc.count(q - 1), dtype=bool)
            bd = sc.boundary(q)
            covered[bd.indices] = True
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> SimplicialComplex:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    head = lines[0]
    if len(head) != 4 or head[0] != "dim" or head[2] != "vertices":
        raise ValueError(f"bad complex header: {' '.join(head)}")
    n, V = int(head[1]), int(head[3])
    body = lines[1:]
    factor_sizes = None
    if body and body[0][0] == "factors":
        factor_sizes = [int(x) for x in body[0][1:]]
        body = body[1:]
    sc = SimplicialComplex.from_top([[int(x) for x in row] for row in body], V)
    if sc.dim != n:
        raise NotAComplex(f"header says dim {n}, simplices give {sc.dim}")
    if factor_sizes:
        sc = _attach_factors(sc, factor_sizes)
    return sc


def _attach_factors(sc: SimplicialComplex, sizes: list[int]) -> SimplicialComplex:
    """Recover factor complexes by projection and check the product rebuilds ``sc``."""
    if int(np.prod(sizes)) != sc.n_vertices:
        raise NotAComplex("factor sizes do not multiply to the vertex count")
    factors = []
    for pos in range(len(sizes)):
        tops = set()
        for q in range(sc.dim + 1):
            proj = _project(sc.simplices[q], sizes, pos)
            for row in proj:
                tops.add(tuple(int(v) for v in np.unique(row)))
        factors.append(SimplicialComplex.from_top(sorted(tops), sizes[pos]))
    rebuilt = product_of(*factors)
    if rebuilt.f_vector != sc.f_vector or any(
        not np.array_equal(x, y) for x, y in zip(rebuilt.simplices, sc.simplices)
    ):
        raise NotAComplex("factors line does not describe a staircase product")
    return rebuilt


def _project(tuples: np.ndarray, sizes: list[int], pos: int) -> np.ndarray:
    stride = int(np.prod(sizes[pos + 1 :])) if pos + 1 < len(sizes) else 1
    return (tuples.astype(np.int64) // stride) % sizes[pos]


def write_complex(sc: SimplicialComplex, path) -> None:
    Path(path).write_text(format_complex(sc))


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def betti_from_ranks(dims: list[int], ranks: list[int]) -> list[int]:
    """``b_q = dim C_q - rank ∂_q - rank ∂_{q+1}`` with ``ranks[q] = rank ∂_q``."""
    n = len(dims) - 1
    r = list(ranks) + [0]
    return [dims[q] - (r[q] if q >= 1 else 0) - r[q + 1] for q in range(n + 1)]


def is_cycle(cc, q: int, chain) -> bool:
    bd = cc.boundary(q)
    return not matvec(bd, chain).any() if bd.shape[0] else True



def top_face_index(sc: SimplicialComplex, q: int, start: int) -> np.ndarray:
    """Cached indices of the faces ``[v_start..v_{start+q}]`` of every top simplex."""
    cache = sc.__dict__.setdefault("_face_cache", {})
    if (q, start) not in cache:
        cache[(q, start)] = sc.faces(q, start)
    return cache[(q, start)]

"""CSS codes from chain complexes, exact distances and subsystem selection.

Qubits sit on q-cells.  X checks are the rows of ``∂_q`` and Z checks the rows
of ``∂_{q+1}^T``, so Z logicals are q-cycles and X logicals q-cocycles.  A
cycle acts on logical qubit i when it pairs to 1 with the i-th conjugate
cocycle (and symmetrically for cocycles).

Exact minimum weights come from one of two searches:

* enumeration of the whole check kernel in Gray-code order, used while the
  kernel dimension is at most the exhaustive threshold;
* a depth-first search that grows a support one qubit at a time.  Any
  kernel vector containing the current support must also contain another
  qubit of each unsatisfied check, so branching on the lowest unsatisfied
  check and seeding with the lowest qubit reaches every candidate.  A
  trivial vector strictly inside a minimum logical would leave a lighter
  logical behind, so such branches are cut.  Iterative deepening makes the
  first hit a minimum.

When the search exceeds its node budget the report falls back to random
information-set upper bounds together with the depth the search certified.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numba
import numpy as np
import scipy.sparse as sp

from . import gf2
from .complex import ChainComplex, DegreeOutOfRange
from .homology import HomologyBasis, homology_basis, pairing_matrix

EXHAUSTIVE_DIM = 26
DEFAULT_NODE_BUDGET = 50_000_000


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class CssCode:
    degree: int
    hx: sp.csr_matrix
    hz: sp.csr_matrix
    logical: HomologyBasis
    subsystem_mask: tuple[int, ...] | None = None

    @property
    def n_qubits(self) -> int:
        return self.hx.shape[1]

    @property
    def k(self) -> int:
        return self.logical.betti

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(range(self.k)) if self.subsystem_mask is None else self.subsystem_mask

    @property
    def stabilizer_weight(self) -> int:
        w = 0
        for h in (self.hx, self.hz):
            if h.shape[0] and h.nnz:
                w = max(w, int(np.diff(h.indptr).max()))
        return w


def css_from_complex(cc: ChainComplex, q: int, logical: HomologyBasis | None = None, cycle_hint=None) -> CssCode:
    """Code with qubits on q-cells; the logical basis is computed and normalized unless given."""
    if not 0 <= q <= cc.dim:
        raise DegreeOutOfRange(f"degree {q} outside 0..{cc.dim}")
    hx = cc.boundary(q).tocsr()
    hz = cc.coboundary(q).tocsr()
    if logical is None:
        logical = homology_basis(cc, q, cycle_hint=cycle_hint)
    return CssCode(q, hx, hz, logical)


def subsystem_select(code: CssCode, keep) -> CssCode:
    """Mark logical indices in ``keep`` as the encoded qubits; the rest become gauge."""
    keep = tuple(sorted({int(i) for i in keep}))
    if any(i < 0 or i >= code.k for i in keep):
        raise IndexOutOfRange(f"keep {keep} outside 0..{code.k - 1}")
    return replace(code, subsystem_mask=keep)


# ------------------------------------------------------------------ kernels


@numba.njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@numba.njit(cache=True)
def _gray_min(basis_words, basis_masks, keep, exact):
    """Minimum weight over nonzero kernel combinations whose logical mask passes.

    ``exact`` selects ``mask == keep`` instead of ``mask & keep != 0``.
    Returns -1 when no combination passes.
    """
    k, nwords = basis_words.shape
    cur = np.zeros(nwords, dtype=np.uint64)
    mask = np.uint64(0)
    best = -1
    for i in range(1, np.int64(1) << k):
        j = 0
        while not (i >> j) & 1:
            j += 1
        for w in range(nwords):
            cur[w] ^= basis_words[j, w]
        mask ^= basis_masks[j]
        ok = (mask == keep) if exact else ((mask & keep) != np.uint64(0))
        if ok:
            wt = 0
            for w in range(nwords):
                wt += _popcount(cur[w])
            if best < 0 or wt < best:
                best = wt
    return best


@numba.njit(cache=True)
def _toggle(j, in_set, syn, state, qmask, q_ptr, q_idx):
    in_set[j] = not in_set[j]
    for s in range(q_ptr[j], q_ptr[j + 1]):
        r = q_idx[s]
        if syn[r]:
            syn[r] = False
            state[0] -= 1
        else:
            syn[r] = True
            state[0] += 1
    state[1] ^= qmask[j]


@numba.njit(cache=True)
def _search_from(seed, limit, keep, qmask, h_ptr, h_idx, q_ptr, q_idx, cmax, syn, in_set, chosen, fc, ft, state, nodes, budget):
    """Look for a logical of weight <= limit whose lowest qubit is ``seed``.

    ``state`` holds (unsatisfied check count, logical mask).  Returns the
    weight found, 0 when there is none, -1 when the node budget ran out.
    All work arrays are restored before returning.
    """
    _toggle(seed, in_set, syn, state, qmask, q_ptr, q_idx)
    chosen[0] = seed
    depth = 1
    action = 0
    while True:
        if action == 0:
            nodes[0] += 1
            if nodes[0] > budget:
                for d in range(depth - 1, -1, -1):
                    _toggle(chosen[d], in_set, syn, state, qmask, q_ptr, q_idx)
                return -1
            unsat = np.int64(state[0])
            if unsat == 0:
                if (state[1] & keep) != np.uint64(0):
                    found = depth
                    for d in range(depth - 1, -1, -1):
                        _toggle(chosen[d], in_set, syn, state, qmask, q_ptr, q_idx)
                    return found
                action = 1
            elif depth == limit or depth + (unsat + cmax - 1) // cmax > limit:
                action = 1
            else:
                c = 0
                while not syn[c]:
                    c += 1
                fc[depth] = c
                ft[depth] = h_ptr[c]
                action = 2
        elif action == 1:
            depth -= 1
            _toggle(chosen[depth], in_set, syn, state, qmask, q_ptr, q_idx)
            if depth == 0:
                return 0
            action = 2
        else:
            c = fc[depth]
            t = ft[depth]
            moved = False
            while t < h_ptr[c + 1]:
                j = h_idx[t]
                t += 1
                if j > seed and not in_set[j]:
                    ft[depth] = t
                    _toggle(j, in_set, syn, state, qmask, q_ptr, q_idx)
                    chosen[depth] = j
                    depth += 1
                    moved = True
                    break
            if moved:
                action = 0
            else:
                ft[depth] = t
                action = 1


@numba.njit(cache=True)
def _connected_min(max_weight, keep, qmask, h_ptr, h_idx, q_ptr, q_idx, cmax, n_checks, budget):
    """Iterative deepening over weights.  Returns (weight or -1, weights certified absent below)."""
    n = qmask.shape[0]
    syn = np.zeros(n_checks, dtype=np.bool_)
    in_set = np.zeros(n, dtype=np.bool_)
    chosen = np.zeros(max_weight + 1, dtype=np.int64)
    fc = np.zeros(max_weight + 1, dtype=np.int64)
    ft = np.zeros(max_weight + 1, dtype=np.int64)
    state = np.zeros(2, dtype=np.uint64)
    nodes = np.zeros(1, dtype=np.int64)
    for w in range(1, max_weight + 1):
        for seed in range(n):
            state[0] = 0
            state[1] = 0
            res = _search_from(seed, w, keep, qmask, h_ptr, h_idx, q_ptr, q_idx, cmax, syn, in_set, chosen, fc, ft, state, nodes, budget)
            if res > 0:
                return res, w
            if res < 0:
                return -1, w
    return -1, max_weight + 1


# ------------------------------------------------------------------ distance


@dataclass(frozen=True)
class Bound:
    """Minimum weight: exact when ``lower == upper``; ``None`` means no logical operators."""

    lower: int | None
    upper: int | None
    search: str

    @property
    def exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def text(self) -> str:
        if self.lower is None:
            return "none"
        if self.exact:
            return str(self.lower)
        return f"[{self.lower},{self.upper}]"


@dataclass(frozen=True)
class DistanceReport:
    d_z: Bound
    d_x: Bound
    seed: int

    @property
    def method(self) -> str:
        return "exhaustive" if all(b.exact or b.lower is None for b in (self.d_z, self.d_x)) else "randomized"

    @property
    def d(self) -> int | None:
        vals = [b.value for b in (self.d_z, self.d_x) if b.value is not None]
        return min(vals) if vals else None

    def lines(self) -> list[str]:
        return [
            f"dZ={self.d_z.text()}",
            f"dX={self.d_x.text()}",
            f"method={self.method}",
            f"search_z={self.d_z.search}",
            f"search_x={self.d_x.search}",
            f"seed={self.seed}",
        ]


def _masks(conjugates: np.ndarray, keep: tuple[int, ...]) -> tuple[np.ndarray, np.uint64]:
    """Per-qubit bitmask of the kept conjugate representatives that touch it."""
    if len(keep) > 64:
        raise ValueError("at most 64 kept logical qubits are supported")
    n = conjugates.shape[1]
    qmask = np.zeros(n, dtype=np.uint64)
    for bit, i in enumerate(keep):
        qmask[conjugates[i].astype(bool)] |= np.uint64(1) << np.uint64(bit)
    keep_bits = np.uint64((1 << len(keep)) - 1) if keep else np.uint64(0)
    return qmask, keep_bits


def min_logical_weight(
    checks,
    conjugates: np.ndarray,
    keep: tuple[int, ...],
    threshold: int = EXHAUSTIVE_DIM,
    node_budget: int = DEFAULT_NODE_BUDGET,
    draws: int = 200,
    seed: int = 0,
    force: str | None = None,
) -> Bound:
    """Least weight of ``v`` with ``checks v = 0`` and ``<v, conjugates[i]> = 1`` for some kept i.

    Args:
        checks: check matrix (sparse or dense), one row per check.
        conjugates: rows pairing with the logical classes.
        keep: indices of the conjugate rows that count.
        threshold: largest kernel dimension enumerated exhaustively.
        node_budget: node limit of the connected search.
        draws: random information sets tried when the search gives up.
        seed: generator seed for those draws.
        force: ``"enumeration"`` or ``"connected"`` to pick the exact search.
    """
    checks = sp.csr_matrix(checks, dtype=np.uint8)
    if not keep:
        return Bound(None, None, "none")
    n = checks.shape[1]
    qmask, keep_bits = _masks(conjugates, keep)
    kdim = n - gf2.rank(checks) if n * max(checks.shape[0], 1) <= gf2.DENSE_LIMIT else None
    use_enum = force == "enumeration" or (force is None and kdim is not None and kdim <= threshold)
    if use_enum:
        kernel = gf2.kernel_basis(checks)
        words = gf2.BitMatrix.from_dense(kernel).words if kernel.shape[0] else np.zeros((0, 1), np.uint64)
        kmasks = np.zeros(kernel.shape[0], dtype=np.uint64)
        for r in range(kernel.shape[0]):
            kmasks[r] = np.bitwise_xor.reduce(qmask[kernel[r].astype(bool)]) if kernel[r].any() else 0
        best = _gray_min(words, kmasks, keep_bits, False)
        if best < 0:
            return Bound(None, None, "enumeration")
        return Bound(int(best), int(best), "enumeration")
    csc = checks.tocsc()
    csc.sort_indices()
    checks.sort_indices()
    col_weights = np.diff(csc.indptr)
    cmax = int(col_weights.max()) if n else 1
    found, certified = _connected_min(
        n,
        keep_bits,
        qmask,
        checks.indptr.astype(np.int64),
        checks.indices.astype(np.int64),
        csc.indptr.astype(np.int64),
        csc.indices.astype(np.int64),
        max(cmax, 1),
        checks.shape[0],
        node_budget,
    )
    if found > 0:
        return Bound(int(found), int(found), "connected")
    if certified > n:
        return Bound(None, None, "connected")
    upper = _random_upper(checks, qmask, keep_bits, draws, seed)
    return Bound(int(certified), upper, "randomized")


def _random_upper(checks, qmask, keep_bits, draws: int, seed: int) -> int | None:
    """Best weight among systematic kernel vectors under random column orders."""
    rng = np.random.default_rng(seed)
    dense = checks.toarray()
    n = dense.shape[1]
    best = None
    for _ in range(draws):
        perm = rng.permutation(n)
        kernel = gf2.kernel_basis(dense[:, perm])
        if kernel.shape[0] == 0:
            break
        vecs = np.zeros_like(kernel)
        vecs[:, perm] = kernel
        for v in vecs:
            m = np.bitwise_xor.reduce(qmask[v.astype(bool)]) if v.any() else np.uint64(0)
            if m & keep_bits:
                w = int(v.sum())
                best = w if best is None else min(best, w)
    return best


def distance(code: CssCode, budget: int = 200, seed: int = 0, threshold: int = EXHAUSTIVE_DIM, node_budget: int = DEFAULT_NODE_BUDGET, force: str | None = None) -> DistanceReport:
    """Z and X distances of the (subsystem) code; ``budget`` random draws back up the exact search."""
    keep = code.kept
    if code.k == 0:
        keep = ()
    dz = min_logical_weight(code.hx, code.logical.cocycles, keep, threshold, node_budget, budget, seed, force)
    dx = min_logical_weight(code.hz, code.logical.cycles, keep, threshold, node_budget, budget, seed, force)
    return DistanceReport(dz, dx, seed)


def class_weights(code: CssCode, **kw) -> list[tuple[Bound, Bound]]:
    """Per logical qubit, the least Z and X weights of an operator acting on it."""
    out = []
    for i in range(code.k):
        dz = min_logical_weight(code.hx, code.logical.cocycles, (i,), **kw)
        dx = min_logical_weight(code.hz, code.logical.cycles, (i,), **kw)
        out.append((dz, dx))
    return out


def parameters_report(code: CssCode, budget: int = 200, seed: int = 0, per_class: bool = True, **kw) -> list[str]:
    """``key=value`` report lines followed by the per-class weight table."""
    rep = distance(code, budget=budget, seed=seed, **kw)
    lines = [f"N={code.n_qubits}", f"K={code.k}"]
    if code.subsystem_mask is not None:
        lines.append("keep=" + ",".join(str(i) for i in code.subsystem_mask))
    lines += [rep.lines()[0], rep.lines()[1], f"w={code.stabilizer_weight}"] + rep.lines()[2:]
    if per_class:
        for i, (bz, bx) in enumerate(class_weights(code, threshold=kw.get("threshold", EXHAUSTIVE_DIM), seed=seed)):
            lines.append(f"class {i} Z={bz.text()} X={bx.text()}")
    return lines


def commutes(code: CssCode) -> bool:
    prod = code.hx.astype(np.int64) @ code.hz.T.astype(np.int64)
    prod.data %= 2
    return prod.count_nonzero() == 0


def kept_pairing_is_identity(code: CssCode) -> bool:
    keep = list(code.kept)
    p = pairing_matrix(code.logical.cycles[keep], code.logical.cocycles[keep]) if keep else np.zeros((0, 0))
    return bool(np.array_equal(p, np.eye(len(keep), dtype=np.uint8)))

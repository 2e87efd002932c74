"""Homology and cohomology bases over GF(2) and the chain-cochain pairing.

Cycle and cocycle representatives are rows of 2-D ``uint8`` arrays.  Dense
bases come from echelon elimination; product complexes too large for dense
elimination get their bases from the Künneth construction in
:mod:`triplecup.product`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import gf2
from .complex import ChainComplex, DegreeOutOfRange, SimplicialComplex, chain_complex_of


class LengthMismatch(ValueError):
    pass


class DegeneratePairing(ValueError):
    """The cycle-cocycle pairing matrix is singular."""


class NotClosedManifold(ValueError):
    pass


@dataclass(frozen=True)
class HomologyBasis:
    """Paired cycle and cocycle representatives in one degree.

    ``labels`` is filled for product bases: one tuple of factor-class
    references per representative.
    """

    degree: int
    cycles: np.ndarray
    cocycles: np.ndarray
    normalized: bool = False
    labels: tuple | None = field(default=None, compare=False)

    @property
    def betti(self) -> int:
        return self.cycles.shape[0]

    def __len__(self) -> int:
        return self.betti


def _rows(vectors, length: int) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.uint8)
    if vectors.size == 0:
        return np.zeros((0, length), dtype=np.uint8)
    return vectors.reshape(-1, length)


def homology_basis(cc: ChainComplex, q: int, cycle_hint=None, normalize: bool = True) -> HomologyBasis:
    """Echelon homology/cohomology representatives at degree ``q``.

    Args:
        cc: the chain complex.
        q: degree, ``0 <= q <= cc.dim``.
        cycle_hint: optional cycles tried before the echelon kernel basis, so
            callers can pin representatives of chosen classes.
        normalize: transform the cocycles so the pairing matrix is the identity.
    """
    if not 0 <= q <= cc.dim:
        raise DegreeOutOfRange(f"degree {q} outside 0..{cc.dim}")
    n = cc.dims[q]
    cycles_all = gf2.kernel_basis(cc.boundary(q)) if n else np.zeros((0, 0), dtype=np.uint8)
    boundaries = gf2.image_basis(cc.boundary(q + 1)) if cc.boundary(q + 1).shape[1] else np.zeros((0, n), np.uint8)
    if cycle_hint is not None:
        hint = _rows(cycle_hint, n)
        if hint.shape[0] and gf2.matvec(cc.boundary(q), hint.T).any():
            raise ValueError("cycle hint contains a non-cycle")
        cycles_all = np.vstack([hint, cycles_all])
    cycles = gf2.quotient_basis(cycles_all, boundaries) if n else np.zeros((0, 0), dtype=np.uint8)

    cocycles_all = gf2.kernel_basis(cc.coboundary(q)) if n else np.zeros((0, 0), dtype=np.uint8)
    d_prev = cc.coboundary(q - 1)
    coboundaries = gf2.image_basis(d_prev) if d_prev.shape[1] else np.zeros((0, n), np.uint8)
    cocycles = gf2.quotient_basis(cocycles_all, coboundaries) if n else np.zeros((0, 0), dtype=np.uint8)

    if cycles.shape[0] != cocycles.shape[0]:
        raise DegeneratePairing(f"{cycles.shape[0]} cycle classes but {cocycles.shape[0]} cocycle classes")
    basis = HomologyBasis(q, _rows(cycles, n), _rows(cocycles, n))
    return normalize_pairing(basis) if normalize else basis


def pairing_matrix(cycles, cocycles) -> np.ndarray:
    """Entry ``(i, j)`` is ``<cycle_i, cocycle_j>`` mod 2."""
    cycles = np.atleast_2d(np.asarray(cycles, dtype=np.uint8))
    cocycles = np.atleast_2d(np.asarray(cocycles, dtype=np.uint8))
    if cycles.shape[1] != cocycles.shape[1] and cycles.size and cocycles.size:
        raise LengthMismatch(f"cycle length {cycles.shape[1]} vs cocycle length {cocycles.shape[1]}")
    if cycles.size == 0 or cocycles.size == 0:
        return np.zeros((cycles.shape[0] if cycles.size else 0, cocycles.shape[0] if cocycles.size else 0), np.uint8)
    return ((cycles.astype(np.float64) @ cocycles.T.astype(np.float64)).astype(np.int64) & 1).astype(np.uint8)


def normalize_pairing(basis: HomologyBasis) -> HomologyBasis:
    """Replace cocycles by combinations that pair as the identity with the cycles."""
    k = basis.betti
    if k == 0:
        return replace(basis, normalized=True)
    p = pairing_matrix(basis.cycles, basis.cocycles)
    try:
        inv = gf2.inverse(p)
    except ValueError as exc:
        raise DegeneratePairing(str(exc)) from None
    new = ((inv.T.astype(np.float64) @ basis.cocycles.astype(np.float64)).astype(np.int64) & 1).astype(np.uint8)
    return replace(basis, cocycles=new, normalized=True)


def is_nontrivial(cc: ChainComplex, q: int, chain) -> bool:
    """True when the cycle ``chain`` is not a boundary (rank test)."""
    bd = cc.boundary(q + 1)
    if bd.shape[1] == 0:
        return bool(np.asarray(chain).any())
    dense = bd.toarray()
    return gf2.rank(np.column_stack([dense, chain])) > gf2.rank(dense)


# ------------------------------------------------------------ betti numbers


def betti_numbers_dense(cc: ChainComplex) -> list[int]:
    ranks = [0] + [gf2.rank(cc.boundary(q)) for q in range(1, cc.dim + 1)]
    return [cc.dims[q] - ranks[q] - (ranks[q + 1] if q < cc.dim else 0) for q in range(cc.dim + 1)]


def betti_numbers_sparse(cc: ChainComplex) -> list[int]:
    """Betti numbers by sparse column reduction of the coboundaries.

    Degrees are processed upward.  A pivot of ``d^q`` at a (q+1)-simplex
    means that simplex's column of ``d^{q+1}`` reduces to zero, so it is
    skipped.
    """
    ranks = [0] * (cc.dim + 2)
    skip = None
    for q in range(cc.dim):
        lows = gf2.sparse_lows(cc.coboundary(q).tocsc(), skip)
        pivots = lows[lows >= 0]
        ranks[q + 1] = len(pivots)
        skip = np.zeros(cc.dims[q + 1], dtype=np.bool_)
        skip[pivots] = True
    return [cc.dims[q] - ranks[q] - ranks[q + 1] for q in range(cc.dim + 1)]


def betti_numbers(cc: ChainComplex) -> list[int]:
    largest = max((cc.dims[q - 1] * cc.dims[q] for q in range(1, cc.dim + 1)), default=0)
    if largest > gf2.DENSE_LIMIT:
        return betti_numbers_sparse(cc)
    return betti_numbers_dense(cc)


def kunneth_convolution(*betti_lists) -> list[int]:
    out = [1]
    for b in betti_lists:
        out = np.convolve(out, b).tolist()
    return [int(x) for x in out]


# ------------------------------------------------------------------ pairing


def basis_of(sc: SimplicialComplex, q: int) -> HomologyBasis:
    """Normalized basis for a simplicial complex; Künneth for products, echelon otherwise."""
    if sc.factors:
        from .product import kunneth_basis

        return kunneth_basis(sc, q)
    return homology_basis(chain_complex_of(sc, verify=False), q)


def poincare_pairing(sc: SimplicialComplex, p: int, low: HomologyBasis | None = None, high: HomologyBasis | None = None) -> np.ndarray:
    """Matrix of ``∫ a_i ∪ b_j`` for cocycle bases in degrees p and n-p."""
    from .cupgate import cup_pairing

    if not sc.is_closed_manifold:
        raise NotClosedManifold("pairing needs a closed pseudomanifold")
    n = sc.dim
    if not 0 <= p <= n:
        raise DegreeOutOfRange(f"degree {p} outside 0..{n}")
    low = basis_of(sc, p) if low is None else low
    high = basis_of(sc, n - p) if high is None else high
    return cup_pairing(sc, p, low.cocycles, high.cocycles)


# ---------------------------------------------------------------- file io


def format_basis(basis: HomologyBasis) -> str:
    lines = []
    for kind, reps in (("cycle", basis.cycles), ("cocycle", basis.cocycles)):
        for i, row in enumerate(reps):
            support = " ".join(str(int(x)) for x in np.flatnonzero(row))
            lines.append(f"{kind} {basis.degree} {i} {support}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")


def parse_basis(text: str, length: int) -> HomologyBasis:
    reps: dict[str, list[np.ndarray]] = {"cycle": [], "cocycle": []}
    degree = 0
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        kind, degree = parts[0], int(parts[1])
        vec = np.zeros(length, dtype=np.uint8)
        vec[[int(x) for x in parts[3:]]] = 1
        reps[kind].append(vec)
    cycles = _rows(reps["cycle"], length)
    cocycles = _rows(reps["cocycle"], length)
    normalized = cycles.shape[0] == cocycles.shape[0] and np.array_equal(
        pairing_matrix(cycles, cocycles), np.eye(cycles.shape[0], dtype=np.uint8)
    )
    return HomologyBasis(degree, cycles, cocycles, normalized=bool(normalized))


def write_basis(basis: HomologyBasis, path) -> None:
    Path(path).write_text(format_basis(basis))

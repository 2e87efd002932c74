"""Künneth bases of product complexes, class families and logical CCZ counts.

For a product ``F_1 x .. x F_m`` with the staircase triangulation:

* the cross product of cocycles ``a_k`` of degrees ``d_k`` evaluates a
  simplex ``[u_0..u_q]`` as ``Π_k a_k(π_k[u_{s_k}..u_{s_k+d_k}])`` with
  ``s_k = d_1 + .. + d_{k-1}``, and is zero when a projected face is
  degenerate;
* the cross product of cycles is the shuffle sum over all unit-step
  lattice paths through ``σ_1 x .. x σ_m``.

Evaluating the first on the second gives ``Π_k <a_k, z_k>``, so normalized
factor bases give a normalized product basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .complex import DegreeOutOfRange, SimplicialComplex, factor_vertex
from .cupgate import Cochain, LogicalCczTensor, triple_cup_sum
from .homology import HomologyBasis, basis_of, pairing_matrix


class LabelMismatch(ValueError):
    pass


@dataclass(frozen=True)
class KunnethLabel:
    """Factor-class references ``(factor, degree, index)``, one per factor."""

    refs: tuple[tuple[int, int, int], ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r[1] for r in self.refs)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(r[2] for r in self.refs)


def factor_basis(f: SimplicialComplex, d: int) -> HomologyBasis:
    cache = f.__dict__.setdefault("_basis_cache", {})
    if d not in cache:
        cache[d] = basis_of(f, d)
    return cache[d]


def compositions(total: int, caps: list[int]):
    """Degree tuples with entries in ``0..caps[k]`` summing to ``total``, lexicographic."""
    for combo in itertools.product(*[range(c + 1) for c in caps]):
        if sum(combo) == total:
            yield combo


def _face_indices(sc: SimplicialComplex, cells: np.ndarray, degrees) -> list[np.ndarray]:
    """Per factor, the index of the projected face (``-1`` when degenerate)."""
    out = []
    start = 0
    for k, (f, d) in enumerate(zip(sc.factors, degrees)):
        verts = factor_vertex(sc, cells[:, start : start + d + 1], k)
        ok = (np.diff(verts, axis=1) > 0).all(axis=1) if d else np.ones(len(cells), dtype=bool)
        idx = np.full(len(cells), -1, dtype=np.int64)
        if ok.any():
            idx[ok] = f.index_of(d, verts[ok], strict=False)
        out.append(idx)
        start += d
    return out


def cross_cochain(sc: SimplicialComplex, degrees, cochains, faces=None) -> np.ndarray:
    """Cross product of factor cochains as a cochain on ``sc``.

    ``faces`` may carry a precomputed ``_face_indices`` result for these degrees.
    """
    q = sum(degrees)
    cells = sc.simplices[q]
    if faces is None:
        faces = _face_indices(sc, cells, degrees)
    value = np.ones(len(cells), dtype=np.uint8)
    for idx, c in zip(faces, cochains):
        c = np.asarray(c, dtype=np.uint8)
        value &= np.where(idx >= 0, c[np.maximum(idx, 0)], 0).astype(np.uint8)
    return value


def _shuffle_paths(degrees):
    """Unit-step lattice paths from 0 to ``degrees``, as per-factor coordinate sequences."""
    steps = [k for k, d in enumerate(degrees) for _ in range(d)]
    seen = sorted(set(itertools.permutations(steps)))
    paths = []
    for order in seen:
        pos = [0] * len(degrees)
        seq = [tuple(pos)]
        for k in order:
            pos[k] += 1
            seq.append(tuple(pos))
        paths.append(np.array(seq, dtype=np.int64))
    return paths


def cross_chain(sc: SimplicialComplex, degrees, chains) -> np.ndarray:
    """Shuffle (Eilenberg-Zilber) cross product of factor chains as a chain on ``sc``."""
    q = sum(degrees)
    supports = [f.simplices[d][np.asarray(c, dtype=bool)].astype(np.int64) for f, d, c in zip(sc.factors, degrees, chains)]
    out = np.zeros(sc.count(q), dtype=np.int64)
    if any(len(s) == 0 for s in supports):
        return out.astype(np.uint8)
    grids = np.meshgrid(*[np.arange(len(s)) for s in supports], indexing="ij")
    picks = [g.ravel() for g in grids]
    for path in _shuffle_paths(degrees):
        verts = np.zeros((len(picks[0]), q + 1), dtype=np.int64)
        for k, (f, s) in enumerate(zip(sc.factors, supports)):
            verts = verts * f.n_vertices + s[picks[k]][:, path[:, k]]
        np.add.at(out, sc.index_of(q, verts), 1)
    return (out & 1).astype(np.uint8)


def kunneth_basis(sc: SimplicialComplex, q: int, check: bool = True) -> HomologyBasis:
    """Product basis built from factor bases, one labeled class per factor-class tuple.

    Classes are ordered by degree composition (lexicographic), then by factor
    indices.  With ``check`` the representatives are verified to pair as the
    identity.
    """
    if not sc.factors:
        raise LabelMismatch("complex has no product structure")
    if not 0 <= q <= sc.dim:
        raise DegreeOutOfRange(f"degree {q} outside 0..{sc.dim}")
    cache = sc.__dict__.setdefault("_kunneth_cache", {})
    if q not in cache:
        cache[q] = _kunneth_basis(sc, q, check)
    return cache[q]


def _kunneth_basis(sc: SimplicialComplex, q: int, check: bool) -> HomologyBasis:
    cycles, cocycles, labels = [], [], []
    for degrees in compositions(q, [f.dim for f in sc.factors]):
        bases = [factor_basis(f, d) for f, d in zip(sc.factors, degrees)]
        if any(b.betti == 0 for b in bases):
            continue
        faces = _face_indices(sc, sc.simplices[q], degrees)
        for idx in itertools.product(*[range(b.betti) for b in bases]):
            cycles.append(cross_chain(sc, degrees, [b.cycles[i] for b, i in zip(bases, idx)]))
            cocycles.append(cross_cochain(sc, degrees, [b.cocycles[i] for b, i in zip(bases, idx)], faces))
            labels.append(KunnethLabel(tuple((k, d, i) for k, (d, i) in enumerate(zip(degrees, idx)))))
    n = sc.count(q)
    cyc = np.array(cycles, dtype=np.uint8).reshape(-1, n)
    coc = np.array(cocycles, dtype=np.uint8).reshape(-1, n)
    if check and len(labels) and not np.array_equal(pairing_matrix(cyc, coc), np.eye(len(labels), dtype=np.uint8)):
        raise LabelMismatch("cross-product representatives do not pair as the identity")
    return HomologyBasis(q, cyc, coc, normalized=True, labels=tuple(labels))


def certify_basis(sc: SimplicialComplex, basis: HomologyBasis, betti: int) -> list[str]:
    """Problems found when checking a basis against an independently computed Betti number."""
    from .gf2 import matvec

    problems = []
    q = basis.degree
    if basis.cycles.shape[0] and matvec(sc.boundary(q), basis.cycles.T).any():
        problems.append("a representative is not a cycle")
    if basis.cocycles.shape[0] and matvec(sc.coboundary(q), basis.cocycles.T).any():
        problems.append("a representative is not a cocycle")
    if not np.array_equal(pairing_matrix(basis.cycles, basis.cocycles), np.eye(basis.betti, dtype=np.uint8)):
        problems.append("pairing is not the identity")
    if basis.betti != betti:
        problems.append(f"{basis.betti} classes but b_{q} = {betti}")
    return problems


def alignment(labeled: HomologyBasis, other: HomologyBasis) -> np.ndarray:
    """Coordinates of each labeled class in ``other``: entry ``(i, j) = <other.cycle_i, labeled.cocycle_j>``.

    Raises:
        LabelMismatch: the two bases do not span the same cohomology.
    """
    from .gf2 import rank

    m = pairing_matrix(other.cycles, labeled.cocycles)
    if m.shape[0] != m.shape[1] or (m.size and rank(m) < m.shape[0]):
        raise LabelMismatch("labeled classes are not a basis of the computed cohomology")
    return m


# ------------------------------------------------------------------ families


FAMILY_NAMES = ("alpha", "beta", "gamma")


def default_patterns(q: int) -> dict[str, list[tuple[int, int, int]]]:
    """Compositions of each family: factor pairs (0,1), (1,2), (2,0) share the degree."""
    inner = range(1, q)
    return {
        "alpha": [(l, q - l, 0) for l in inner],
        "beta": [(0, l, q - l) for l in inner],
        "gamma": [(q - l, 0, l) for l in inner],
    }


def patterns_from_pairs(pairs) -> dict[str, list[tuple[int, int, int]]]:
    """Families ``a^{p0} b^{s1} c^0``, ``a^0 b^{p1} c^{s2}``, ``a^{s0} b^0 c^{p2}``."""
    (p0, s0), (p1, s1), (p2, s2) = pairs
    return {"alpha": [(p0, s1, 0)], "beta": [(0, p1, s2)], "gamma": [(s0, 0, p2)]}


def kunneth_families(basis: HomologyBasis, q: int, patterns=None) -> dict[str, list[int]]:
    """Group the classes of a labeled basis into alpha/beta/gamma and residual.

    Returns class indices per family name.
    """
    if basis.labels is None:
        raise LabelMismatch("basis carries no Künneth labels")
    if basis.degree != q:
        raise DegreeOutOfRange(f"basis has degree {basis.degree}, asked for {q}")
    if basis.labels and len(basis.labels[0].refs) != 3:
        raise LabelMismatch("families need exactly three factors")
    patterns = patterns or default_patterns(q)
    out: dict[str, list[int]] = {name: [] for name in FAMILY_NAMES}
    out["residual"] = []
    for i, label in enumerate(basis.labels):
        for name in FAMILY_NAMES:
            if label.degrees in patterns[name]:
                out[name].append(i)
                break
        else:
            out["residual"].append(i)
    return out


@dataclass(frozen=True)
class CczCount:
    family_sizes: dict[str, int]
    counts: dict[tuple[str, str, str], int]
    aligned: np.ndarray
    mismatches: int

    @property
    def total(self) -> int:
        return self.counts[FAMILY_NAMES]


def factorized_value(sc: SimplicialComplex, labels: tuple[KunnethLabel, KunnethLabel, KunnethLabel]) -> int:
    """Product over factors of ``∫_{F_k} x_k ∪ y_k ∪ z_k`` for the labels' factor classes."""
    value = 1
    for k, f in enumerate(sc.factors):
        degs = [lab.refs[k][1] for lab in labels]
        if sum(degs) != f.dim:
            return 0
        cochains = [Cochain(d, factor_basis(f, d).cocycles[lab.refs[k][2]]) for d, lab in zip(degs, labels)]
        value &= triple_cup_sum(f, *cochains)
        if not value:
            return 0
    return value


def ccz_count(sc: SimplicialComplex, tensor: LogicalCczTensor, bases, families: dict[str, list[int]]) -> CczCount:
    """Nonzero tensor entries grouped by the families of their three classes.

    Every entry in the alpha-beta-gamma block is recomputed as the product of
    per-factor triple cup sums; disagreements are counted in ``mismatches``.
    """
    for b in bases:
        if b.labels is None or len(b.labels) != b.betti:
            raise LabelMismatch("every copy needs a labeled basis")
    if tensor.dims != tuple(b.betti for b in bases):
        raise LabelMismatch("tensor shape does not match the bases")
    dense = tensor.dense()
    names = FAMILY_NAMES + ("residual",)
    counts = {}
    for combo in itertools.product(names, repeat=3):
        sub = dense[np.ix_(families[combo[0]], families[combo[1]], families[combo[2]])]
        counts[combo] = int(sub.sum())
    aligned = []
    mismatches = 0
    for a in families["alpha"]:
        for b in families["beta"]:
            for c in families["gamma"]:
                fact = factorized_value(sc, (bases[0].labels[a], bases[1].labels[b], bases[2].labels[c]))
                if fact != dense[a, b, c]:
                    mismatches += 1
                if dense[a, b, c]:
                    aligned.append((a, b, c))
    sizes = {name: len(families[name]) for name in names}
    return CczCount(sizes, counts, np.array(aligned, dtype=np.int64).reshape(-1, 3), mismatches)


# ------------------------------------------------------------------ file io


def format_family_table(basis: HomologyBasis, families: dict[str, list[int]]) -> str:
    lines = []
    for name in FAMILY_NAMES + ("residual",):
        for i in families[name]:
            lab = basis.labels[i]
            degs = ",".join(str(d) for d in lab.degrees)
            idx = ",".join(str(x) for x in lab.indices)
            lines.append(f"{name} {degs} {idx} {i}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_family_table(text: str) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {name: [] for name in FAMILY_NAMES + ("residual",)}
    for line in text.splitlines():
        parts = line.split()
        if parts:
            out[parts[0]].append(int(parts[3]))
    return out


def write_family_table(basis: HomologyBasis, families, path) -> None:
    Path(path).write_text(format_family_table(basis, families))

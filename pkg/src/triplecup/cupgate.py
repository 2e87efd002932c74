"""Cup products, CCZ circuits from triple cup products, and their logical action.

Every cochain operation here uses the complex's global vertex order.  A top
simplex ``[v_0 .. v_n]`` with degrees ``q1 + q2 + q3 = n`` contributes the
gate ``CCZ([v_0..v_q1], [v_q1..v_q1+q2], [v_q1+q2..v_n])``; the circuit's
phase on cocycle eigenstates is then the triple cup product integrated over
the fundamental class.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .complex import Cochain, SimplicialComplex, top_face_index
from .gf2 import matvec


class DegreeOverflow(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class BasisMismatch(ValueError):
    pass


def _coeffs(c) -> np.ndarray:
    return np.asarray(c.coeffs if isinstance(c, Cochain) else c, dtype=np.uint8)


def cup(sc: SimplicialComplex, a: Cochain, b: Cochain) -> Cochain:
    """Front-face/back-face cup product ``(a ∪ b)[v_0..v_{p+q}] = a[v_0..v_p] b[v_p..v_{p+q}]``."""
    p, q = a.degree, b.degree
    if p + q > sc.dim:
        raise DegreeOverflow(f"degree {p}+{q} exceeds dimension {sc.dim}")
    if len(a.coeffs) != sc.count(p) or len(b.coeffs) != sc.count(q):
        raise ValueError("cochain length does not match the simplex count")
    cells = sc.simplices[p + q]
    front = sc.index_of(p, cells[:, : p + 1])
    back = sc.index_of(q, cells[:, p:])
    return Cochain(p + q, a.coeffs[front] & b.coeffs[back])


def triple_cup_sum(sc: SimplicialComplex, a: Cochain, b: Cochain, c: Cochain) -> int:
    """``Σ_top a ∪ b ∪ c`` mod 2 over all top simplices."""
    q1, q2, q3 = a.degree, b.degree, c.degree
    if q1 + q2 + q3 != sc.dim:
        raise DegreeMismatch(f"degrees {q1}+{q2}+{q3} != {sc.dim}")
    i = top_face_index(sc, q1, 0)
    j = top_face_index(sc, q2, q1)
    k = top_face_index(sc, q3, q1 + q2)
    return int((a.coeffs[i] & b.coeffs[j] & c.coeffs[k]).sum() & 1)


def cup_pairing(sc: SimplicialComplex, p: int, low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """Matrix ``∫ low_i ∪ high_j`` for rows of degree-p and degree-(n-p) cochains."""
    n = sc.dim
    i = top_face_index(sc, p, 0)
    j = top_face_index(sc, n - p, p)
    left = np.asarray(low, dtype=np.uint8)[:, i].astype(np.float64)
    right = np.asarray(high, dtype=np.uint8)[:, j].astype(np.float64)
    return ((left @ right.T).astype(np.int64) & 1).astype(np.uint8)


# ------------------------------------------------------------------ circuits


@dataclass(frozen=True)
class CczCircuit:
    """CCZ gates across three code copies, one ``(i, j, k)`` row per gate."""

    degrees: tuple[int, int, int]
    triples: np.ndarray

    def __len__(self) -> int:
        return self.triples.shape[0]

    def phase(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> int:
        """Exponent of -1 picked up by the basis state ``|x, y, z>``."""
        t = self.triples
        return int((x[t[:, 0]] & y[t[:, 1]] & z[t[:, 2]]).sum() & 1)


def synthesize_circuit(sc: SimplicialComplex, q1: int, q2: int, q3: int) -> CczCircuit:
    """One CCZ per top simplex on its front, middle and back faces; repeats cancel in pairs."""
    if q1 + q2 + q3 != sc.dim or min(q1, q2, q3) < 0:
        raise DegreeMismatch(f"degrees {q1}+{q2}+{q3} != {sc.dim}")
    triples = np.column_stack(
        [top_face_index(sc, q1, 0), top_face_index(sc, q2, q1), top_face_index(sc, q3, q1 + q2)]
    )
    return CczCircuit((q1, q2, q3), _cancel_pairs(triples))


def _cancel_pairs(triples: np.ndarray) -> np.ndarray:
    if triples.shape[0] == 0:
        return triples.reshape(0, 3).astype(np.int64)
    uniq, counts = np.unique(triples, axis=0, return_counts=True)
    return uniq[counts % 2 == 1].astype(np.int64)


def max_gates_per_qubit(circuit: CczCircuit) -> int:
    """Largest number of gates touching one qubit in any copy."""
    worst = 0
    for col in range(3):
        if len(circuit):
            worst = max(worst, int(np.bincount(circuit.triples[:, col]).max()))
    return worst


def max_top_cofaces(sc: SimplicialComplex) -> int:
    """Largest number of top simplices containing a single vertex (a bound for gate overlap)."""
    top = sc.simplices[sc.dim]
    return int(np.bincount(top.ravel(), minlength=sc.n_vertices).max()) if top.size else 0


# ------------------------------------------------------------- logical action


@dataclass(frozen=True)
class LogicalCczTensor:
    """Support of the logical CCZ tensor: rows ``(a, b, c)`` with value 1."""

    dims: tuple[int, int, int]
    entries: np.ndarray

    def dense(self) -> np.ndarray:
        out = np.zeros(self.dims, dtype=np.uint8)
        if self.entries.size:
            out[tuple(self.entries.T)] = 1
        return out

    def __len__(self) -> int:
        return self.entries.shape[0]


def _evaluation_rows(circuit: CczCircuit, bases) -> list[np.ndarray]:
    if len(bases) != 3:
        raise BasisMismatch("need one basis per code copy")
    rows = []
    for col, (basis, q) in enumerate(zip(bases, circuit.degrees)):
        cocycles = basis.cocycles if hasattr(basis, "cocycles") else np.asarray(basis)
        if hasattr(basis, "degree") and basis.degree != q:
            raise BasisMismatch(f"copy {col + 1} basis has degree {basis.degree}, circuit wants {q}")
        if cocycles.shape[0] and len(circuit) and circuit.triples[:, col].max() >= cocycles.shape[1]:
            raise BasisMismatch(f"copy {col + 1} basis is shorter than the circuit's qubit range")
        rows.append(cocycles)
    return rows


def logical_action(circuit: CczCircuit, bases, chunk: int = 1 << 15) -> LogicalCczTensor:
    """Trilinear evaluation ``Σ_gates a[i] b[j] c[k]`` for every basis triple."""
    A, B, C = _evaluation_rows(circuit, bases)
    dims = (A.shape[0], B.shape[0], C.shape[0])
    total = np.zeros((dims[0] * dims[1], dims[2]), dtype=np.int64)
    t = circuit.triples
    for start in range(0, len(circuit), chunk):
        sl = t[start : start + chunk]
        a = A[:, sl[:, 0]].astype(np.float64)
        b = B[:, sl[:, 1]].astype(np.float64)
        c = C[:, sl[:, 2]].astype(np.float64)
        ab = (a[:, None, :] * b[None, :, :]).reshape(dims[0] * dims[1], -1)
        total += (ab @ c.T).astype(np.int64)
    support = np.argwhere((total & 1).reshape(dims) == 1)
    return LogicalCczTensor(dims, support.astype(np.int64))


def cross_check(sc: SimplicialComplex, tensor: LogicalCczTensor, bases, degrees) -> list[tuple[int, int, int]]:
    """Basis triples where the tensor disagrees with ``triple_cup_sum``."""
    dense = tensor.dense()
    cocycles = [b.cocycles if hasattr(b, "cocycles") else np.asarray(b) for b in bases]
    bad = []
    for a in range(tensor.dims[0]):
        ca = Cochain(degrees[0], cocycles[0][a])
        for b in range(tensor.dims[1]):
            cb = Cochain(degrees[1], cocycles[1][b])
            for c in range(tensor.dims[2]):
                value = triple_cup_sum(sc, ca, cb, Cochain(degrees[2], cocycles[2][c]))
                if value != dense[a, b, c]:
                    bad.append((a, b, c))
    return bad


@dataclass(frozen=True)
class PhaseCheckReport:
    trials: int
    passed: int
    failed: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def lines(self) -> list[str]:
        return [f"seed={self.seed}", f"trials={self.trials}", f"passed={self.passed}", f"failed={self.failed}"]


def phase_polynomial_check(
    sc: SimplicialComplex, circuit: CczCircuit, bases, trials: int, seed: int
) -> PhaseCheckReport:
    """Compare circuit phases on ``η`` and on ``η + dζ`` for random classes and shifts.

    ``η`` in each copy is a random combination of that copy's basis cocycles
    and ``ζ`` a random cochain one degree lower.  Each trial draws from its
    own generator spawned from ``seed``.
    """
    cocycles = [c.astype(np.float32) for c in _evaluation_rows(circuit, bases)]
    cobound = [sc.coboundary(q - 1).astype(np.int32) if q >= 1 else None for q in circuit.degrees]
    cols = [np.ascontiguousarray(circuit.triples[:, k]) for k in range(3)]

    def phase(x, y, z):
        return int((x[cols[0]] & y[cols[1]] & z[cols[2]]).sum() & 1)

    passed = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        plain, shifted = [], []
        for reps, d in zip(cocycles, cobound):
            coeff = rng.integers(0, 2, size=reps.shape[0]).astype(np.float32)
            eta = ((coeff @ reps).astype(np.int64) & 1).astype(np.uint8)
            if d is not None and d.shape[1]:
                zeta = rng.integers(0, 2, size=d.shape[1], dtype=np.int32)
                xi = ((d @ zeta) & 1).astype(np.uint8)
            else:
                xi = np.zeros_like(eta)
            plain.append(eta)
            shifted.append(eta ^ xi)
        passed += phase(*plain) == phase(*shifted)
    return PhaseCheckReport(trials, passed, trials - passed, seed)


def stokes_check(sc: SimplicialComplex, trials: int, seed: int) -> PhaseCheckReport:
    """``∫ dω = 0`` for random top-minus-one cochains ``ω``."""
    d = sc.coboundary(sc.dim - 1)
    passed = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        omega = rng.integers(0, 2, size=d.shape[1], dtype=np.uint8)
        passed += int(matvec(d, omega).sum() & 1) == 0
    return PhaseCheckReport(trials, passed, trials - passed, seed)


# ---------------------------------------------------------------- hypergraph


@dataclass(frozen=True)
class InteractionHypergraph:
    """Tripartite hypergraph: vertex ``(copy, index)``; one edge per tensor entry."""

    sizes: tuple[int, int, int]
    edges: np.ndarray

    def __len__(self) -> int:
        return self.edges.shape[0]


def interaction_hypergraph(t: LogicalCczTensor) -> InteractionHypergraph:
    edges = t.entries.reshape(-1, 3)
    order = np.lexsort((edges[:, 2], edges[:, 1], edges[:, 0])) if len(edges) else np.zeros(0, dtype=np.int64)
    return InteractionHypergraph(t.dims, edges[order])


@dataclass(frozen=True)
class FountainSchedule:
    plus_set: list[tuple[int, int]]
    zero_set: list[tuple[int, int]]
    magic_count: int
    selected: np.ndarray


def fountain_schedule(h: InteractionHypergraph, induced: bool = False) -> FountainSchedule:
    """Greedy vertex-disjoint hyperedges in index order.

    With ``induced`` an edge is also skipped when taking it would leave some
    other edge with all three vertices in the plus set, so every unselected
    edge keeps a vertex in the zero set.
    """
    used = [np.zeros(s, dtype=bool) for s in h.sizes]
    chosen = []
    for e, (a, b, c) in enumerate(h.edges):
        if used[0][a] or used[1][b] or used[2][c]:
            continue
        if induced:
            trial = [u.copy() for u in used]
            trial[0][a] = trial[1][b] = trial[2][c] = True
            inside = trial[0][h.edges[:, 0]] & trial[1][h.edges[:, 1]] & trial[2][h.edges[:, 2]]
            if inside.sum() != len(chosen) + 1:
                continue
        used[0][a] = used[1][b] = used[2][c] = True
        chosen.append(e)
    plus = [(copy, int(i)) for copy in range(3) for i in np.flatnonzero(used[copy])]
    zero = [(copy, int(i)) for copy in range(3) for i in np.flatnonzero(~used[copy])]
    return FountainSchedule(plus, zero, len(chosen), np.array(chosen, dtype=np.int64))


def edges_disjoint(edges: np.ndarray) -> bool:
    """Exhaustive pairwise check that no two hyperedges share a vertex."""
    for x in range(len(edges)):
        for y in range(x + 1, len(edges)):
            if (edges[x] == edges[y]).any():
                return False
    return True


def unselected_touch_zero(h: InteractionHypergraph, schedule: FountainSchedule) -> bool:
    zero = set(schedule.zero_set)
    picked = set(schedule.selected.tolist())
    for e, edge in enumerate(h.edges):
        if e in picked:
            continue
        if not any((copy, int(edge[copy])) in zero for copy in range(3)):
            return False
    return True


# ------------------------------------------------------------------ file io


def format_circuit(circuit: CczCircuit) -> str:
    return "".join(f"CCZ {i} {j} {k}\n" for i, j, k in circuit.triples)


def parse_circuit(text: str, degrees: tuple[int, int, int]) -> CczCircuit:
    rows = [[int(x) for x in ln.split()[1:]] for ln in text.splitlines() if ln.startswith("CCZ")]
    return CczCircuit(tuple(degrees), np.array(rows, dtype=np.int64).reshape(-1, 3))


def _label(v: tuple[int, int]) -> str:
    return f"{'abc'[v[0]]}{v[1]}"


def format_hypergraph(h: InteractionHypergraph) -> str:
    lines = [" ".join(str(s) for s in h.sizes)] + [f"{a} {b} {c}" for a, b, c in h.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> InteractionHypergraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    sizes = tuple(int(x) for x in lines[0])
    edges = np.array([[int(x) for x in ln] for ln in lines[1:]], dtype=np.int64).reshape(-1, 3)
    return InteractionHypergraph(sizes, edges)


def format_fountain(s: FountainSchedule) -> str:
    plus = " ".join(_label(v) for v in s.plus_set)
    zero = " ".join(_label(v) for v in s.zero_set)
    return f"plus {plus}".rstrip() + "\n" + f"zero {zero}".rstrip() + f"\nmagic_count={s.magic_count}\n"


def write_text(text: str, path) -> None:
    Path(path).write_text(text)

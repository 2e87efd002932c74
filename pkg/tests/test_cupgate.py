import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplecup import complex as cx
from triplecup import cupgate, gf2, homology
from triplecup.complex import Cochain

from conftest import torus


def slow_cup(sc, a, p, b, q):
    """Per-simplex dictionary lookup, independent of the vectorized index search."""
    index = {tuple(int(v) for v in s): i for i, s in enumerate(sc.simplices[p])}
    index_b = {tuple(int(v) for v in s): i for i, s in enumerate(sc.simplices[q])}
    out = []
    for s in sc.simplices[p + q]:
        s = tuple(int(v) for v in s)
        out.append(a[index[s[: p + 1]]] & b[index_b[s[p:]]])
    return np.array(out, dtype=np.uint8)


def random_cochain(sc, q, rng):
    return Cochain(q, rng.integers(0, 2, size=sc.count(q), dtype=np.uint8))


@settings(max_examples=20)
@given(st.integers(0, 2**20), st.sampled_from([(0, 1), (1, 1), (1, 2), (2, 1), (0, 3)]))
def test_cup_matches_slow(seed, degs):
    sc = torus(3, 3)
    rng = np.random.default_rng(seed)
    a, b = (random_cochain(sc, d, rng) for d in degs)
    assert np.array_equal(cupgate.cup(sc, a, b).coeffs, slow_cup(sc, a.coeffs, degs[0], b.coeffs, degs[1]))


@settings(max_examples=20)
@given(st.integers(0, 2**20), st.sampled_from([(1, 1, 1), (0, 1, 2), (1, 0, 1), (2, 0, 1)]))
def test_cup_associative(seed, degs):
    sc = torus(3, 3)
    rng = np.random.default_rng(seed)
    a, b, c = (random_cochain(sc, d, rng) for d in degs)
    left = cupgate.cup(sc, cupgate.cup(sc, a, b), c)
    right = cupgate.cup(sc, a, cupgate.cup(sc, b, c))
    assert np.array_equal(left.coeffs, right.coeffs)


@settings(max_examples=15)
@given(st.integers(0, 2**20))
def test_cup_descends_to_cohomology(seed):
    sc = torus(3, 3)
    rng = np.random.default_rng(seed)
    basis = homology.basis_of(sc, 1)
    a = Cochain(1, basis.cocycles[rng.integers(basis.betti)])
    b = Cochain(1, basis.cocycles[rng.integers(basis.betti)])
    zeta = rng.integers(0, 2, size=sc.count(0), dtype=np.uint8)
    shifted = Cochain(1, a.coeffs ^ gf2.matvec(sc.coboundary(0), zeta))
    diff = cupgate.cup(sc, shifted, b).coeffs ^ cupgate.cup(sc, a, b).coeffs
    assert gf2.solve(sc.coboundary(1).toarray(), diff) is not None


def test_cup_degree_overflow():
    sc = torus(3)
    with pytest.raises(cupgate.DegreeOverflow):
        cupgate.cup(sc, Cochain(2, np.zeros(18, np.uint8)), Cochain(1, np.zeros(27, np.uint8)))
    with pytest.raises(cupgate.DegreeMismatch):
        cupgate.synthesize_circuit(sc, 1, 1, 1)


@pytest.mark.parametrize("L", [3, 4])
def test_t3_tensor_is_permutations(L):
    sc = torus(L, 3)
    basis = homology.basis_of(sc, 1)
    circuit = cupgate.synthesize_circuit(sc, 1, 1, 1)
    t = cupgate.logical_action(circuit, [basis] * 3)
    assert sorted(map(tuple, t.entries.tolist())) == sorted(itertools.permutations(range(3)))
    assert cupgate.cross_check(sc, t, [basis] * 3, (1, 1, 1)) == []


def test_cross_check_on_mixed_degrees():
    sc = cx.product_of(cx.circle(3), torus(3))
    degrees = (0, 1, 2)
    bases = [homology.basis_of(sc, q) for q in degrees]
    t = cupgate.logical_action(cupgate.synthesize_circuit(sc, *degrees), bases)
    assert len(t) > 0
    assert cupgate.cross_check(sc, t, bases, degrees) == []


def test_circuit_phase_equals_triple_cup(t3):
    rng = np.random.default_rng(3)
    circuit = cupgate.synthesize_circuit(t3, 1, 1, 1)
    for _ in range(10):
        a, b, c = (random_cochain(t3, 1, rng) for _ in range(3))
        assert circuit.phase(a.coeffs, b.coeffs, c.coeffs) == cupgate.triple_cup_sum(t3, a, b, c)


@pytest.mark.parametrize("sc", [torus(3, 3), torus(4, 3), cx.product_of(cx.circle(3), torus(4))])
def test_bounded_overlap(sc):
    circuit = cupgate.synthesize_circuit(sc, 1, 1, 1)
    assert cupgate.max_gates_per_qubit(circuit) <= cupgate.max_top_cofaces(sc)


def test_phase_check_and_negative_control(t3):
    basis = homology.basis_of(t3, 1)
    circuit = cupgate.synthesize_circuit(t3, 1, 1, 1)
    rep = cupgate.phase_polynomial_check(t3, circuit, [basis] * 3, 100, 11)
    assert rep.ok and rep.passed == 100
    broken = t3.delete_top(0)
    bad = cupgate.phase_polynomial_check(broken, cupgate.synthesize_circuit(broken, 1, 1, 1), [basis] * 3, 100, 11)
    assert bad.failed > 0
    assert cupgate.stokes_check(t3, 50, 1).ok
    assert not cupgate.stokes_check(broken, 50, 1).ok


def test_phase_check_is_deterministic(t3):
    basis = homology.basis_of(t3, 1)
    broken = t3.delete_top(5)
    circuit = cupgate.synthesize_circuit(broken, 1, 1, 1)
    a = cupgate.phase_polynomial_check(broken, circuit, [basis] * 3, 60, 4)
    b = cupgate.phase_polynomial_check(broken, circuit, [basis] * 3, 60, 4)
    assert a == b


def random_hypergraph(draw_edges, sizes):
    edges = np.array(sorted(set(draw_edges)), dtype=np.int64).reshape(-1, 3)
    return cupgate.InteractionHypergraph(sizes, edges)


edge_lists = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), max_size=30)


@given(edge_lists, st.booleans())
def test_fountain_selects_disjoint_edges(edges, induced):
    h = random_hypergraph(edges, (5, 5, 5))
    s = cupgate.fountain_schedule(h, induced=induced)
    chosen = h.edges[s.selected]
    for e, f in itertools.combinations(chosen.tolist(), 2):
        assert all(x != y for x, y in zip(e, f))
    assert s.magic_count == len(chosen)
    assert len(s.plus_set) == 3 * s.magic_count
    assert len(s.plus_set) + len(s.zero_set) == 15
    if induced:
        assert cupgate.unselected_touch_zero(h, s)


@given(edge_lists)
def test_plain_greedy_is_maximal(edges):
    h = random_hypergraph(edges, (5, 5, 5))
    s = cupgate.fountain_schedule(h)
    plus = set(s.plus_set)
    for e in h.edges.tolist():
        assert any((k, v) in plus for k, v in enumerate(e))


def test_t3_fountain(t3):
    basis = homology.basis_of(t3, 1)
    t = cupgate.logical_action(cupgate.synthesize_circuit(t3, 1, 1, 1), [basis] * 3)
    h = cupgate.interaction_hypergraph(t)
    s = cupgate.fountain_schedule(h)
    assert s.magic_count == 3
    assert cupgate.edges_disjoint(h.edges[s.selected])


def test_text_round_trips(t3, tmp_path):
    circuit = cupgate.synthesize_circuit(t3, 1, 1, 1)
    back = cupgate.parse_circuit(cupgate.format_circuit(circuit), (1, 1, 1))
    assert np.array_equal(back.triples, circuit.triples)
    basis = homology.basis_of(t3, 1)
    h = cupgate.interaction_hypergraph(cupgate.logical_action(circuit, [basis] * 3))
    hb = cupgate.parse_hypergraph(cupgate.format_hypergraph(h))
    assert hb.sizes == h.sizes and np.array_equal(hb.edges, h.edges)
    text = cupgate.format_fountain(cupgate.fountain_schedule(h))
    assert text.splitlines()[-1] == "magic_count=3"
    cupgate.write_text(text, tmp_path / "f.txt")
    assert (tmp_path / "f.txt").read_text() == text

import numpy as np
import pytest

from triplecup import complex as cx
from triplecup import code as qc
from triplecup import homology

from conftest import torus
from test_complex import RP2, sphere


def brute_min(checks, conjugates, keep):
    """Minimum over all 2^n vectors; independent of any kernel basis."""
    h = checks.toarray().astype(np.int64)
    n = h.shape[1]
    conj = conjugates[list(keep)].astype(np.int64)
    best = None
    chunk = 1 << 14
    for start in range(0, 1 << n, chunk):
        ints = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((ints[:, None] >> np.arange(n)) & 1).astype(np.int64)
        ok = ~((bits @ h.T) % 2).any(axis=1)
        ok &= ((bits @ conj.T) % 2).any(axis=1)
        if ok.any():
            w = int(bits[ok].sum(axis=1).min())
            best = w if best is None else min(best, w)
    return best


SMALL = [
    (cx.circle(7), 0),
    (cx.circle(7), 1),
    (torus(3), 2),
    (cx.SimplicialComplex.from_top(RP2), 1),
    (cx.SimplicialComplex.from_top(RP2), 2),
    (sphere(2), 2),
]


@pytest.mark.parametrize("sc,q", SMALL)
def test_exact_searches_agree_with_brute_force(sc, q):
    code = qc.css_from_complex(cx.chain_complex_of(sc), q)
    keep = code.kept
    for checks, conj in ((code.hx, code.logical.cocycles), (code.hz, code.logical.cycles)):
        if checks.shape[1] > 18:
            continue
        expected = brute_min(checks, conj, keep)
        for force in ("enumeration", "connected"):
            b = qc.min_logical_weight(checks, conj, keep, force=force)
            assert b.value == expected or (expected is None and b.lower is None)


def test_enumeration_and_connected_search_agree():
    code = qc.css_from_complex(cx.chain_complex_of(torus(3)), 1)
    for checks, conj in ((code.hx, code.logical.cocycles), (code.hz, code.logical.cycles)):
        a = qc.min_logical_weight(checks, conj, code.kept, force="enumeration")
        b = qc.min_logical_weight(checks, conj, code.kept, force="connected")
        assert a.exact and b.exact and a.value == b.value


@pytest.mark.parametrize("L", [3, 4, 5])
def test_toric_distance(L):
    code = qc.css_from_complex(cx.chain_complex_of(torus(L)), 1)
    assert qc.commutes(code)
    assert (code.n_qubits, code.k) == (3 * L * L, 2)
    rep = qc.distance(code)
    assert rep.method == "exhaustive"
    assert rep.d == L
    assert rep.d_z.value == L


@pytest.mark.parametrize("sc,q", SMALL + [(torus(3, 3), 1), (torus(3, 3), 2)])
def test_stabilizers_commute_and_pairing(sc, q):
    code = qc.css_from_complex(cx.chain_complex_of(sc), q)
    assert qc.commutes(code)
    assert qc.kept_pairing_is_identity(code)


def test_subsystem_bounds():
    # Z side only: the X logicals here are membranes, too heavy for exact search
    code = qc.css_from_complex(cx.chain_complex_of(torus(3, 3)), 1)
    plain = qc.min_logical_weight(code.hx, code.logical.cocycles, code.kept)
    assert plain.value == 3
    for keep in ([0], [1, 2], [2], [0, 1, 2]):
        sub = qc.subsystem_select(code, keep)
        assert qc.kept_pairing_is_identity(sub)
        b = qc.min_logical_weight(sub.hx, sub.logical.cocycles, sub.kept)
        assert b.value >= plain.value
    small = qc.css_from_complex(cx.chain_complex_of(torus(4)), 1)
    full = qc.distance(qc.subsystem_select(small, [0, 1]))
    plain = qc.distance(small)
    assert (full.d_z, full.d_x) == (plain.d_z, plain.d_x)


def connected_sum_code(L):
    big, small = torus(L), torus(3)
    cs = cx.connected_sum(big, small)
    cc = cx.chain_complex_of(cs)
    bmap, smap = cs.vertex_maps
    hint = [big.transfer(1, c, cs, bmap) for c in homology.basis_of(big, 1).cycles]
    hint += [small.transfer(1, c, cs, smap) for c in homology.basis_of(small, 1).cycles]
    return qc.css_from_complex(cc, 1, cycle_hint=hint)


def test_subsystem_distance_on_connected_sum():
    code = connected_sum_code(4)
    assert code.k == 4
    z = [bz.value for bz, _ in qc.class_weights(code)]
    assert z == [4, 4, 3, 3]
    assert qc.distance(code).d == 3
    assert qc.distance(qc.subsystem_select(code, [0, 1])).d == 4


def test_randomized_fallback_brackets_truth():
    code = qc.css_from_complex(cx.chain_complex_of(torus(5)), 1)
    b = qc.min_logical_weight(code.hx, code.logical.cocycles, code.kept, threshold=0, node_budget=50, draws=30, seed=2)
    assert not b.exact
    assert b.lower <= 5 <= b.upper
    assert b.text() == f"[{b.lower},{b.upper}]"
    again = qc.min_logical_weight(code.hx, code.logical.cocycles, code.kept, threshold=0, node_budget=50, draws=30, seed=2)
    assert again == b


def test_no_logicals():
    code = qc.css_from_complex(cx.chain_complex_of(sphere(2)), 1)
    assert code.k == 0
    rep = qc.distance(code)
    assert rep.d is None and rep.d_z.text() == "none"


def test_index_out_of_range():
    code = qc.css_from_complex(cx.chain_complex_of(torus(3)), 1)
    with pytest.raises(qc.IndexOutOfRange):
        qc.subsystem_select(code, [2])


def test_parameters_report():
    code = qc.css_from_complex(cx.chain_complex_of(torus(3)), 1)
    lines = qc.parameters_report(code, seed=5)
    assert lines[:3] == ["N=27", "K=2", "dZ=3"]
    assert "seed=5" in lines
    assert lines[-2].startswith("class 0 Z=3")
    assert lines == qc.parameters_report(code, seed=5)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplecup import complex as cx
from triplecup import cupgate, gf2, homology, product

from conftest import t2_cubed, torus

SMALL_PRODUCTS = [
    cx.product_of(cx.circle(3), cx.circle(4), cx.circle(3)),
    cx.product_of(cx.circle(3), torus(3)),
    cx.product_of(torus(3), cx.circle(5)),
]


@pytest.mark.parametrize("sc", SMALL_PRODUCTS)
def test_kunneth_basis_is_a_basis(sc):
    cc = cx.chain_complex_of(sc)
    betti = homology.betti_numbers(cc)
    for q in range(sc.dim + 1):
        b = product.kunneth_basis(sc, q)
        assert product.certify_basis(sc, b, betti[q]) == []
        assert b.betti == betti[q] == len(b.labels)
        assert not gf2.matvec(cc.boundary(q), b.cycles.T).any()
        assert not gf2.matvec(cc.coboundary(q), b.cocycles.T).any()
        echelon = homology.homology_basis(cc, q)
        a = product.alignment(b, echelon)
        assert gf2.rank(a) == b.betti


def test_labels_are_ordered():
    sc = SMALL_PRODUCTS[0]
    labels = product.kunneth_basis(sc, 2).labels
    assert [lab.degrees for lab in labels] == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


@settings(max_examples=20)
@given(st.integers(0, 2**20))
def test_cross_products_of_random_cocycles_are_cocycles(seed):
    rng = np.random.default_rng(seed)
    a, b = torus(3), cx.circle(4)
    sc = cx.product_of(a, b)
    ba, bb = homology.basis_of(a, 1), homology.basis_of(b, 1)
    # random cocycle plus coboundary in each factor stays a cocycle after crossing
    x = ba.cocycles[rng.integers(2)] ^ gf2.matvec(a.coboundary(0), rng.integers(0, 2, a.count(0)).astype(np.uint8))
    y = bb.cocycles[0] ^ gf2.matvec(b.coboundary(0), rng.integers(0, 2, b.count(0)).astype(np.uint8))
    c = product.cross_cochain(sc, (1, 1), [x, y])
    assert not gf2.matvec(sc.coboundary(2), c).any()
    z = product.cross_chain(sc, (1, 1), [homology.basis_of(a, 1).cycles[0], bb.cycles[0]])
    assert not gf2.matvec(sc.boundary(2), z).any()


def test_no_product_structure():
    with pytest.raises(product.LabelMismatch):
        product.kunneth_basis(cx.circle(5), 1)


def test_default_patterns():
    pats = product.default_patterns(2)
    assert pats == {"alpha": [(1, 1, 0)], "beta": [(0, 1, 1)], "gamma": [(1, 0, 1)]}
    assert product.patterns_from_pairs([(1, 1), (1, 1), (1, 1)]) == pats


@pytest.fixture(scope="module")
def cube():
    sc = t2_cubed()
    basis = product.kunneth_basis(sc, 2)
    fams = product.kunneth_families(basis, 2)
    tensor = cupgate.logical_action(cupgate.synthesize_circuit(sc, 2, 2, 2), [basis] * 3)
    return sc, basis, fams, tensor


def test_family_arithmetic(cube):
    sc, basis, fams, _ = cube
    b = homology.betti_numbers(cx.chain_complex_of(torus(3)))
    for name in product.FAMILY_NAMES:
        assert len(fams[name]) == b[1] * b[1] * b[0]
    assert sorted(i for f in fams.values() for i in f) == list(range(basis.betti))


def test_factorized_product_matches(cube):
    sc, basis, fams, tensor = cube
    count = product.ccz_count(sc, tensor, [basis] * 3, fams)
    assert count.mismatches == 0
    assert count.total == 8
    assert len(count.aligned) == 8
    # direct triple cup sums agree on a sample of aligned and non-aligned triples
    rng = np.random.default_rng(0)
    dense = tensor.dense()
    for a, b, c in [tuple(t) for t in count.aligned[:3]] + [tuple(rng.integers(0, 15, 3)) for _ in range(3)]:
        cs = [cx.Cochain(2, basis.cocycles[i]) for i in (a, b, c)]
        assert cupgate.triple_cup_sum(sc, *cs) == dense[a, b, c]


def test_count_constant_when_factor_grows(cube):
    sc = cx.product_of(torus(3), torus(3), torus(4))
    basis = product.kunneth_basis(sc, 2)
    fams = product.kunneth_families(basis, 2)
    tensor = cupgate.logical_action(cupgate.synthesize_circuit(sc, 2, 2, 2), [basis] * 3)
    count = product.ccz_count(sc, tensor, [basis] * 3, fams)
    assert count.total == product.ccz_count(cube[0], cube[3], [cube[1]] * 3, cube[2]).total
    assert count.mismatches == 0


def test_family_table_round_trip(cube, tmp_path):
    _, basis, fams, _ = cube
    text = product.format_family_table(basis, fams)
    assert product.parse_family_table(text) == fams
    product.write_family_table(basis, fams, tmp_path / "fam.txt")
    assert (tmp_path / "fam.txt").read_text() == text

from basilica.element import make
from basilica.fullgroup import GeneralElement, embed
from basilica.lamination import DIAM, Central, Inner, Leaf
from basilica.oracles import RegionOracle, condition_one, is_homeomorphism, perfect_by_procedure


def test_region_oracle_on_known_parents():
    oracle = RegionOracle(3)
    assert oracle.parent(Leaf(1, 2)) == Leaf(0, 1)
    assert oracle.parent(Leaf(0, 2)) == DIAM
    assert oracle.parent(Leaf(3, 3)) == Leaf(0, 1)
    assert set(oracle.edge_endpoints(DIAM)) == {Central(0), Central(1)}
    assert oracle.edge_endpoints(Leaf(1, 2)) == (Inner(Leaf(1, 2)), Inner(Leaf(0, 1)))


def test_region_count():
    # every chord adds one region to the disc
    for level in range(4):
        oracle = RegionOracle(level)
        assert len(oracle.regions) == len(oracle.leaves) + 1


def test_separation_oracle_examples():
    seps = [Leaf(0, 1), Leaf(1, 1), Leaf(1, 2)]
    assert not condition_one({DIAM, Leaf(1, 2)}, seps)
    assert condition_one({DIAM, Leaf(0, 1), Leaf(1, 2)}, seps)
    assert not condition_one({Leaf(0, 1)}, seps)


def test_procedure_oracle_examples():
    assert perfect_by_procedure({DIAM})
    assert not perfect_by_procedure({DIAM, Leaf(0, 2)})
    assert perfect_by_procedure({DIAM, Leaf(0, 1), Leaf(0, 2)})


def test_homeomorphism_oracle_rejects_a_tear():
    g = embed(make({DIAM, Leaf(0, 1)}, {DIAM, Leaf(1, 1)}, 1))
    assert is_homeomorphism(g)
    # swap two pieces without touching the identifications
    targets = list(g.targets)
    targets[0], targets[1] = targets[1], targets[0]
    torn = GeneralElement(g.dom, g.ran, tuple(targets), g.signs)
    assert not is_homeomorphism(torn)

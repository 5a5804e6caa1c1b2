import random
from fractions import Fraction

import pytest
from hypothesis import given

from basilica.diagram import PerfectDiagram
from basilica.element import (
    InvalidIsomorphism,
    SizeMismatch,
    apply,
    apply_leaf,
    compose,
    equals,
    identity,
    invert,
    is_identity,
    isomorphism_shifts,
    make,
    pi_edge,
    pi_restrict,
    pi_vertex,
    reduce,
)
from basilica.lamination import DIAM, Central, Leaf, edge_endpoints, leaves_up_to
from basilica.oracles import is_homeomorphism
from basilica.sampling import random_element
from basilica.triadic import cyclic_order, parse_angle
from conftest import angles, leaves, seeds

L01, L11 = Leaf(0, 1), Leaf(1, 1)
A = parse_angle


def P(*ls):
    return PerfectDiagram(frozenset({DIAM, *ls}))


@pytest.fixture
def g0():
    return make({DIAM, L01}, {DIAM, L11}, 1)


@pytest.fixture
def rot1():
    return make({DIAM}, {DIAM}, 1)


def test_make_examples(rot1):
    assert is_identity(make({DIAM}, {DIAM}, 0))
    assert apply(rot1, A("1/3^1")) == A("4/3^1")
    with pytest.raises(InvalidIsomorphism):
        make({DIAM, L01}, {DIAM, L11}, 2)
    with pytest.raises(SizeMismatch):
        make({DIAM, L01}, {DIAM, L01, Leaf(1, 2)}, 0)


def test_isomorphism_shifts():
    assert isomorphism_shifts(P(L01), P(L11)) == [1, 3]
    assert isomorphism_shifts(P(), P()) == [0, 1]
    assert isomorphism_shifts(P(L01), P(L01, Leaf(1, 2))) == []


def test_g0_is_the_half_turn(g0, rot1):
    # the pairing forced by shift 1 sends every interval by +1
    assert equals(g0, rot1)
    assert apply(g0, Fraction(1, 6)) == Fraction(7, 6)
    assert apply(invert(g0), Fraction(7, 6)) == Fraction(1, 6)


def test_apply_leaf_examples(g0):
    assert apply_leaf(g0, Leaf(0, 2)) == Leaf(3, 2)
    assert apply_leaf(g0, L01) == L11
    assert apply_leaf(identity(), Leaf(4, 3)) == Leaf(4, 3)


def test_compose_examples(g0, rot1):
    assert is_identity(compose(rot1, rot1))
    assert is_identity(compose(g0, invert(g0)))
    assert equals(compose(identity(), g0), g0)
    assert is_identity(invert(identity()))


def test_reduce_examples(g0, rot1):
    unreduced = make({DIAM, L01}, {DIAM, L01}, 0)
    assert is_identity(unreduced)
    assert reduce(unreduced) == identity()
    assert reduce(identity()) == identity()
    assert equals(g0, reduce(g0))
    assert reduce(g0) == rot1
    assert not equals(rot1, identity())


def test_tree_action_examples(g0):
    assert pi_edge(g0, L01) == L11
    assert pi_vertex(g0, Central(0)) == Central(1)
    pa = pi_restrict(identity(), [DIAM, L01, Leaf(1, 2)])
    assert all(k == v for k, v in pa.edges.items())
    assert all(k == v for k, v in pa.vertices.items())


@given(seeds)
def test_group_laws(seed):
    rng = random.Random(seed)
    f, g, h = (random_element(rng, 2) for _ in range(3))
    assert equals(compose(f, compose(g, h)), compose(compose(f, g), h))
    assert is_identity(compose(g, invert(g)))
    assert is_identity(compose(invert(g), g))
    assert equals(reduce(g), g)


@given(seeds, angles())
def test_apply_respects_composition(seed, x):
    rng = random.Random(seed)
    g, h = random_element(rng, 2), random_element(rng, 2)
    assert apply(compose(g, h), x) == apply(g, apply(h, x))
    assert apply(invert(g), apply(g, x)) == x


@given(seeds, angles(), angles(), angles())
def test_apply_keeps_cyclic_order(seed, x, y, z):
    g = random_element(random.Random(seed), 2)
    assert cyclic_order(apply(g, x), apply(g, y), apply(g, z)) == cyclic_order(x, y, z)


@given(seeds, leaves(4))
def test_leaf_transport_matches_points(seed, leaf):
    g = random_element(random.Random(seed), 2)
    img = apply_leaf(g, leaf)
    assert {apply(g, leaf.left), apply(g, leaf.right)} == {img.left, img.right}


@given(seeds)
def test_tree_action_is_a_homomorphism(seed):
    rng = random.Random(seed)
    g, h = random_element(rng, 2), random_element(rng, 2)
    gh = compose(g, h)
    for e in leaves_up_to(3):
        assert pi_edge(gh, e) == pi_edge(g, pi_edge(h, e))
        ends = {pi_vertex(g, v) for v in edge_endpoints(e)}
        assert ends == set(edge_endpoints(pi_edge(g, e)))


@given(seeds)
def test_elements_are_homeomorphisms_of_the_quotient(seed):
    assert is_homeomorphism(random_element(random.Random(seed), 2))

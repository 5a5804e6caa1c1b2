import random

import pytest
from hypothesis import given, settings, strategies as st

from basilica.approx import (
    CyclicOrderBroken,
    Disconnected,
    IncidenceBroken,
    PreconditionDiam,
    approximate,
    approximate_full,
    extend_to_cover_diam,
    flips_for_signs,
    random_partial_automorphism,
    validate,
)
from basilica.element import pi_edge, pi_restrict
from basilica.fullgroup import gamma, pi_full
from basilica.germ import PartialAutomorphism, from_edges
from basilica.lamination import DIAM, Central, Inner, Leaf, edge_endpoints
from basilica.sampling import random_diagram, random_element
from conftest import seeds

L01, L11, L02, L12 = Leaf(0, 1), Leaf(1, 1), Leaf(0, 2), Leaf(1, 2)
C0, C1 = Central(0), Central(1)


def test_validate_examples():
    validate(from_edges({DIAM: DIAM, L01: L11}))
    validate(from_edges({DIAM: L01}))
    with pytest.raises(IncidenceBroken):
        validate(from_edges({DIAM: DIAM, L01: L12}))


def test_validate_rejects_disconnected_sources():
    with pytest.raises(Disconnected):
        validate(PartialAutomorphism({DIAM: DIAM, L12: L12}, {}))


def test_validate_checks_cyclic_order():
    # three sides of C0 sent to the same sides in reversed order
    edges = {DIAM: DIAM, L02: Leaf(2, 2), Leaf(2, 2): L02}
    pa = from_edges(edges)
    with pytest.raises(CyclicOrderBroken):
        validate(pa)
    validate(from_edges(edges, signs={C0: -1}))


def test_extend_examples():
    out = extend_to_cover_diam(from_edges({L01: L01}))
    assert dict(out.edges) == {L01: L01, DIAM: DIAM}
    pa = from_edges({DIAM: DIAM, L01: L11})
    assert extend_to_cover_diam(pa) == pa
    out = extend_to_cover_diam(from_edges({L12: L12}))
    assert dict(out.edges) == {L12: L12, L01: L01, DIAM: DIAM}


def test_approximate_examples():
    g = approximate(from_edges({DIAM: DIAM, L01: L11}))
    assert pi_edge(g, L01) == L11
    g = approximate(from_edges({DIAM: DIAM}, hint={C0: C0}))
    assert pi_edge(g, DIAM) == DIAM
    g = approximate(from_edges({DIAM: DIAM, L01: L02}))
    assert pi_edge(g, L01) == L02


def test_approximate_needs_the_diameter():
    with pytest.raises(PreconditionDiam):
        approximate(from_edges({L01: L01}))


def test_full_examples():
    gam = gamma(DIAM, "inner")
    pa = pi_full(gam, [DIAM])
    assert flips_for_signs(pa) == [(DIAM, "inner")]
    plus = from_edges({DIAM: DIAM, L01: L11}, signs={})
    assert flips_for_signs(plus) == []
    both = from_edges({DIAM: DIAM}, signs={C0: -1, C1: -1}, hint={C0: C0})
    g = approximate_full(both)
    got = pi_full(g, [DIAM])
    assert got.signs == {C0: -1, C1: -1}


def test_random_germ_radius_zero():
    for seed in range(20):
        pa = random_partial_automorphism(0, seed)
        assert dict(pa.edges) == {DIAM: DIAM}
        assert dict(pa.vertices) in ({C0: C0, C1: C1}, {C0: C1, C1: C0})


def test_random_germs_are_reproducible():
    assert random_partial_automorphism(2, 7) == random_partial_automorphism(2, 7)
    distinct = {str(random_partial_automorphism(2, s)) for s in range(20)}
    assert len(distinct) > 15


@settings(max_examples=30)
@given(seeds, st.integers(0, 3))
def test_approximation_reproduces_germs(seed, radius):
    pa = random_partial_automorphism(radius, seed)
    g = approximate(pa)
    got = pi_restrict(g, pa.edges)
    assert dict(got.edges) == dict(pa.edges)
    assert dict(got.vertices) == dict(pa.vertices)


@settings(max_examples=30)
@given(seeds, st.integers(0, 3))
def test_full_approximation_reproduces_signed_germs(seed, radius):
    pa = random_partial_automorphism(radius, seed, signed=True)
    got = pi_full(approximate_full(pa), pa.edges)
    assert dict(got.edges) == dict(pa.edges)
    assert got.signs == {v: pa.sign(v) for v in pa.vertices}


@settings(max_examples=30)
@given(seeds, st.integers(1, 3), st.data())
def test_extension_of_subgerms(seed, radius, data):
    """Dropping the diameter side of a germ and extending gives back a valid germ covering it."""
    pa = random_partial_automorphism(radius, seed)
    non_diam = sorted((e for e in pa.edges if e != DIAM), key=lambda l: (l.n, l.k))
    if not non_diam:
        return
    e = data.draw(st.sampled_from(non_diam))
    sub = from_edges({e: pa.edges[e]}, hint={Inner(e): pa.vertices[Inner(e)]})
    out = extend_to_cover_diam(sub)
    assert DIAM in out.edges and DIAM in out.edges.values()
    assert out.edges[e] == pa.edges[e]
    assert set(edge_endpoints(e)) <= set(out.vertices)


@settings(max_examples=30)
@given(seeds, st.integers(1, 8))
def test_approximating_an_element_on_a_subtree(seed, size):
    rng = random.Random(seed)
    g = random_element(rng, 2)
    edges = random_diagram(rng, size, 3)
    pa = pi_restrict(g, edges)
    got = pi_restrict(approximate(extend_to_cover_diam(pa)), edges)
    assert got == pa

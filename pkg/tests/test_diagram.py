import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from basilica.diagram import (
    DiagramError,
    NotPerfect,
    PerfectDiagram,
    is_diagram,
    is_perfect,
    missing_path_edges,
    perfect_complete,
    removable_leaves,
    remove_leaf,
    subdivide,
    union,
)
from basilica.lamination import DIAM, Leaf, leaves_up_to
from basilica.oracles import condition_one, perfect_by_procedure
from basilica.sampling import perfect_diagrams, random_diagram
from conftest import seeds

L01, L11, L02, L12 = Leaf(0, 1), Leaf(1, 1), Leaf(0, 2), Leaf(1, 2)


def P(*leaves):
    return PerfectDiagram(frozenset({DIAM, *leaves}))


def test_is_diagram_examples():
    assert not is_diagram({DIAM, L12})
    assert is_diagram({DIAM, L01, L12})
    assert not is_diagram({L01})
    assert missing_path_edges({DIAM, L12}) == [L01]


def test_is_perfect_examples():
    assert is_perfect({DIAM})
    assert not is_perfect({DIAM, L02})
    assert is_perfect({DIAM, L01, L02})
    with pytest.raises(NotPerfect):
        P(L02)


def spans(p):
    return [(n.start, n.end, form.tag) for n, form in p.intervals()]


def test_intervals_examples():
    third = Fraction(1, 3)
    assert spans(P()) == [(0, 1, "Left"), (1, 2, "Middle")]
    assert spans(P(L01)) == [(0, third, "Left"), (third, 2 * third, "Middle"), (2 * third, 1, "Right"), (1, 2, "Middle")]
    assert spans(P(L11)) == [(0, 1, "Left"), (1, 4 * third, "Left"), (4 * third, 5 * third, "Middle"), (5 * third, 2, "Right")]


def test_subdivide_examples():
    assert subdivide(P(), 0) == P(L01)
    assert subdivide(P(), 1) == P(L11)
    assert subdivide(P(L01), 1) == P(L01, L12)
    with pytest.raises(DiagramError):
        subdivide(P(), 2)


def test_perfect_complete_examples():
    assert perfect_complete({DIAM}) == P()
    assert perfect_complete({DIAM, L02}) == P(L01, L02)
    assert perfect_complete({DIAM, L01, L12}) == P(L01, L12)
    with pytest.raises(DiagramError):
        perfect_complete({DIAM, L12})


def test_union_examples():
    p = P(L01, L12)
    assert union(P(L01), P(L11)) == P(L01, L11)
    assert union(p, p) == p
    assert union(p, P()) == p


def test_removable_examples():
    assert removable_leaves(P(L01)) == {L01}
    assert removable_leaves(P()) == set()
    assert removable_leaves(P(L01, L02)) == {L02}
    with pytest.raises(DiagramError):
        remove_leaf(P(L01, L02), L01)


def test_small_perfect_diagram_counts():
    assert [sum(1 for d in perfect_diagrams(4) if len(d) == k) for k in (1, 2, 3, 4)] == [1, 2, 7, 30]


def test_perfect_matches_subdivision_procedure():
    pool = leaves_up_to(2)
    for mask in range(1 << len(pool)):
        chosen = {l for i, l in enumerate(pool) if mask >> i & 1}
        assert is_perfect(chosen) == perfect_by_procedure(chosen)


@given(seeds)
def test_random_diagrams_agree_with_separation_oracle(seed):
    d = random_diagram(random.Random(seed), 8, 4)
    assert is_diagram(d)
    assert condition_one(d, leaves_up_to(4))


@given(seeds, st.integers(1, 10))
def test_completion_is_perfect_and_contains_input(seed, size):
    d = random_diagram(random.Random(seed), size, 4)
    p = perfect_complete(d)
    assert d <= p.leaves
    assert is_perfect(p.leaves)


@given(seeds)
def test_intervals_tile_the_circle(seed):
    p = perfect_complete(random_diagram(random.Random(seed), 10, 4))
    nodes = p.nodes
    assert nodes[0].start == 0
    assert all(a.end == b.start for a, b in zip(nodes, nodes[1:]))
    assert nodes[-1].end == 2
    assert len(nodes) == 2 * len(p)

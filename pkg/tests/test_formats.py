import random

import pytest
from hypothesis import given, strategies as st

from basilica import formats
from basilica.approx import random_partial_automorphism
from basilica.lamination import DIAM, Central, Leaf, leaves_up_to
from basilica.sampling import random_diagram, random_element, random_general_element
from basilica.svg import render_svg
from conftest import seeds


@given(seeds)
def test_diagram_round_trip(seed):
    text = formats.emit_diagram(random_diagram(random.Random(seed), 10, 4))
    assert formats.emit_diagram(formats.parse_diagram(text)) == text


@given(seeds)
def test_element_round_trip(seed):
    text = formats.emit_element(random_element(random.Random(seed), 2))
    assert formats.emit_element(formats.parse_element(text)) == text


@given(seeds)
def test_general_round_trip(seed):
    text = formats.emit_general(random_general_element(random.Random(seed), 2))
    assert formats.emit_general(formats.parse_general(text)) == text


@given(seeds, st.integers(0, 3), st.booleans())
def test_germ_round_trip(seed, radius, signed):
    text = formats.emit_germ(random_partial_automorphism(radius, seed, signed=signed))
    assert formats.emit_germ(formats.parse_germ(text)) == text


def test_comments_and_blank_lines():
    leaves = formats.parse_diagram("# a diagram\n0:0\n\n0:1  # the level-one chord\n")
    assert leaves == {DIAM, Leaf(0, 1)}


def test_single_edge_germ_keeps_its_vertex_line():
    pa = formats.parse_germ("0:0 -> 0:0\nvertex C0 -> C1\n")
    assert pa.vertices == {Central(0): Central(1), Central(1): Central(0)}
    assert formats.emit_germ(pa) == "0:0 -> 0:0\nvertex C0 -> C1\n"


@pytest.mark.parametrize(
    "parser, text",
    [
        (formats.parse_diagram, "0:0\n0:0\n"),
        (formats.parse_diagram, "0:0\nfoo\n"),
        (formats.parse_element, "[dom]\n0:0\n[ran]\n0:0\n"),
        (formats.parse_element, "[dom]\n0:0\n[ran]\n0:0\n[shift]\nx\n"),
        (formats.parse_general, "[dom]\n0:0\n[ran]\n0:0\n[intervals]\n0 +\n"),
        (formats.parse_germ, "0:0 -> 0:0\n0:0 -> 0:1\n"),
        (formats.parse_germ, "sign C0 *\n"),
        (formats.parse_germ, ""),
    ],
)
def test_malformed_inputs_rejected(parser, text):
    with pytest.raises(ValueError):
        parser(text)


def test_svg_examples():
    empty = render_svg([])
    assert "<circle" in empty and "<line" not in empty
    assert render_svg([(1, 0)]).count("<line") == 1
    depth2 = [(l.left.value, l.right.value) for l in leaves_up_to(2)]
    assert render_svg(depth2).count("<line") == 9


@given(seeds)
def test_svg_is_deterministic(seed):
    rng = random.Random(seed)
    chords = [(l.left.value, l.right.value) for l in random_diagram(rng, 8, 4)]
    shuffled = chords[:]
    rng.shuffle(shuffled)
    assert render_svg(chords) == render_svg(shuffled)

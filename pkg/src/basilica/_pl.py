"""Piecewise-affine machinery shared by Thompson and signed elements.

An element is a pair of perfect diagrams plus, for every domain interval, the
index of its image interval and a sign.  Intervals are triadic nodes, so the
affine pieces act on nodes and on points by integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import PerfectDiagram, union
from .lamination import Leaf, Node, NotEquivalent, leaf_from_endpoints, middle_node
from .triadic import TriadicAngle, from_fraction


class LeafTransportFailure(ArithmeticError):
    pass


class RefinementFailure(ArithmeticError):
    pass


def _affine(x: Fraction, src: Node, dst: Node, sign: int) -> Fraction:
    off = (x - src.start) % 2
    scale = Fraction(3**src.j, 3**dst.j)
    if sign == 1:
        return (dst.start + off * scale) % 2
    return (dst.start + (Fraction(1, 3**src.j) - off) * scale) % 2


def map_point(g, x: Fraction) -> Fraction:
    """Image of x, taking the right-hand limit at domain vertices."""
    i = g.dom.locate(x)
    return _affine(Fraction(x) % 2, g.dom.nodes[i], g.ran.nodes[g.targets[i]], g.signs[i])


def map_point_left(g, x: Fraction) -> Fraction:
    """Image of x as the left-hand limit."""
    x = Fraction(x) % 2
    i = g.dom.locate(x)
    if g.dom.vertices[i] == x:
        i = (i - 1) % len(g.dom.nodes)
    return _affine(x, g.dom.nodes[i], g.ran.nodes[g.targets[i]], g.signs[i])


def apply(g, x):
    if isinstance(x, TriadicAngle):
        return from_fraction(map_point(g, x.value))
    return map_point(g, Fraction(x))


def map_node(g, node: Node) -> tuple[Node, int]:
    """Image of a node that lies inside one domain interval, with the sign used."""
    i = g.dom.containing_node(node)
    if i is None:
        raise RefinementFailure(f"{node} is subdivided in the domain")
    src = g.dom.nodes[i]
    dst = g.ran.nodes[g.targets[i]]
    d = node.j - src.j
    off = node.b - src.b * 3**d
    if g.signs[i] == 1:
        return Node(dst.b * 3**d + off, dst.j + d), 1
    return Node(dst.b * 3**d + 3**d - 1 - off, dst.j + d), -1


def _leaf_with_middle(node: Node) -> Leaf | None:
    if node.j == 0:
        # both root arcs are bounded by the diameter
        return Leaf(0, 0)
    if node.j > 0 and node.b % 3 == 1:
        return Leaf(node.b // 3, node.j)
    return None


def apply_leaf(g, leaf: Leaf) -> Leaf:
    node = middle_node(leaf)
    if g.dom.containing_node(node) is not None:
        # the middle arc lies in one piece, so it maps as a node
        img = _leaf_with_middle(map_node(g, node)[0])
        if img is None:
            raise LeafTransportFailure(f"{leaf} maps onto an arc that is not a middle arc")
        return img
    p = map_point(g, node.start)
    q = map_point_left(g, node.end)
    try:
        return leaf_from_endpoints(from_fraction(p), from_fraction(q))
    except (NotEquivalent, ValueError) as exc:
        raise LeafTransportFailure(f"{leaf} maps to the non-leaf pair {p}, {q}") from exc


def invert_targets(targets, signs) -> tuple[tuple[int, ...], tuple[int, ...]]:
    inv = [0] * len(targets)
    inv_signs = [1] * len(targets)
    for i, (t, s) in enumerate(zip(targets, signs)):
        inv[t] = i
        inv_signs[t] = s
    return tuple(inv), tuple(inv_signs)


def compose_pieces(g, h, g_inv_h) -> tuple[PerfectDiagram, PerfectDiagram, tuple[int, ...], tuple[int, ...]]:
    """Diagrams and pieces of ``g o h``; ``g_inv_h`` is the inverse of h."""
    u = union(h.ran, g.dom)
    dom = PerfectDiagram(apply_leaf(g_inv_h, leaf) for leaf in u.leaves)
    ran = PerfectDiagram(apply_leaf(g, leaf) for leaf in u.leaves)
    targets, signs = [], []
    for node in dom.nodes:
        mid, s1 = map_node(h, node)
        img, s2 = map_node(g, mid)
        k = u.containing_node(mid)
        if k is None or u.nodes[k] != mid or img not in ran.node_index:
            raise RefinementFailure(f"interval {node} does not land on an interval of the composite")
        targets.append(ran.node_index[img])
        signs.append(s1 * s2)
    return dom, ran, tuple(targets), tuple(signs)

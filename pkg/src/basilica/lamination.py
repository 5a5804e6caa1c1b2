"""Leaves of the Basilica lamination and the ribbon tree they span.

A leaf ``Leaf(k, n)`` joins ``(3k+1)/3^n`` and ``(3k+2)/3^n`` on R/2Z; its
*middle arc* is the short arc between the two endpoints and its *level* is n.
``Leaf(0, 0)`` is the diameter joining 1 and 2 = 0.

Tree vertices (Cantorgons) are addressed by their unique longest side:
``Central(0)``/``Central(1)`` sit on the two sides of the diameter, and
``Inner(leaf)`` is the Cantorgon inside the leaf's middle arc.

Throughout, a *node* ``Node(b, j)`` is the triadic interval
``[b/3^j, (b+1)/3^j]``.  The middle-third chord of ``Node(b, j)`` is
``Leaf(b, j + 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Union

from .triadic import TriadicAngle, cyclic_order_values, normalize


class LaminationError(ValueError):
    pass


class NotEquivalent(LaminationError):
    pass


class DiameterHasNoParent(LaminationError):
    pass


class EmptyGap(LaminationError):
    pass


class Leaf(NamedTuple):
    k: int
    n: int

    @property
    def level(self) -> int:
        return self.n

    @property
    def left(self) -> TriadicAngle:
        return normalize(3 * self.k + 1, self.n) if self.n else normalize(1, 0)

    @property
    def right(self) -> TriadicAngle:
        return normalize(3 * self.k + 2, self.n) if self.n else normalize(0, 0)

    def endpoints(self) -> tuple[TriadicAngle, TriadicAngle]:
        return self.left, self.right

    def __str__(self) -> str:
        return f"{self.k}:{self.n}"


DIAM = Leaf(0, 0)


class Node(NamedTuple):
    b: int
    j: int

    @property
    def start(self) -> Fraction:
        return Fraction(self.b, 3**self.j)

    @property
    def end(self) -> Fraction:
        return Fraction(self.b + 1, 3**self.j)

    def children(self) -> tuple["Node", "Node", "Node"]:
        return Node(3 * self.b, self.j + 1), Node(3 * self.b + 1, self.j + 1), Node(3 * self.b + 2, self.j + 1)

    @property
    def chord(self) -> Leaf:
        return Leaf(self.b, self.j + 1)


def make_leaf(k: int, n: int) -> Leaf:
    if n < 0 or k < 0 or not 3 * k + 1 < 2 * 3**n:
        raise LaminationError(f"no leaf {k}:{n}")
    if n == 0 and k != 0:
        raise LaminationError(f"no leaf {k}:{n}")
    return Leaf(k, n)


def middle_node(leaf: Leaf) -> Node:
    """Middle arc of a non-diameter leaf as a triadic node."""
    if leaf == DIAM:
        return Node(1, 0)
    return Node(3 * leaf.k + 1, leaf.n)


def leaf_of_point(x: TriadicAngle) -> Leaf:
    """The unique leaf having x as an endpoint (every triadic point is separating)."""
    if x.level == 0:
        return DIAM
    r = x.num % 3
    return Leaf((x.num - r) // 3, x.level)


def equivalent(x: TriadicAngle, y: TriadicAngle) -> bool:
    return x != y and leaf_of_point(x) == leaf_of_point(y)


def leaf_from_endpoints(x: TriadicAngle, y: TriadicAngle) -> Leaf:
    if not equivalent(x, y):
        raise NotEquivalent(f"{x} and {y} are not identified")
    return leaf_of_point(x)


def leaves_up_to(level: int) -> list[Leaf]:
    out = [DIAM]
    for n in range(1, level + 1):
        out.extend(Leaf(k, n) for k in range(2 * 3 ** (n - 1)))
    return out


# -- vertices --------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Central:
    arc: int

    def __str__(self) -> str:
        return f"C{self.arc}"


@dataclass(frozen=True, slots=True)
class Inner:
    leaf: Leaf

    def __post_init__(self):
        if self.leaf == DIAM:
            raise LaminationError("the diameter bounds Central vertices, not an Inner one")

    def __str__(self) -> str:
        return f"I({self.leaf})"


VertexId = Union[Central, Inner]


def longest_side(v: VertexId) -> Leaf:
    return DIAM if isinstance(v, Central) else v.leaf


def base_node(v: VertexId) -> Node:
    """The arc whose Cantor set is the circle trace of v."""
    return Node(v.arc, 0) if isinstance(v, Central) else middle_node(v.leaf)


def trace_bounds(v: VertexId) -> tuple[Fraction, Fraction]:
    node = base_node(v)
    return node.start, node.end


@lru_cache(maxsize=None)
def _walk_up(leaf: Leaf) -> tuple[Node, bool]:
    """Walk from the node enclosing ``leaf`` up to the first middle-arc node or a base arc."""
    b, j = leaf.k, leaf.n - 1
    while j > 0 and b % 3 != 1:
        b, j = b // 3, j - 1
    return Node(b, j), j > 0


def parent(leaf: Leaf) -> Leaf:
    """Longest side of the Cantorgon on the outer side of ``leaf``."""
    if leaf == DIAM:
        raise DiameterHasNoParent("the diameter has no parent")
    node, inner = _walk_up(leaf)
    return Leaf((node.b - 1) // 3, node.j) if inner else DIAM


def outer_vertex(leaf: Leaf) -> VertexId:
    if leaf == DIAM:
        raise DiameterHasNoParent("the diameter has two Central endpoints")
    node, inner = _walk_up(leaf)
    return Inner(Leaf((node.b - 1) // 3, node.j)) if inner else Central(node.b)


def edge_endpoints(leaf: Leaf) -> tuple[VertexId, VertexId]:
    if leaf == DIAM:
        return Central(0), Central(1)
    return Inner(leaf), outer_vertex(leaf)


def other_end(leaf: Leaf, v: VertexId) -> VertexId:
    a, b = edge_endpoints(leaf)
    if v == a:
        return b
    if v == b:
        return a
    raise LaminationError(f"{leaf} is not incident to {v}")


def is_side(leaf: Leaf, v: VertexId) -> bool:
    return v in edge_endpoints(leaf)


def depth(v: VertexId) -> int:
    d = 0
    while isinstance(v, Inner):
        v = outer_vertex(v.leaf)
        d += 1
    return d


def side_key(v: VertexId, leaf: Leaf) -> Fraction:
    """Position of a side in the cyclic order at v (cut just before the longest side)."""
    if leaf == longest_side(v):
        return Fraction(-1)
    return leaf.left.value


def sides(v: VertexId, max_level: int) -> list[Leaf]:
    """All sides of v of level <= max_level, in cyclic order starting at the longest side."""
    out = [longest_side(v)] if longest_side(v).n <= max_level else []
    frontier = [base_node(v)]
    while frontier:
        nxt = []
        for node in frontier:
            if node.j + 1 > max_level:
                continue
            out.append(node.chord)
            left, _, right = node.children()
            nxt += [left, right]
        frontier = nxt
    out.sort(key=lambda s: side_key(v, s))
    return out


def first_sides(v: VertexId) -> tuple[Leaf, Leaf, Leaf]:
    """Three sides of v in positive cyclic order: longest, left-child chord, first chord."""
    node = base_node(v)
    return longest_side(v), node.children()[0].chord, node.chord


def _lead_trail(v: VertexId, leaf: Leaf) -> tuple[Fraction, Fraction]:
    if leaf == longest_side(v):
        lo, hi = trace_bounds(v)
        return hi, lo
    return leaf.left.value, leaf.right.value


def _in_open_arc(p: Fraction, x: Fraction, q: Fraction) -> bool:
    """x strictly inside the ccw arc from p to q on R/2Z (p == q means everything but p)."""
    p, x, q = p % 2, x % 2, q % 2
    if p == q:
        return x != p
    return cyclic_order_values(p, x, q) == 1


def _leaf_in_arc(leaf: Leaf, p: Fraction, q: Fraction) -> bool:
    return _in_open_arc(p, leaf.left.value, q) and _in_open_arc(p, leaf.right.value, q)


def _node_meets_arc(node: Node, p: Fraction, q: Fraction) -> bool:
    a, e = node.start, node.end
    if _in_open_arc(p, a, q) or _in_open_arc(p, e, q):
        return True
    # the arc may sit strictly inside the node
    return a <= p % 2 <= e


def max_side_in_gap(v: VertexId, p: TriadicAngle | Fraction, q: TriadicAngle | Fraction, max_depth: int = 80) -> Leaf:
    """The side of v of minimal level lying strictly inside the ccw arc (p, q)."""
    p = p.value if isinstance(p, TriadicAngle) else Fraction(p)
    q = q.value if isinstance(q, TriadicAngle) else Fraction(q)
    if _leaf_in_arc(longest_side(v), p, q):
        return longest_side(v)
    frontier = [base_node(v)]
    root_level = frontier[0].j
    while frontier and frontier[0].j - root_level <= max_depth:
        hits = [node.chord for node in frontier if _leaf_in_arc(node.chord, p, q)]
        if hits:
            if len(hits) > 1:
                raise EmptyGap(f"arc ({p}, {q}) at {v} is not a gap: {len(hits)} minimal sides")
            return hits[0]
        nxt = []
        for node in frontier:
            left, _, right = node.children()
            nxt += [c for c in (left, right) if _node_meets_arc(c, p, q)]
        frontier = nxt
    raise EmptyGap(f"no side of {v} inside ({p}, {q})")


def side_between(v: VertexId, s1: Leaf, s2: Leaf) -> Leaf:
    """Minimal-level side of v strictly between s1 and s2 in the cyclic order (s1 == s2: anywhere else)."""
    return max_side_in_gap(v, *gap_arc(v, s1, s2))


def gap_arc(v: VertexId, s1: Leaf, s2: Leaf) -> tuple[Fraction, Fraction]:
    _, trail = _lead_trail(v, s1)
    lead, _ = _lead_trail(v, s2)
    return trail, lead


def sides_in_gap(v: VertexId, s1: Leaf, s2: Leaf, max_level: int) -> list[Leaf]:
    """Sides of v strictly between s1 and s2 (cyclically), level <= max_level, in cyclic order from s1."""
    p, q = gap_arc(v, s1, s2)
    found = [s for s in sides(v, max_level) if s not in (s1, s2) and _leaf_in_arc(s, p, q)]
    k1 = side_key(v, s1)
    return sorted(found, key=lambda s: (side_key(v, s) - k1) % 3)


def between_in_cyclic(v: VertexId, s1: Leaf, x: Leaf, s2: Leaf) -> bool:
    k1, kx, k2 = side_key(v, s1), side_key(v, x), side_key(v, s2)
    if s1 == s2:
        return x != s1
    return cyclic_order_values(k1, kx, k2) == 1


# -- the tree --------------------------------------------------------------


def ancestors(leaf: Leaf) -> list[Leaf]:
    """The parent chain ``leaf, parent(leaf), ..., DIAM``."""
    chain = [leaf]
    while chain[-1] != DIAM:
        chain.append(parent(chain[-1]))
    return chain


def tree_path(e: Leaf, f: Leaf) -> list[Leaf]:
    """Edges of the unique simple path in the tree from edge e to edge f, inclusive."""
    if e == f:
        return [e]
    ce, cf = ancestors(e), ancestors(f)
    in_f = {x: i for i, x in enumerate(cf)}
    i = next(i for i, x in enumerate(ce) if x in in_f)
    j = in_f[ce[i]]
    path = ce[: i + 1] + cf[:j][::-1]
    if 0 < i and 0 < j:
        x, y = ce[i - 1], cf[j - 1]
        if set(edge_endpoints(x)) & set(edge_endpoints(y)):
            # both reach the common ancestor through the same vertex, which they already share
            path = ce[:i] + cf[:j][::-1]
    return path


def incidence(edges: Iterable[Leaf]) -> dict[VertexId, list[Leaf]]:
    inc: dict[VertexId, list[Leaf]] = {}
    for e in edges:
        for v in edge_endpoints(e):
            inc.setdefault(v, []).append(e)
    return inc


def is_connected(edges: Iterable[Leaf]) -> bool:
    edges = set(edges)
    if not edges:
        return True
    inc = incidence(edges)
    start = next(iter(edges))
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for v in edge_endpoints(e):
            for f in inc[v]:
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    return len(seen) == len(edges)


# -- literals --------------------------------------------------------------

_LEAF_RE = re.compile(r"\s*(\d+)\s*:\s*(\d+)\s*")
_VERTEX_RE = re.compile(r"\s*(?:C([01])|I\((\d+)\s*:\s*(\d+)\))\s*")


def parse_leaf(text: str) -> Leaf:
    m = _LEAF_RE.fullmatch(text)
    if not m:
        raise LaminationError(f"malformed leaf literal {text!r}")
    return make_leaf(int(m.group(1)), int(m.group(2)))


def format_leaf(leaf: Leaf) -> str:
    return f"{leaf.k}:{leaf.n}"


def parse_vertex(text: str) -> VertexId:
    m = _VERTEX_RE.fullmatch(text)
    if not m:
        raise LaminationError(f"malformed vertex literal {text!r}")
    if m.group(1) is not None:
        return Central(int(m.group(1)))
    leaf = make_leaf(int(m.group(2)), int(m.group(3)))
    if leaf == DIAM:
        raise LaminationError("I(0:0) is not a vertex")
    return Inner(leaf)


def format_vertex(v: VertexId) -> str:
    return str(v)

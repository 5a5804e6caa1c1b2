"""Diagrams, perfect diagrams and their interval calculus.

A perfect diagram is grown from the diameter by repeatedly cutting one of its
intervals into thirds and drawing the middle chord.  Its intervals are then
exactly the unsubdivided nodes of a ternary tree rooted at ``[0,1]`` and
``[1,2]``: node ``(b, j)`` is subdivided iff ``Leaf(b, j+1)`` is present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple

from .lamination import (
    DIAM,
    Leaf,
    Node,
    VertexId,
    incidence,
    is_side,
    leaf_of_point,
    max_side_in_gap,
    parent,
    side_key,
    sides,
    gap_arc,
)
from .triadic import from_fraction


class DiagramError(ValueError):
    pass


class NotPerfect(DiagramError):
    pass


class CompletionFailed(DiagramError):
    pass


ROOTS = (Node(0, 0), Node(1, 0))


def subdivision_parent(leaf: Leaf) -> Leaf:
    """The chord that must already be present before ``leaf`` can be drawn."""
    if leaf.n <= 1:
        return DIAM
    return Leaf(leaf.k // 3, leaf.n - 1)


def is_diagram(leaves: Iterable[Leaf]) -> bool:
    s = set(leaves)
    if DIAM not in s:
        return False
    # a leaf set holding the diameter is a subtree iff it is closed under parent
    return all(leaf == DIAM or parent(leaf) in s for leaf in s)


def missing_path_edges(leaves: Iterable[Leaf]) -> list[Leaf]:
    s = set(leaves)
    out = set()
    for leaf in s:
        while leaf != DIAM:
            leaf = parent(leaf)
            if leaf not in s:
                out.add(leaf)
    return sorted(out, key=lambda l: (l.n, l.k))


def is_perfect(leaves: Iterable[Leaf]) -> bool:
    s = set(leaves)
    if DIAM not in s:
        return False
    return all(leaf == DIAM or subdivision_parent(leaf) in s for leaf in s)


class IntervalForm(NamedTuple):
    """Which third of its parent an interval is; ``index`` and ``exp`` witness the form."""

    tag: str  # "Left" | "Middle" | "Right"
    index: int
    exp: int


def interval_form(node: Node) -> IntervalForm:
    if node.j == 0:
        return IntervalForm("Left", 0, 0) if node.b == 0 else IntervalForm("Middle", 0, 0)
    q, r = divmod(node.b, 3)
    return IntervalForm(("Left", "Middle", "Right")[r], q, node.j)


@dataclass(frozen=True)
class PerfectDiagram:
    leaves: frozenset = field(default_factory=lambda: frozenset([DIAM]))

    def __post_init__(self):
        object.__setattr__(self, "leaves", frozenset(self.leaves))
        if not is_perfect(self.leaves):
            raise NotPerfect(f"not a perfect diagram: {sorted(self.leaves, key=lambda l: (l.n, l.k))}")

    def __len__(self) -> int:
        return len(self.leaves)

    def __contains__(self, leaf) -> bool:
        return leaf in self.leaves

    @cached_property
    def nodes(self) -> tuple[Node, ...]:
        """The intervals, in circle order starting at 0."""
        out = []
        stack = list(reversed(ROOTS))
        while stack:
            node = stack.pop()
            if node.chord in self.leaves:
                stack.extend(reversed(node.children()))
            else:
                out.append(node)
        return tuple(out)

    @cached_property
    def node_index(self) -> dict[Node, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    @cached_property
    def vertices(self) -> tuple[Fraction, ...]:
        return tuple(node.start for node in self.nodes)

    @cached_property
    def vertex_index(self) -> dict[Fraction, int]:
        return {x: i for i, x in enumerate(self.vertices)}

    @cached_property
    def pairing(self) -> tuple[int, ...]:
        idx = self.vertex_index
        p = [0] * len(self.vertices)
        for leaf in self.leaves:
            a, b = idx[leaf.left.value], idx[leaf.right.value]
            p[a], p[b] = b, a
        return tuple(p)

    def leaf_at(self, i: int) -> Leaf:
        return leaf_of_point(from_fraction(self.vertices[i]))

    def intervals(self) -> list[tuple[Node, IntervalForm]]:
        return [(node, interval_form(node)) for node in self.nodes]

    def locate(self, x: Fraction) -> int:
        """Index of the half-open interval [v_i, v_{i+1}) containing x."""
        x = Fraction(x) % 2
        node = ROOTS[0] if x < 1 else ROOTS[1]
        while node.chord in self.leaves:
            d = int(x * 3 ** (node.j + 1)) - 3 * node.b
            node = node.children()[d]
        return self.node_index[node]

    def containing_node(self, node: Node) -> int | None:
        """Index of the interval containing ``node``, or None if node is subdivided here."""
        j, b = node.j, node.b
        # walk down the diagram's tree along node's digits
        cur = ROOTS[b // 3**j]
        while cur.chord in self.leaves:
            if cur.j == j:
                return None
            d = (b // 3 ** (j - cur.j - 1)) % 3
            cur = cur.children()[d]
        return self.node_index[cur]

    def sorted_leaves(self) -> list[Leaf]:
        return sorted(self.leaves, key=lambda l: (l.n, l.k))

    def __repr__(self) -> str:
        return "PerfectDiagram{" + ", ".join(str(l) for l in self.sorted_leaves()) + "}"


def intervals(p: PerfectDiagram) -> list[tuple[Node, IntervalForm]]:
    return p.intervals()


def subdivide(p: PerfectDiagram, interval_index: int) -> PerfectDiagram:
    if not 0 <= interval_index < len(p.nodes):
        raise DiagramError(f"interval index {interval_index} out of range 0..{len(p.nodes) - 1}")
    return PerfectDiagram(p.leaves | {p.nodes[interval_index].chord})


def union(p: PerfectDiagram, q: PerfectDiagram) -> PerfectDiagram:
    return PerfectDiagram(p.leaves | q.leaves)


def removable_leaves(p: PerfectDiagram) -> set[Leaf]:
    out = set()
    for leaf in p.leaves:
        if leaf == DIAM:
            continue
        kids = Node(leaf.k, leaf.n - 1).children()
        if not any(child.chord in p.leaves for child in kids):
            out.add(leaf)
    return out


def remove_leaf(p: PerfectDiagram, leaf: Leaf) -> PerfectDiagram:
    if leaf not in removable_leaves(p):
        raise DiagramError(f"{leaf} is not removable")
    return PerfectDiagram(p.leaves - {leaf})


def cells(leaves: Iterable[Leaf]) -> dict[VertexId, list[Leaf]]:
    """Vertices of the diagram's subtree with their incident diagram leaves, cyclically ordered."""
    inc = incidence(leaves)
    return {v: sorted(es, key=lambda e: side_key(v, e)) for v, es in inc.items()}


def perfect_complete(leaves: Iterable[Leaf]) -> PerfectDiagram:
    """Add, at every cell bounded by two or more leaves, all longer sides of its Cantorgon."""
    leaves = set(leaves)
    if not is_diagram(leaves):
        raise DiagramError("input is not a diagram")
    out = set(leaves)
    for v, es in cells(leaves).items():
        if len(es) < 2:
            continue
        bound = max(e.n for e in es)
        out.update(sides(v, bound - 1))
    if not is_perfect(out):
        raise CompletionFailed(f"completion of {sorted(leaves)} is not perfect")
    return PerfectDiagram(out)


def insert_in_gap(leaves: set[Leaf], v: VertexId, s1: Leaf, s2: Leaf) -> Leaf:
    """The next legal chord between consecutive present sides s1, s2 of v."""
    return max_side_in_gap(v, *gap_arc(v, s1, s2))


def present_sides(leaves: Iterable[Leaf], v: VertexId) -> list[Leaf]:
    return sorted((e for e in leaves if is_side(e, v)), key=lambda e: side_key(v, e))

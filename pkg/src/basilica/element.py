"""Elements of the Basilica Thompson group.

An element is a pair of perfect diagrams with the same number ``2m`` of
vertices together with a shift ``s``: domain vertex ``i`` goes to range
vertex ``i + s (mod 2m)`` and every domain interval is carried affinely onto
the corresponding range interval.  ``compose(g, h)`` means *first h, then g*.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _pl
from ._pl import LeafTransportFailure, RefinementFailure
from .diagram import PerfectDiagram, removable_leaves
from .germ import PartialAutomorphism
from .lamination import (
    Leaf,
    VertexId,
    edge_endpoints,
    first_sides,
    incidence,
    leaf_from_endpoints,
    side_key,
)
from .triadic import cyclic_order_values, from_fraction

__all__ = [
    "ThompsonElement",
    "ElementError",
    "SizeMismatch",
    "InvalidIsomorphism",
    "LeafTransportFailure",
    "RefinementFailure",
    "make",
    "identity",
    "isomorphism_shifts",
    "apply",
    "apply_leaf",
    "compose",
    "invert",
    "is_identity",
    "equals",
    "reduce",
    "pi_edge",
    "pi_vertex",
    "pi_restrict",
    "vertex_sign",
]


class ElementError(ValueError):
    pass


class SizeMismatch(ElementError):
    pass


class InvalidIsomorphism(ElementError):
    pass


def _compatible(dom: PerfectDiagram, ran: PerfectDiagram, s: int) -> bool:
    n = len(dom.vertices)
    pd, pr = dom.pairing, ran.pairing
    return all(pr[(i + s) % n] == (pd[i] + s) % n for i in range(n))


@dataclass(frozen=True)
class ThompsonElement:
    dom: PerfectDiagram
    ran: PerfectDiagram
    shift: int

    @property
    def size(self) -> int:
        return len(self.dom.vertices)

    @property
    def targets(self) -> tuple[int, ...]:
        n = self.size
        return tuple((i + self.shift) % n for i in range(n))

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) * self.size

    def __call__(self, x):
        return apply(self, x)

    def __mul__(self, other: "ThompsonElement") -> "ThompsonElement":
        return compose(self, other)

    def __invert__(self) -> "ThompsonElement":
        return invert(self)

    def __repr__(self) -> str:
        return f"ThompsonElement(dom={self.dom!r}, ran={self.ran!r}, shift={self.shift})"


def make(dom: PerfectDiagram | Iterable[Leaf], ran: PerfectDiagram | Iterable[Leaf], s: int) -> ThompsonElement:
    dom = dom if isinstance(dom, PerfectDiagram) else PerfectDiagram(dom)
    ran = ran if isinstance(ran, PerfectDiagram) else PerfectDiagram(ran)
    if len(dom) != len(ran):
        raise SizeMismatch(f"{len(dom)} leaves vs {len(ran)} leaves")
    n = len(dom.vertices)
    s %= n
    if not _compatible(dom, ran, s):
        raise InvalidIsomorphism(f"shift {s} does not match the leaf pairings")
    return ThompsonElement(dom, ran, s)


def identity() -> ThompsonElement:
    d = PerfectDiagram()
    return ThompsonElement(d, d, 0)


def isomorphism_shifts(dom: PerfectDiagram, ran: PerfectDiagram) -> list[int]:
    if len(dom) != len(ran):
        return []
    return [s for s in range(len(dom.vertices)) if _compatible(dom, ran, s)]


def apply(g: ThompsonElement, x):
    return _pl.apply(g, x)


def apply_leaf(g: ThompsonElement, leaf: Leaf) -> Leaf:
    return _pl.apply_leaf(g, leaf)


def invert(g: ThompsonElement) -> ThompsonElement:
    return ThompsonElement(g.ran, g.dom, (-g.shift) % g.size)


def compose(g: ThompsonElement, h: ThompsonElement) -> ThompsonElement:
    """``g o h``: apply h first."""
    dom, ran, targets, signs = _pl.compose_pieces(g, h, invert(h))
    n = len(targets)
    s = targets[0]
    if any(t != (i + s) % n for i, t in enumerate(targets)) or any(x != 1 for x in signs):
        raise RefinementFailure("composite interval map is not a uniform shift")
    return make(dom, ran, s)


def is_identity(g: ThompsonElement) -> bool:
    return g.shift == 0 and g.dom.leaves == g.ran.leaves


def equals(g: ThompsonElement, h: ThompsonElement) -> bool:
    return is_identity(compose(g, invert(h)))


def _vertex_image_leaf(g: ThompsonElement, leaf: Leaf) -> Leaf:
    i = g.dom.vertex_index[leaf.left.value]
    j = g.dom.pairing[i]
    n = g.size
    a = g.ran.vertices[(i + g.shift) % n]
    b = g.ran.vertices[(j + g.shift) % n]
    return leaf_from_endpoints(from_fraction(a), from_fraction(b))


def reduce(g: ThompsonElement) -> ThompsonElement:
    """Strip synchronized removable leaf pairs until none is left."""
    while True:
        for leaf in sorted(removable_leaves(g.dom), key=lambda l: (-l.n, l.k)):
            img = _vertex_image_leaf(g, leaf)
            if img in removable_leaves(g.ran):
                dom = PerfectDiagram(g.dom.leaves - {leaf})
                ran = PerfectDiagram(g.ran.leaves - {img})
                zero_image = g.ran.vertices[g.shift]
                g = make(dom, ran, ran.vertex_index[zero_image])
                break
        else:
            return g


def pi_edge(g, leaf: Leaf) -> Leaf:
    return _pl.apply_leaf(g, leaf)


def pi_vertex(g, v: VertexId) -> VertexId:
    a, _, b = first_sides(v)
    common = set(edge_endpoints(pi_edge(g, a))) & set(edge_endpoints(pi_edge(g, b)))
    if len(common) != 1:
        raise LeafTransportFailure(f"images of two sides of {v} do not meet in one vertex")
    return common.pop()


def vertex_sign(g, v: VertexId) -> int:
    """+1 if g keeps the cyclic order of sides at v, -1 if it reverses it."""
    w = pi_vertex(g, v)
    keys = [side_key(w, pi_edge(g, s)) for s in first_sides(v)]
    return cyclic_order_values(*keys)


def pi_restrict(g, edges: Iterable[Leaf], with_signs: bool = False) -> PartialAutomorphism:
    edges = list(edges)
    emap = {e: pi_edge(g, e) for e in edges}
    verts = list(incidence(edges))
    vmap = {v: pi_vertex(g, v) for v in verts}
    signs = {v: vertex_sign(g, v) for v in verts} if with_signs else None
    return PartialAutomorphism(emap, vmap, signs)

"""Finite germs of ribbon-tree automorphisms.

A germ maps the edges of a finite subtree P bijectively onto a subtree P'.
In *preserve* mode (``signs is None``) it must keep the cyclic order of
edges at every vertex; in *respect* mode each vertex carries a sign and the
order is kept (+1) or reversed (-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .lamination import (
    Leaf,
    VertexId,
    edge_endpoints,
    incidence,
    is_connected,
    other_end,
    side_key,
)


class GermError(ValueError):
    pass


class Disconnected(GermError):
    pass


class IncidenceBroken(GermError):
    pass


class CyclicOrderBroken(GermError):
    pass


@dataclass(frozen=True)
class PartialAutomorphism:
    edges: Mapping[Leaf, Leaf]
    vertices: Mapping[VertexId, VertexId] = field(default_factory=dict)
    signs: Optional[Mapping[VertexId, int]] = None

    @property
    def mode(self) -> str:
        return "preserve" if self.signs is None else "respect"

    @property
    def source(self) -> frozenset:
        return frozenset(self.edges)

    @property
    def target(self) -> frozenset:
        return frozenset(self.edges.values())

    def sign(self, v: VertexId) -> int:
        return 1 if self.signs is None else self.signs.get(v, 1)

    def inverse(self) -> "PartialAutomorphism":
        signs = None
        if self.signs is not None:
            signs = {self.vertices[v]: s for v, s in self.signs.items()}
        return PartialAutomorphism(
            {b: a for a, b in self.edges.items()},
            {b: a for a, b in self.vertices.items()},
            signs,
        )

    def __str__(self) -> str:
        from .formats import emit_germ

        return emit_germ(self)


def derive_vertices(edges: Mapping[Leaf, Leaf], hint: Mapping[VertexId, VertexId] | None = None) -> dict:
    """Vertex map induced by an edge map; single-edge germs use ``hint`` or map endpoints in order."""
    hint = dict(hint or {})
    inc = incidence(edges)
    vm: dict[VertexId, VertexId] = {}
    for v, es in inc.items():
        if len(es) < 2:
            continue
        common = set(edge_endpoints(edges[es[0]]))
        for e in es[1:]:
            common &= set(edge_endpoints(edges[e]))
        if len(common) != 1:
            raise IncidenceBroken(f"images of the edges at {v} do not share a vertex")
        vm[v] = common.pop()
    for v, es in inc.items():
        if len(es) != 1:
            continue
        e = es[0]
        w = other_end(e, v)
        if w in vm:
            if vm[w] not in edge_endpoints(edges[e]):
                raise IncidenceBroken(f"{edges[e]} is not incident to {vm[w]}")
            vm[v] = other_end(edges[e], vm[w])
        elif v in hint:
            vm[v] = hint[v]
        elif w in hint:
            vm[v] = other_end(edges[e], hint[w])
        else:
            vm[v] = edge_endpoints(edges[e])[edge_endpoints(e).index(v)]
    return vm


def from_edges(
    edges: Mapping[Leaf, Leaf],
    signs: Mapping[VertexId, int] | None = None,
    hint: Mapping[VertexId, VertexId] | None = None,
) -> PartialAutomorphism:
    edges = dict(edges)
    vm = derive_vertices(edges, hint)
    if signs is not None:
        signs = {v: signs.get(v, 1) for v in vm}
    return PartialAutomorphism(edges, vm, signs)


def cyclic_direction(keys: Sequence) -> int:
    """+1 if keys is a rotation of an increasing sequence, -1 if of a decreasing one, else 0."""
    n = len(keys)
    if n < 3:
        return 1
    ups = sum(keys[i] < keys[(i + 1) % n] for i in range(n))
    if ups == n - 1:
        return 1
    if ups == 1:
        return -1
    return 0


def local_orders(pa: PartialAutomorphism) -> dict[VertexId, tuple[list[Leaf], list[Leaf]]]:
    """At each source vertex: its edges in cyclic order and their images."""
    out = {}
    for v, es in incidence(pa.edges).items():
        es = sorted(es, key=lambda e: side_key(v, e))
        out[v] = es, [pa.edges[e] for e in es]
    return out


def validate(pa: PartialAutomorphism) -> None:
    if not is_connected(pa.source):
        raise Disconnected("source edges do not form a subtree")
    if not is_connected(pa.target):
        raise Disconnected("target edges do not form a subtree")
    if len(pa.target) != len(pa.edges):
        raise IncidenceBroken("edge map is not injective")
    vm = derive_vertices(pa.edges, pa.vertices)
    if dict(pa.vertices) != vm:
        raise IncidenceBroken("stored vertex map disagrees with the edge map")
    if len(set(vm.values())) != len(vm):
        raise IncidenceBroken("vertex map is not injective")
    for e, f in pa.edges.items():
        if {vm[x] for x in edge_endpoints(e)} != set(edge_endpoints(f)):
            raise IncidenceBroken(f"{e} -> {f} breaks incidence")
    for v, (es, imgs) in local_orders(pa).items():
        if len(es) < 3:
            continue
        w = vm[v]
        direction = cyclic_direction([side_key(w, f) for f in imgs])
        if direction != pa.sign(v):
            raise CyclicOrderBroken(f"cyclic order at {v} is not {'kept' if pa.sign(v) == 1 else 'reversed'}")


def is_valid(pa: PartialAutomorphism) -> bool:
    try:
        validate(pa)
    except GermError:
        return False
    return True

"""Approximating germs of ribbon-tree automorphisms by group elements.

Given a germ P -> P' that contains the diameter on both sides, both sides
are completed to perfect diagrams.  At every vertex of P the sides that the
completion added fall into the gaps between P-sides; matched gaps are padded
with fresh sides until their counts agree, and the extra sides are paired in
cyclic order.  The resulting leaf bijection is a ribbon-tree isomorphism of
the two diagrams, hence a Thompson element.

Signed germs are reduced to unsigned ones by composing with branch flips.
"""

from __future__ import annotations

import random

from .diagram import PerfectDiagram, is_perfect, perfect_complete
from .element import ThompsonElement, make, pi_edge, pi_vertex
from .fullgroup import GeneralElement, compose, embed, gamma, general_identity, pi_full
from .germ import (
    CyclicOrderBroken,
    Disconnected,
    GermError,
    IncidenceBroken,
    PartialAutomorphism,
    is_valid,
    validate,
)
from .lamination import (
    DIAM,
    Central,
    Inner,
    Leaf,
    VertexId,
    edge_endpoints,
    incidence,
    longest_side,
    other_end,
    outer_vertex,
    parent,
    side_between,
    side_key,
    sides_in_gap,
)

__all__ = [
    "PartialAutomorphism",
    "GermError",
    "Disconnected",
    "IncidenceBroken",
    "CyclicOrderBroken",
    "PreconditionDiam",
    "NoIsomorphism",
    "validate",
    "is_valid",
    "extend_to_cover_diam",
    "approximate",
    "flips_for_signs",
    "flip_element",
    "approximate_full",
    "random_partial_automorphism",
]

C0, C1 = Central(0), Central(1)


class PreconditionDiam(ValueError):
    pass


class NoIsomorphism(AssertionError):
    pass


def _ordered(edges, v: VertexId) -> list[Leaf]:
    return sorted((e for e in edges if v in edge_endpoints(e)), key=lambda e: side_key(v, e))


def _grow_source(pa: PartialAutomorphism) -> PartialAutomorphism:
    """Add edges toward the diameter on the source side, choosing images gap by gap."""
    edges = dict(pa.edges)
    vm = dict(pa.vertices)
    signs = None if pa.signs is None else dict(pa.signs)
    while DIAM not in edges:
        top = next(e for e in edges if parent(e) not in edges)
        u = outer_vertex(top)
        f = longest_side(u)
        anchors = _ordered(edges, u)
        # the longest side sits in the gap that wraps from the last side to the first
        a, b = edges[anchors[-1]], edges[anchors[0]]
        if signs is not None and signs.get(u, 1) == -1:
            a, b = b, a
        w = vm[u]
        image = side_between(w, a, b)
        edges[f] = image
        vm[other_end(f, u)] = other_end(image, w)
        if signs is not None:
            signs.setdefault(other_end(f, u), 1)
    return PartialAutomorphism(edges, vm, signs)


def extend_to_cover_diam(pa: PartialAutomorphism) -> PartialAutomorphism:
    """Extend pa until both its source and its target contain the diameter."""
    validate(pa)
    out = _grow_source(_grow_source(pa).inverse()).inverse()
    validate(out)
    return out


def _check_diam(pa: PartialAutomorphism) -> None:
    if DIAM not in pa.edges:
        raise PreconditionDiam("source does not contain the diameter; call extend_to_cover_diam first")
    if DIAM not in pa.edges.values():
        raise PreconditionDiam("target does not contain the diameter; call extend_to_cover_diam first")


def _segments(present: list[Leaf], anchors: list[Leaf]) -> dict[Leaf, list[Leaf]]:
    """For each anchor, the present non-anchor sides after it and before the next anchor."""
    aset = set(anchors)
    start = present.index(anchors[0])
    rotated = present[start:] + present[:start]
    out: dict[Leaf, list[Leaf]] = {}
    current = None
    for s in rotated:
        if s in aset:
            current = s
            out[s] = []
        else:
            out[current].append(s)
    return out


def _pad(leaves: set, v: VertexId, anchor: Leaf, nxt: Leaf, seg: list[Leaf], need: int) -> list[Leaf]:
    seg = list(seg)
    for _ in range(need):
        new = side_between(v, seg[-1] if seg else anchor, nxt)
        leaves.add(new)
        seg.append(new)
    return seg


def _middle_side(leaf: Leaf) -> VertexId:
    return C1 if leaf == DIAM else Inner(leaf)


def approximate(pa: PartialAutomorphism) -> ThompsonElement:
    """A Thompson element whose tree action restricted to the source of pa is pa."""
    if pa.signs is not None and any(s != 1 for s in pa.signs.values()):
        raise ValueError("approximate needs an orientation-preserving germ")
    validate(pa)
    _check_diam(pa)
    dom = set(perfect_complete(pa.edges).leaves)
    ran = set(perfect_complete(pa.edges.values()).leaves)
    corr = dict(pa.edges)
    # padding at one vertex of P never adds sides at another vertex of P
    dom_inc, ran_inc = incidence(dom), incidence(ran)
    for v, es in incidence(pa.edges).items():
        w = pa.vertices[v]
        anchors = sorted(es, key=lambda e: side_key(v, e))
        images = [pa.edges[e] for e in anchors]
        seg_v = _segments(sorted(dom_inc[v], key=lambda e: side_key(v, e)), anchors)
        seg_w = _segments(sorted(ran_inc[w], key=lambda e: side_key(w, e)), images)
        for i, e in enumerate(anchors):
            f = pa.edges[e]
            a, b = seg_v[e], seg_w[f]
            if len(a) < len(b):
                a = _pad(dom, v, e, anchors[(i + 1) % len(anchors)], a, len(b) - len(a))
            elif len(b) < len(a):
                b = _pad(ran, w, f, images[(i + 1) % len(images)], b, len(a) - len(b))
            corr.update(zip(a, b))
    if not (is_perfect(dom) and is_perfect(ran)):
        raise NoIsomorphism("padding broke perfectness")
    D, R = PerfectDiagram(dom), PerfectDiagram(ran)

    image = pa.edges[DIAM]
    x, y = image.left.value, image.right.value
    zero = y if pa.vertices[C1] == _middle_side(image) else x
    try:
        g = make(D, R, R.vertex_index[zero % 2])
    except (ValueError, KeyError) as exc:
        raise NoIsomorphism(f"padded diagrams are not matched: {exc}") from None
    for e, f in corr.items():
        if pi_edge(g, e) != f:
            raise NoIsomorphism(f"{e} should map to {f}, got {pi_edge(g, e)}")
    for v, w in pa.vertices.items():
        if pi_vertex(g, v) != w:
            raise NoIsomorphism(f"vertex {v} should map to {w}")
    return g


def flips_for_signs(pa: PartialAutomorphism) -> list[tuple[Leaf, str]]:
    """Branch flips, deepest first, whose product has sign pa.sign(v) at every vertex of the source."""
    out = []
    for e in sorted(pa.edges, key=lambda l: (-l.n, l.k)):
        if e == DIAM:
            continue
        inner, outer = Inner(e), outer_vertex(e)
        if pa.sign(inner) != pa.sign(outer):
            out.append((e, "inner"))
    if DIAM in pa.edges:
        if pa.sign(C0) == -1:
            out.append((DIAM, "outer"))
        if pa.sign(C1) == -1:
            out.append((DIAM, "inner"))
    return out


def flip_element(flips: list[tuple[Leaf, str]]) -> GeneralElement:
    """Product of the flips; the first listed acts first."""
    if not flips:
        return general_identity()
    return compose(*[gamma(leaf, side) for leaf, side in reversed(flips)])


def _signs_of(pa: PartialAutomorphism) -> dict:
    return {v: pa.sign(v) for v in pa.vertices}


def approximate_full(pa: PartialAutomorphism) -> GeneralElement:
    """An element of the full group whose signed tree action on the source of pa is pa."""
    validate(pa)
    _check_diam(pa)
    phi = flip_element(flips_for_signs(pa))
    q = PartialAutomorphism(
        {pi_edge(phi, e): f for e, f in pa.edges.items()},
        {pi_vertex(phi, v): w for v, w in pa.vertices.items()},
    )
    g = compose(embed(approximate(q)), phi)
    got = pi_full(g, pa.edges)
    if dict(got.edges) != dict(pa.edges) or dict(got.vertices) != dict(pa.vertices):
        raise NoIsomorphism("flipped approximation does not reproduce the germ")
    if dict(got.signs) != _signs_of(pa):
        raise NoIsomorphism("flipped approximation has the wrong vertex signs")
    return g


def _random_side(rng: random.Random, v: VertexId, s1: Leaf, s2: Leaf, used: set, extra: int = 3) -> Leaf:
    cap = longest_side(v).n + extra
    while True:
        cands = [s for s in sides_in_gap(v, s1, s2, cap) if s not in used]
        if cands:
            return rng.choice(cands)
        cap += 1


def random_partial_automorphism(
    radius: int,
    seed: int,
    signed: bool = False,
    branching: tuple[int, ...] = (1, 1, 2, 2, 3),
) -> PartialAutomorphism:
    """A valid germ on a random ball of the given edge radius around the diameter."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    rng = random.Random(seed)
    swap = rng.random() < 0.5
    edges = {DIAM: DIAM}
    vm: dict[VertexId, VertexId] = {C0: C1, C1: C0} if swap else {C0: C0, C1: C1}
    signs = {C0: rng.choice((1, -1)), C1: rng.choice((1, -1))} if signed else None
    frontier = [C0, C1]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            w = vm[v]
            for _ in range(rng.choice(branching)):
                present = _ordered(edges, v)
                i = rng.randrange(len(present))
                s1, s2 = present[i], present[(i + 1) % len(present)]
                e = _random_side(rng, v, s1, s2, set(edges))
                t1, t2 = edges[s1], edges[s2]
                if signs is not None and signs[v] == -1:
                    t1, t2 = t2, t1
                f = _random_side(rng, w, t1, t2, set(edges.values()))
                edges[e] = f
                ve = other_end(e, v)
                vm[ve] = other_end(f, w)
                if signs is not None:
                    signs[ve] = rng.choice((1, -1))
                nxt.append(ve)
        frontier = nxt
    pa = PartialAutomorphism(edges, vm, signs)
    validate(pa)
    return pa

"""Orientation-respecting elements: Thompson elements plus branch flips.

A :class:`GeneralElement` keeps an explicit interval permutation and a sign
per domain interval.  Such a map may jump at a domain vertex, but only across
an identified pair, so it still acts as a homeomorphism of the Basilica.
At domain vertices ``apply`` returns the right-hand limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import _pl, element
from .diagram import PerfectDiagram
from .element import ThompsonElement, pi_restrict
from .germ import PartialAutomorphism
from .lamination import DIAM, Central, Leaf, leaf_of_point, middle_node, outer_vertex
from .triadic import from_fraction


class ContinuityError(ValueError):
    pass


@dataclass(frozen=True)
class GeneralElement:
    dom: PerfectDiagram
    ran: PerfectDiagram
    targets: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "signs", tuple(self.signs))
        n = len(self.dom.nodes)
        if len(self.ran.nodes) != n or sorted(self.targets) != list(range(n)) or len(self.signs) != n:
            raise ContinuityError("targets must permute the intervals one-to-one")
        if any(s not in (1, -1) for s in self.signs):
            raise ContinuityError("signs must be +1 or -1")

    def __call__(self, x):
        return apply(self, x)

    def __mul__(self, other) -> "GeneralElement":
        return compose(self, other)

    def __invert__(self) -> "GeneralElement":
        return invert(self)


def embed(g: ThompsonElement) -> GeneralElement:
    return GeneralElement(g.dom, g.ran, g.targets, g.signs)


def _lift(g) -> GeneralElement:
    return embed(g) if isinstance(g, ThompsonElement) else g


def general_identity() -> GeneralElement:
    d = PerfectDiagram()
    return GeneralElement(d, d, (0, 1), (1, 1))


def gamma(leaf: Leaf, side: str = "inner") -> GeneralElement:
    """Reflect the branch behind ``leaf`` and fix everything else.

    ``side="inner"`` flips the middle arc of the leaf.  For the diameter
    ``"inner"`` is the arc [1,2] and ``"outer"`` the arc [0,1].

    The long arc of a smaller leaf has no affine self-reflection that keeps
    the lamination, so its flip is the diameter flip conjugated by a Thompson
    element carrying the diameter onto the leaf.
    """
    if side not in ("inner", "outer"):
        raise ValueError(f"side must be 'inner' or 'outer', got {side!r}")
    if leaf == DIAM:
        d = PerfectDiagram()
        signs = (1, -1) if side == "inner" else (-1, 1)
        return GeneralElement(d, d, (0, 1), signs)
    if side == "outer":
        return _outer_flip(leaf)
    chain = {DIAM}
    cur = leaf
    while cur != DIAM:
        chain.add(cur)
        cur = Leaf(cur.k // 3, cur.n - 1) if cur.n > 1 else DIAM
    d = PerfectDiagram(chain)
    flipped = d.node_index[middle_node(leaf)]
    n = len(d.nodes)
    return GeneralElement(d, d, tuple(range(n)), tuple(-1 if i == flipped else 1 for i in range(n)))


def _chain(leaf: Leaf) -> PerfectDiagram:
    """The leaf together with every chord subdivided on the way down to it."""
    out = {DIAM}
    while leaf != DIAM:
        out.add(leaf)
        leaf = Leaf(leaf.k // 3, leaf.n - 1) if leaf.n > 1 else DIAM
    return PerfectDiagram(frozenset(out))


def _carrier(leaf: Leaf) -> ThompsonElement:
    """A shallow Thompson element sending 0 and 1 to the left and right ends of ``leaf``."""
    ran = _chain(leaf)
    n = len(ran.nodes)
    s = ran.vertex_index[leaf.left.value]
    gap = (ran.vertex_index[leaf.right.value] - s) % n
    for k in range(2 * 3 ** (leaf.n - 1)):
        dom = _chain(Leaf(k, leaf.n))
        if dom.vertex_index[1] != gap:
            continue
        try:
            return element.make(dom, ran, s)
        except element.ElementError:
            continue
    from .approx import approximate, extend_to_cover_diam
    from .germ import from_edges

    return approximate(extend_to_cover_diam(from_edges({DIAM: leaf}, hint={Central(1): outer_vertex(leaf)})))


@lru_cache(maxsize=None)
def _outer_flip(leaf: Leaf) -> GeneralElement:
    h = _carrier(leaf)
    return compose(embed(h), gamma(DIAM, "inner"), embed(element.invert(h)))


def flipped_interval(leaf: Leaf, side: str = "inner") -> tuple:
    """The closed ccw arc that ``gamma(leaf, side)`` reverses, as (start, end); end may exceed 2."""
    node = middle_node(leaf)
    if side == "outer":
        return (0, 1) if leaf == DIAM else (node.end, node.start + 2)
    return node.start, node.end


def apply(g, x):
    return _pl.apply(_lift(g), x)


def apply_leaf(g, leaf: Leaf) -> Leaf:
    return _pl.apply_leaf(_lift(g), leaf)


def invert(g) -> GeneralElement:
    g = _lift(g)
    targets, signs = _pl.invert_targets(g.targets, g.signs)
    return GeneralElement(g.ran, g.dom, targets, signs)


def compose(*gs) -> GeneralElement:
    """``compose(a, b, c)`` is ``a o b o c`` (c acts first)."""
    out = _lift(gs[-1])
    for g in reversed(gs[:-1]):
        g = _lift(g)
        dom, ran, targets, signs = _pl.compose_pieces(g, out, invert(out))
        out = GeneralElement(dom, ran, targets, signs)
    return out


def is_identity(g) -> bool:
    g = _lift(g)
    return (
        g.dom.leaves == g.ran.leaves
        and all(t == i for i, t in enumerate(g.targets))
        and all(s == 1 for s in g.signs)
    )


def equals(g, h) -> bool:
    return is_identity(compose(g, invert(h)))


def validate(g) -> None:
    """Check that g induces a homeomorphism of the Basilica; raise ContinuityError if not."""
    g = _lift(g)
    seen: dict[Leaf, Leaf] = {}
    for leaf in g.dom.leaves:
        node = middle_node(leaf)
        images = set()
        for x in (node.start, node.end):
            images.add(_pl.map_point(g, x))
            images.add(_pl.map_point_left(g, x))
        classes = {leaf_of_point(from_fraction(y)) for y in images}
        if len(classes) != 1:
            raise ContinuityError(f"ends of {leaf} land in different classes {sorted(map(str, classes))}")
        img = classes.pop()
        if not {y % 2 for y in images} <= {img.left.value, img.right.value}:
            raise ContinuityError(f"{leaf} does not map onto {img}")
        seen[leaf] = img
    if set(seen.values()) != set(g.ran.leaves):
        raise ContinuityError("domain leaves do not map onto the range leaves")


def is_valid(g) -> bool:
    try:
        validate(g)
    except (ContinuityError, ValueError, ArithmeticError):
        return False
    return True


def pi_full(g, edges: Iterable[Leaf]) -> PartialAutomorphism:
    return pi_restrict(_lift(g), edges, with_signs=True)

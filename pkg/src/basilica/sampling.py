"""Random group elements for property tests and fuzzing.

Random Thompson elements are products of small elements enumerated from all
perfect diagram pairs with few leaves.  This keeps the sampler independent of
the approximation code it is used to test.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .diagram import PerfectDiagram
from .element import ThompsonElement, compose, isomorphism_shifts, make
from .fullgroup import GeneralElement, compose as gcompose, embed, gamma
from .lamination import DIAM, Leaf, incidence, leaves_up_to, sides


@lru_cache(maxsize=None)
def perfect_diagrams(max_leaves: int) -> tuple[PerfectDiagram, ...]:
    """Every perfect diagram with at most ``max_leaves`` leaves."""
    seen = {frozenset([DIAM])}
    layer = [frozenset([DIAM])]
    for _ in range(max_leaves - 1):
        nxt = []
        for leaves in layer:
            for node in PerfectDiagram(leaves).nodes:
                grown = leaves | {node.chord}
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        layer = nxt
    return tuple(sorted((PerfectDiagram(s) for s in seen), key=lambda d: (len(d), sorted(d.leaves))))


@lru_cache(maxsize=None)
def small_elements(max_leaves: int = 3) -> tuple[ThompsonElement, ...]:
    ds = perfect_diagrams(max_leaves)
    out = []
    for a in ds:
        for b in ds:
            out.extend(make(a, b, s) for s in isomorphism_shifts(a, b))
    return tuple(out)


def random_element(rng: random.Random, length: int = 3, max_leaves: int = 3) -> ThompsonElement:
    gens = small_elements(max_leaves)
    g = rng.choice(gens)
    for _ in range(length - 1):
        g = compose(rng.choice(gens), g)
    return g


def random_flip(rng: random.Random, max_level: int = 3) -> GeneralElement:
    leaf = rng.choice(leaves_up_to(max_level))
    # outer flips of small leaves are conjugates with deep diagrams; keep products shallow
    side = rng.choice(("inner", "outer")) if leaf == DIAM else "inner"
    return gamma(leaf, side)


def random_general_element(rng: random.Random, length: int = 3) -> GeneralElement:
    """Alternating product of Thompson elements and branch flips."""
    g = embed(random_element(rng, 1))
    for _ in range(length - 1):
        g = gcompose(random_flip(rng), embed(random_element(rng, 1)), g)
    return g


def random_leaf(rng: random.Random, max_level: int) -> Leaf:
    n = rng.randint(0, max_level)
    return DIAM if n == 0 else Leaf(rng.randrange(2 * 3 ** (n - 1)), n)


def random_diagram(rng: random.Random, max_leaves: int, max_level: int) -> frozenset[Leaf]:
    """A random connected diagram: grown from the diameter by adding sides at its vertices."""
    out = {DIAM}
    target = rng.randint(1, max_leaves)
    while len(out) < target:
        verts = sorted(incidence(out), key=str)
        rng.shuffle(verts)
        for v in verts:
            cands = [s for s in sides(v, max_level) if s not in out]
            if cands:
                out.add(rng.choice(cands))
                break
        else:
            break
    return frozenset(out)


def random_leaf_set(rng: random.Random, size: int, max_level: int) -> frozenset[Leaf]:
    pool = leaves_up_to(max_level)
    return frozenset(rng.sample(pool, size))

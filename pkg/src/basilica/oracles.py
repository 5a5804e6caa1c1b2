"""Brute-force oracles, written independently of the fast code paths.

Everything here works on integer coordinates: at resolution ``L`` the point
``x`` of R/2Z is the integer ``x * 3^L`` in ``[0, 2 * 3^L)``.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable

from .lamination import DIAM, Central, Inner, Leaf, VertexId, leaves_up_to


def _ends(leaf: Leaf, res: int) -> tuple[int, int]:
    """Integer endpoints (a, b) with the middle arc running ccw from a to b."""
    scale = 3 ** (res - leaf.n)
    a, b = (3 * leaf.k + 1) * scale, (3 * leaf.k + 2) * scale
    return a, b  # for the diameter: 3^res and 2 * 3^res, i.e. 1 and 0


class RegionOracle:
    """Complementary regions of the lamination truncated at a level, found by walking the boundary."""

    def __init__(self, max_level: int):
        self.res = max_level
        self.leaves = leaves_up_to(max_level)
        period = 2 * 3**max_level
        partner: dict[int, int] = {}
        owner: dict[int, Leaf] = {}
        for leaf in self.leaves:
            a, b = _ends(leaf, max_level)
            a, b = a % period, b % period
            partner[a], partner[b] = b, a
            owner[a] = owner[b] = leaf
        points = sorted(partner)
        index = {p: i for i, p in enumerate(points)}
        n = len(points)
        # arc i runs ccw from points[i] to points[i + 1]
        region_of_arc = [-1] * n
        self.regions: list[set[Leaf]] = []
        for start in range(n):
            if region_of_arc[start] != -1:
                continue
            rid = len(self.regions)
            chords: set[Leaf] = set()
            i = start
            while region_of_arc[i] == -1:
                region_of_arc[i] = rid
                end = points[(i + 1) % n]
                chords.add(owner[end])
                i = index[partner[end]]
            self.regions.append(chords)
        self._arc = region_of_arc
        self._index = index
        self._period = period

    def region_after(self, point: int) -> int:
        return self._arc[self._index[point % self._period]]

    def sides(self, leaf: Leaf) -> tuple[int, int]:
        """(region on the middle-arc side, region on the other side)."""
        a, b = _ends(leaf, self.res)
        return self.region_after(a), self.region_after(b)

    def vertex(self, rid: int) -> VertexId:
        chords = self.regions[rid]
        top = min(chords, key=lambda l: (l.n, l.k))
        if top == DIAM:
            a, _ = _ends(DIAM, self.res)
            return Central(1) if self.region_after(a) == rid else Central(0)
        return Inner(top)

    def parent(self, leaf: Leaf) -> Leaf:
        _, out = self.sides(leaf)
        return min(self.regions[out] - {leaf}, key=lambda l: (l.n, l.k))

    def edge_endpoints(self, leaf: Leaf) -> tuple[VertexId, VertexId]:
        inner, out = self.sides(leaf)
        return self.vertex(inner), self.vertex(out)


def side_of(eta: Leaf, leaf: Leaf, res: int) -> bool:
    """True if ``leaf`` lies on the middle-arc side of ``eta``."""
    a, b = _ends(eta, res)
    c, _ = _ends(leaf, res)
    period = 2 * 3**res
    return 0 < (c - a) % period < (b - a) % period


def condition_one(delta: Iterable[Leaf], separators: Iterable[Leaf]) -> bool:
    """No leaf outside delta separates two leaves of delta, and delta holds the diameter."""
    delta = set(delta)
    if DIAM not in delta:
        return False
    res = max(l.n for l in list(delta) + list(separators) + [DIAM])
    for eta in separators:
        if eta in delta:
            continue
        if len({side_of(eta, l, res) for l in delta}) > 1:
            return False
    return True


def separator_masks(max_level: int, sep_level: int) -> tuple[list[Leaf], dict[tuple[int, int], int]]:
    """For each pair (i, j) of leaves up to max_level, the bitmask of separating leaves up to sep_level."""
    leaves = leaves_up_to(max_level)
    seps = leaves_up_to(sep_level)
    bit = {l: 1 << i for i, l in enumerate(leaves)}
    side = [[side_of(eta, l, sep_level) for l in leaves] for eta in seps]
    out: dict[tuple[int, int], int] = {}
    for i in range(len(leaves)):
        for j in range(i + 1, len(leaves)):
            m = 0
            for e, eta in enumerate(seps):
                if eta != leaves[i] and eta != leaves[j] and side[e][i] != side[e][j]:
                    if eta not in bit:
                        # a separator beyond max_level: record it as an impossible requirement
                        m |= 1 << len(leaves)
                    else:
                        m |= bit[eta]
            out[i, j] = m
    return leaves, out


def perfect_by_procedure(leaves: Iterable[Leaf]) -> bool:
    """Run the subdivision procedure, drawing a chord whenever it is wanted, and see if all are drawn."""
    want = set(leaves)
    if DIAM not in want:
        return False
    drawn = {DIAM}
    # intervals as (b, j) with endpoints b/3^j, (b+1)/3^j
    open_intervals = [(0, 0), (1, 0)]
    while open_intervals:
        b, j = open_intervals.pop()
        chord = Leaf(b, j + 1)
        if chord in want:
            drawn.add(chord)
            open_intervals.extend((3 * b + d, j + 1) for d in range(3))
    return drawn == want


def _leaf_at(x: int, res: int) -> Leaf:
    """Leaf with endpoint x / 3^res."""
    x %= 2 * 3**res
    if x % 3**res == 0:
        return DIAM
    e = 0
    while x % 3 == 0:
        x //= 3
        e += 1
    return Leaf((x - x % 3) // 3, res - e)


class PieceMap:
    """Integer model of an element: points are multiples of 3^-res on [0, 2 * 3^res)."""

    def __init__(self, g, res: int):
        self.res = res
        self.period = 2 * 3**res
        self.starts = [n.b * 3 ** (res - n.j) for n in g.dom.nodes]
        self.pieces = []
        for i, node in enumerate(g.dom.nodes):
            dst = g.ran.nodes[g.targets[i]]
            self.pieces.append((node.b * 3 ** (res - node.j), node.j, dst.b * 3 ** (res - dst.j), 3 ** (res - dst.j), dst.j, g.signs[i]))

    def limits(self, x: int) -> tuple[int, int]:
        """(left limit, right limit) of the map at x."""
        x %= self.period
        out = []
        for probe in (x - 1, x):
            i = bisect_right(self.starts, probe % self.period) - 1
            start, j, dst, dlen, dj, sign = self.pieces[i]
            off = (x - start) % self.period
            scaled = off * 3**j // 3**dj if j >= dj else off // 3 ** (dj - j)
            out.append((dst + scaled if sign == 1 else dst + dlen - scaled) % self.period)
        return out[0], out[1]


def is_homeomorphism(g, extra_levels: int = 2) -> bool:
    """Every leaf up to a depth below the pieces has all four one-sided end images on one leaf, injectively."""
    depth = max(n.j for n in g.dom.nodes) + extra_levels
    res = depth + max(n.j for n in g.ran.nodes) + 1
    pm = PieceMap(g, res)
    seen = set()
    for leaf in leaves_up_to(depth):
        scale = 3 ** (res - leaf.n)
        images = set()
        for p in ((3 * leaf.k + 1) * scale, (3 * leaf.k + 2) * scale):
            images.update(pm.limits(p))
        classes = {_leaf_at(y, res) for y in images}
        if len(classes) != 1:
            return False
        img = classes.pop()
        if img in seen:
            return False
        seen.add(img)
    return True

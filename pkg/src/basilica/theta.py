"""Conjugacy between the ternary circle R/2Z and the 1:2:1 binary model on R/3Z.

Each ternary node is paired with a binary arc.  The roots [0,1] and [1,2]
go to [0,1] and [1,3]; below that, third ``d`` of a ternary arc goes to the
sub-arc of relative offset ``PSI[d]`` and relative length ``PHI[d]``.
Theta of a terminating ternary point is the start of the paired arc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .lamination import DIAM, Leaf, Node, leaf_from_endpoints, leaves_up_to, middle_node
from .triadic import TriadicAngle, from_fraction

PHI = (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
PSI = (Fraction(0), Fraction(1, 4), Fraction(3, 4))
BASE_START = (Fraction(0), Fraction(1))
BASE_WIDTH = (Fraction(1), Fraction(2))
PERIOD = 3


class ConjugacyFailure(AssertionError):
    pass


class NotAConstructionPoint(ValueError):
    pass


@dataclass(frozen=True, order=True, slots=True)
class DyadicAngle:
    num: int
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if self.level and self.num % 2 == 0:
            raise ValueError(f"{self.num}/2^{self.level} is not normalized")
        if not 0 <= self.num < PERIOD * 2**self.level:
            raise ValueError(f"{self.num}/2^{self.level} is outside [0,3)")

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, 2**self.level)

    def __str__(self) -> str:
        return f"{self.num}/2^{self.level}"


def dyadic(x) -> DyadicAngle:
    x = Fraction(x) % PERIOD
    d = x.denominator
    if d & (d - 1):
        raise ValueError(f"{x} is not dyadic")
    return DyadicAngle(x.numerator, d.bit_length() - 1)


_DYADIC = re.compile(r"^(\d+)/2\^(\d+)$")


def parse_dyadic(text: str) -> DyadicAngle:
    m = _DYADIC.match(text.strip())
    if not m:
        raise ValueError(f"bad dyadic literal {text!r}")
    num, level = int(m.group(1)), int(m.group(2))
    return dyadic(Fraction(num, 2**level))


class BinaryLeaf(NamedTuple):
    a: DyadicAngle
    b: DyadicAngle

    def __str__(self) -> str:
        return f"b:{self.a}:{self.b}"


def binary_leaf(x, y) -> BinaryLeaf:
    a, b = sorted((dyadic(x), dyadic(y)), key=lambda d: d.value)
    return BinaryLeaf(a, b)


def parse_binary_leaf(text: str) -> BinaryLeaf:
    parts = text.strip().split(":")
    if len(parts) != 3 or parts[0] != "b":
        raise ValueError(f"bad binary leaf literal {text!r}")
    leaf = BinaryLeaf(parse_dyadic(parts[1]), parse_dyadic(parts[2]))
    if leaf.a.value >= leaf.b.value:
        raise ValueError(f"endpoints of {text!r} must be increasing")
    return leaf


def node_arc(node: Node) -> tuple[Fraction, Fraction]:
    """(start, length) of the binary arc paired with a ternary node."""
    top = node.b // 3**node.j
    start, length = BASE_START[top], BASE_WIDTH[top]
    for i in range(node.j - 1, -1, -1):
        d = (node.b // 3**i) % 3
        start += length * PSI[d]
        length *= PHI[d]
    return start, length


def _ternary_digits(x) -> tuple[int, list[int]]:
    if isinstance(x, TriadicAngle):
        t = x
    else:
        t = from_fraction(Fraction(x))
    scaled = t.num  # value = num / 3^level on [0,2)
    digits = []
    for _ in range(t.level):
        scaled, r = divmod(scaled, 3)
        digits.append(r)
    return scaled, digits[::-1]


def theta(x) -> DyadicAngle:
    a0, rest = _ternary_digits(x)
    start, length = BASE_START[a0], BASE_WIDTH[a0]
    for d in rest:
        start += length * PSI[d]
        length *= PHI[d]
    return dyadic(start)


def theta_closed_form(x) -> Fraction:
    """c(a0) + w(a0) * sum_n (prod_{p=1}^{n-1} phi(a_p)) psi(a_n)."""
    a0, rest = _ternary_digits(x)
    total, prod = Fraction(0), Fraction(1)
    for d in rest:
        total += prod * PSI[d]
        prod *= PHI[d]
    return BASE_START[a0] + BASE_WIDTH[a0] * total


def theta_printed(x) -> Fraction:
    """The series with leading term psi(a0)/phi(0) and products from p=0, kept for comparison."""
    a0, rest = _ternary_digits(x)
    digits = [a0] + rest
    total = PSI[a0] / PHI[0]
    prod = Fraction(1)
    for n in range(1, len(digits)):
        prod *= PHI[digits[n - 1]]
        total += prod * PSI[digits[n]]
    return total


def theta_inverse(y) -> TriadicAngle:
    """Inverse of theta on the endpoints of paired arcs; raises NotAConstructionPoint otherwise."""
    y = Fraction(y.value if isinstance(y, DyadicAngle) else y) % PERIOD
    a0 = 0 if y < 1 else 1
    start, length = BASE_START[a0], BASE_WIDTH[a0]
    num, level = a0, 0
    bound = 2 * (y.denominator.bit_length()) + 4
    while y != start:
        if level > bound:
            raise NotAConstructionPoint(f"{y} is not a start of a paired arc")
        t = (y - start) / length
        d = 0 if t < PSI[1] else 1 if t < PSI[2] else 2
        start += length * PSI[d]
        length *= PHI[d]
        num, level = 3 * num + d, level + 1
    return from_fraction(Fraction(num, 3**level))


def theta_leaf(leaf: Leaf) -> BinaryLeaf:
    node = middle_node(leaf)
    out = binary_leaf(theta(node.start).value, theta(node.end).value if node.end < 2 else 0)
    if leaf == DIAM:
        return out
    start, length = node_arc(Node(leaf.k, leaf.n - 1))
    expected = binary_leaf(start + length * PSI[1], start + length * PSI[2])
    if out != expected:
        raise ConjugacyFailure(f"{leaf} maps to {out}, expected {expected}")
    return out


def _initial_arcs() -> list[Node]:
    return [Node(0, 0), Node(3, 1), Node(4, 1), Node(5, 1)]


def binary_lamination(depth: int) -> list[BinaryLeaf]:
    """Chords of the 1:2:1 construction after ``depth`` rounds, starting from [0-1] and [3/2-5/2]."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    out = [binary_leaf(0, 1), binary_leaf(Fraction(3, 2), Fraction(5, 2))]
    arcs = [node_arc(n) for n in _initial_arcs()]
    for _ in range(depth):
        nxt = []
        for start, length in arcs:
            out.append(binary_leaf(start + length * PSI[1], start + length * PSI[2]))
            nxt.extend((start + length * PSI[d], length * PHI[d]) for d in range(3))
        arcs = nxt
    return out


def construction_depth(leaf: Leaf) -> int:
    """Round of the binary construction in which the image of ``leaf`` first appears."""
    if leaf == DIAM or leaf == Leaf(1, 1):
        return 0
    return leaf.n if leaf.k < 3 ** (leaf.n - 1) else leaf.n - 1


def binary_level(chord: BinaryLeaf) -> int:
    """Level of a binary chord in the ternary-aligned numbering ([0-1] is 0, [3/2-5/2] is 1)."""
    if chord == binary_leaf(0, 1):
        return 0
    x = theta_inverse(chord.a)
    y = theta_inverse(chord.b)
    return leaf_from_endpoints(x, y).n


def structural_match(depth: int) -> dict[Leaf, BinaryLeaf]:
    """Pair every ternary leaf of level <= depth with the binary chord built in the same place."""
    out = {DIAM: binary_leaf(0, 1)}
    for leaf in leaves_up_to(depth):
        if leaf == DIAM:
            continue
        start, length = node_arc(Node(leaf.k, leaf.n - 1))
        out[leaf] = binary_leaf(start + length * PSI[1], start + length * PSI[2])
    return out

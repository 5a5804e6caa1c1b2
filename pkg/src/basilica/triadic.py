"""Exact points of the circle R/2Z with power-of-3 denominators.

A :class:`TriadicAngle` stores ``num / 3**level`` reduced modulo 2, with the
canonical representative in ``[0, 2)`` and the smallest possible level.
Nothing here touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union


class TriadicError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class TriadicAngle:
    num: int
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise TriadicError(f"negative level {self.level}")
        if not 0 <= self.num < 2 * 3**self.level:
            raise TriadicError(f"{self.num}/3^{self.level} is not in [0, 2)")
        if self.level > 0 and self.num % 3 == 0:
            raise TriadicError(f"{self.num}/3^{self.level} is not reduced")

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, 3**self.level)

    def scaled(self, level: int) -> int:
        """Numerator of this angle written over ``3**level`` (level >= self.level)."""
        return self.num * 3 ** (level - self.level)

    def __lt__(self, other: "TriadicAngle") -> bool:
        return self.value < other.value

    def __le__(self, other: "TriadicAngle") -> bool:
        return self.value <= other.value

    def __add__(self, other: "TriadicAngle") -> "TriadicAngle":
        lv = max(self.level, other.level)
        return normalize(self.scaled(lv) + other.scaled(lv), lv)

    def __sub__(self, other: "TriadicAngle") -> "TriadicAngle":
        lv = max(self.level, other.level)
        return normalize(self.scaled(lv) - other.scaled(lv), lv)

    def __neg__(self) -> "TriadicAngle":
        return normalize(-self.num, self.level)

    def __str__(self) -> str:
        return format_angle(self)

    def __repr__(self) -> str:
        return f"TriadicAngle({self.num}/3^{self.level})"


def normalize(num: int, level: int) -> TriadicAngle:
    if level < 0:
        raise TriadicError(f"negative level {level}")
    num %= 2 * 3**level
    while level > 0 and num % 3 == 0:
        num //= 3
        level -= 1
    return TriadicAngle(num, level)


def from_fraction(x: Fraction | int) -> TriadicAngle:
    x = Fraction(x)
    den = x.denominator
    level = 0
    while den % 3 == 0:
        den //= 3
        level += 1
    if den != 1:
        raise TriadicError(f"{x} is not a triadic rational")
    return normalize(x.numerator, level)


ZERO = TriadicAngle(0, 0)
ONE = TriadicAngle(1, 0)


def digits(x: TriadicAngle, count: int) -> str:
    """Ternary expansion ``a0.a1...a_count`` of x, zero padded (or truncated)."""
    a0, rest = divmod(x.num, 3**x.level)
    out = []
    for i in range(1, count + 1):
        if i <= x.level:
            out.append(str(rest // 3 ** (x.level - i) % 3))
        else:
            out.append("0")
    return f"{a0}." + "".join(out) if count else f"{a0}."


def from_digits(seq: Union[str, Sequence[int]]) -> TriadicAngle:
    if isinstance(seq, str):
        s = seq.strip()
        if not re.fullmatch(r"[01]\.[012]*", s) and not re.fullmatch(r"[01]", s):
            raise TriadicError(f"malformed ternary digit string {seq!r}")
        head, _, tail = s.partition(".")
        ds = [int(head)] + [int(c) for c in tail]
    else:
        ds = list(seq)
        if not ds or ds[0] not in (0, 1) or any(d not in (0, 1, 2) for d in ds[1:]):
            raise TriadicError(f"malformed digit sequence {seq!r}")
    num = 0
    for d in ds:
        num = 3 * num + d
    return normalize(num, len(ds) - 1)


def cyclic_order(x: TriadicAngle, y: TriadicAngle, z: TriadicAngle) -> int:
    """+1 if y lies on the open ccw arc from x to z, -1 if on the other arc, 0 if degenerate."""
    if x == y or y == z or x == z:
        return 0
    return cyclic_order_values(x.value, y.value, z.value)


def cyclic_order_values(a, b, c) -> int:
    """Cyclic orientation of three distinct keys of a linearly ordered circle cut."""
    if a == b or b == c or a == c:
        return 0
    if (a < b < c) or (b < c < a) or (c < a < b):
        return 1
    return -1


class Arc(NamedTuple):
    """Closed ccw arc of length ``3**-exp`` starting at ``start``."""

    start: TriadicAngle
    exp: int

    @property
    def length(self) -> Fraction:
        return Fraction(1, 3**self.exp)

    @property
    def end(self) -> TriadicAngle:
        lv = max(self.start.level, self.exp)
        return normalize(self.start.scaled(lv) + 3 ** (lv - self.exp), lv)

    def offset(self, x) -> Fraction | None:
        """Position of x measured ccw from ``start``; None when x is off the arc."""
        xv = x.value if isinstance(x, TriadicAngle) else Fraction(x)
        d = (xv - self.start.value) % 2
        return d if d <= self.length else None


def arc(a, b) -> Arc:
    """Arc from a to b (ccw); length must be a power of 3."""
    a = a if isinstance(a, TriadicAngle) else parse_angle(a) if isinstance(a, str) else from_fraction(a)
    b = b if isinstance(b, TriadicAngle) else parse_angle(b) if isinstance(b, str) else from_fraction(b)
    length = (b.value - a.value) % 2
    if length == 0:
        length = Fraction(2)
    exp = 0
    while length < 1:
        length *= 3
        exp += 1
    if length != 1:
        raise TriadicError(f"arc [{a}, {b}] does not have length 3^-k")
    return Arc(a, exp)


def affine_image(x, src: Arc, dst: Arc, sign: int = 1):
    """Image of x under the affine map src -> dst of slope sign * 3**(src.exp - dst.exp).

    x may be a TriadicAngle or any rational (Fraction); the result has the same kind.
    """
    off = src.offset(x)
    if off is None:
        raise TriadicError(f"{x} is not on the arc starting at {src.start}")
    scale = Fraction(3**src.exp, 3**dst.exp)
    if sign == 1:
        y = (dst.start.value + off * scale) % 2
    elif sign == -1:
        y = (dst.start.value + (src.length - off) * scale) % 2
    else:
        raise TriadicError(f"sign must be +1 or -1, got {sign}")
    return from_fraction(y) if isinstance(x, TriadicAngle) else y


# Literal grammar: `num/3^level` or a ternary digit string such as `0.12`.
_FRACTION_RE = re.compile(r"\s*(-?\d+)\s*/\s*3\^(\d+)\s*")


def parse_angle(text: str) -> TriadicAngle:
    m = _FRACTION_RE.fullmatch(text)
    if m:
        return normalize(int(m.group(1)), int(m.group(2)))
    return from_digits(text)


def format_angle(x: TriadicAngle) -> str:
    return f"{x.num}/3^{x.level}"


def angles(values: Iterable) -> list[TriadicAngle]:
    return [v if isinstance(v, TriadicAngle) else from_fraction(Fraction(v)) for v in values]

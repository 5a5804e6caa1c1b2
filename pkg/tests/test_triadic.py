from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from basilica.triadic import (
    TriadicAngle,
    TriadicError,
    affine_image,
    arc,
    cyclic_order,
    digits,
    format_angle,
    from_digits,
    normalize,
    parse_angle,
)
from conftest import angles


@pytest.mark.parametrize(
    "num, level, expected",
    [(9, 2, (1, 0)), (4, 1, (4, 1)), (-1, 1, (5, 1)), (18, 2, (0, 0)), (6, 0, (0, 0))],
)
def test_normalize(num, level, expected):
    assert normalize(num, level) == TriadicAngle(*expected)


def test_unreduced_angle_rejected():
    with pytest.raises(TriadicError):
        TriadicAngle(3, 1)
    with pytest.raises(TriadicError):
        TriadicAngle(6, 1)


@pytest.mark.parametrize(
    "x, count, expected", [("4/3^2", 3, "0.110"), ("5/3^1", 2, "1.20"), ("0/3^0", 2, "0.00")]
)
def test_digits(x, count, expected):
    assert digits(parse_angle(x), count) == expected


@pytest.mark.parametrize("text, value", [("0.12", Fraction(5, 9)), ("1.0", Fraction(1)), ("0.01", Fraction(1, 9))])
def test_from_digits(text, value):
    assert from_digits(text).value == value


@pytest.mark.parametrize("bad", ["2.1", "0.13", "0,1", "", "x"])
def test_from_digits_rejects(bad):
    with pytest.raises(TriadicError):
        from_digits(bad)


@pytest.mark.parametrize(
    "x, y, z, expected",
    [("0.0", "0.1", "1.0", 1), ("1.0", "0.1", "0.0", -1), ("0.0", "0.0", "1.0", 0)],
)
def test_cyclic_order(x, y, z, expected):
    assert cyclic_order(*map(parse_angle, (x, y, z))) == expected


def test_affine_image_examples():
    assert affine_image(Fraction(1, 6), arc(0, Fraction(1, 3)), arc(1, Fraction(4, 3))) == Fraction(7, 6)
    assert affine_image(Fraction(3, 2), arc(1, 2), arc(Fraction(5, 3), 2)) == Fraction(11, 6)
    assert affine_image(parse_angle("4/3^1"), arc(1, 2), arc(1, 2), -1) == parse_angle("5/3^1")


def test_affine_image_guards_off_arc_points():
    with pytest.raises(TriadicError):
        affine_image(Fraction(1, 2), arc(1, 2), arc(Fraction(5, 3), 2))


def test_arc_needs_power_of_three_length():
    with pytest.raises(TriadicError):
        arc(0, Fraction(1, 2))


@given(angles())
def test_normalize_idempotent(x):
    assert normalize(x.num, x.level) == x


@given(angles())
def test_digits_round_trip(x):
    assert from_digits(digits(x, x.level)) == x


@given(angles())
def test_literal_round_trip(x):
    assert parse_angle(format_angle(x)) == x


@given(angles(), angles(), angles(), angles())
def test_cyclic_order_rotation_invariant(x, y, z, r):
    assert cyclic_order(x, y, z) == cyclic_order(x + r, y + r, z + r)


@given(angles(), angles(), angles())
def test_cyclic_order_antisymmetric(x, y, z):
    assert cyclic_order(x, y, z) == -cyclic_order(z, y, x)


@given(st.integers(1, 4), st.data())
def test_affine_image_residues(exp, data):
    """Interior points finer than the source arc keep their residue mod 3, or swap 1 and 2 when reversed."""
    src_start = data.draw(st.integers(0, 2 * 3**exp - 1))
    dst_exp = data.draw(st.integers(0, 4))
    dst_start = data.draw(st.integers(0, 2 * 3**dst_exp - 1))
    sign = data.draw(st.sampled_from((1, -1)))
    src = arc(Fraction(src_start, 3**exp), Fraction(src_start + 1, 3**exp))
    dst = arc(Fraction(dst_start, 3**dst_exp), Fraction(dst_start + 1, 3**dst_exp))
    extra = data.draw(st.integers(1, 3))
    level = exp + extra
    offset = data.draw(st.integers(1, 3**extra - 1).filter(lambda m: m % 3))
    x = normalize(src_start * 3**extra + offset, level)
    y = affine_image(x, src, dst, sign)
    r = x.num % 3
    assert y.num % 3 == (r if sign == 1 else 3 - r)

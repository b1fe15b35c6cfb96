from math import prod

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from arithstar.abelian import (
    TRIVIAL,
    FiniteAbelianGroup,
    InvalidSpectrumError,
    cancel_square,
    direct_sum,
    from_cyclic_orders,
    from_primary,
    parse_group,
    to_primary,
)
from arithstar.numtheory import coprime_base, divisors_of_square_upto, valuation

orders = st.lists(st.integers(1, 400), max_size=6)


def primary_signature(cyclic):
    # Multiset of prime powers: the isomorphism invariant, computed independently.
    out = []
    for c in cyclic:
        out += [p**e for p, e in factorint(c).items()]
    return sorted(out)


def test_canonical_form():
    assert from_cyclic_orders([2, 3]).invariant_factors == (6,)
    assert from_cyclic_orders([4, 6]).invariant_factors == (2, 12)
    assert from_cyclic_orders([1, 1]) == TRIVIAL
    assert from_cyclic_orders([6, 6, 6, 18, 18]).invariant_factors == (6, 6, 6, 18, 18)


def test_constructor_rejects_non_chain():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1, 2))


@given(orders)
def test_canonical_preserves_primary_parts(cyclic):
    g = from_cyclic_orders(cyclic)
    assert primary_signature(g.invariant_factors) == primary_signature(cyclic)
    assert g.order == prod(cyclic)


@given(orders)
def test_primary_round_trip(cyclic):
    g = from_cyclic_orders(cyclic)
    assert from_primary(to_primary(g)) == g


@given(orders, orders)
def test_direct_sum_commutes(a, b):
    g, h = from_cyclic_orders(a), from_cyclic_orders(b)
    assert direct_sum(g, h) == direct_sum(h, g) == g + h
    assert (g + h).order == g.order * h.order


@given(orders, st.integers(2, 60))
def test_cancel_square_inverts_adding_square(cyclic, r0):
    # Add Z/r0 twice to something whose exponent divides r0, then cancel.
    g = from_cyclic_orders([c for c in cyclic if r0 % c == 0] + [r0, r0])
    base = from_cyclic_orders([c for c in cyclic if r0 % c == 0])
    assert cancel_square(list(g.invariant_factors), r0) == base


def test_cancel_square_rejects_invalid():
    with pytest.raises(InvalidSpectrumError):
        cancel_square([2, 3], 6)


def test_string_and_json():
    g = from_cyclic_orders([6, 18])
    assert str(g) == "Z/6 x Z/18"
    assert str(TRIVIAL) == "trivial"
    assert FiniteAbelianGroup.from_json(g.to_json()) == g
    assert g.exponent == 18 and g.rank == 2 and not g.is_trivial


@pytest.mark.parametrize(
    "text, expected",
    [
        ("trivial", ()),
        ("Z/2 x Z/3", (6,)),
        ('["2", "4"]', (2, 4)),
        ("10,10,25,3", (5, 10, 150)),
    ],
)
def test_parse_group(text, expected):
    assert parse_group(text).invariant_factors == expected


@given(st.lists(st.integers(1, 10**6), max_size=6))
def test_coprime_base(values):
    base = coprime_base(values)
    for i, a in enumerate(base):
        assert a > 1
        for b in base[i + 1 :]:
            assert gcd_(a, b) == 1
    for v in values:
        rest = v
        for b in base:
            rest //= b ** valuation(rest, b)
        assert rest == 1


def gcd_(a, b):
    while b:
        a, b = b, a % b
    return a


@given(st.integers(1, 3000))
def test_divisors_of_square(q):
    got = sorted(divisors_of_square_upto(factorint(q), q))
    want = [u for u in range(1, q + 1) if (q * q) % u == 0]
    assert got == want

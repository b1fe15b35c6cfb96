from math import gcd

import pytest
from sympy import divisors

from arithstar.abelian import TRIVIAL, from_cyclic_orders
from arithstar.construct import (
    concatenate,
    d_a_expand,
    d_a_group_law,
    double_structure,
    embed_group,
    embed_group_complete,
    extremal_candidates,
    iterate_d_a,
    prepend_one,
    scale_to_d0_one,
    sylvester_prime_cyclic,
    sylvester_state,
    sylvester_trivial,
)
from arithstar.critical import critical_complete, critical_star
from arithstar.enumeration import EnumSpec, enumerate_structures
from arithstar.structures import DhatVector, validate

S = {n: list(enumerate_structures(EnumSpec(n))) for n in range(1, 6)}


def group(entries):
    return critical_star(DhatVector(entries)).group


def test_sylvester_state():
    st = sylvester_state(8)
    assert st.s[:5] == (2, 3, 7, 43, 1807)
    for k in range(8):
        assert st.s[k] == st.a[k] + 1
        prod = 1
        for x in st.s[:k]:
            prod *= x
        assert st.a[k] == prod
    assert len(str(st.a[7])) == 27


@pytest.mark.parametrize("n", range(2, 9))
def test_sylvester_trivial(n):
    d = sylvester_trivial(n)
    assert d.d0 == 1 and d.n == n
    assert critical_star(d).group == TRIVIAL
    assert d.entries[-1] == sylvester_state(n).a[-1]


def test_sylvester_trivial_rows():
    assert sylvester_trivial(3).entries == (2, 3, 6)
    assert sylvester_trivial(5).entries == (2, 3, 7, 43, 1806)
    with pytest.raises(ValueError):
        sylvester_trivial(1)


def test_d_a_expand():
    assert d_a_expand(DhatVector([2, 3, 11, 15, 110]), 5).entries == (2, 3, 11, 15, 115, 2530)
    assert d_a_expand(DhatVector([2, 2]), 2).entries == (2, 4, 4)
    assert d_a_expand(DhatVector([2, 3, 6]), 1).entries == (2, 3, 7, 42)
    with pytest.raises(ValueError):
        d_a_expand(DhatVector([2, 3, 6]), 4)


def test_d_a_law_examples():
    base = DhatVector([2, 3, 11, 15, 110])
    assert gcd(base.r0 // 110, 110 // 5 + 1) == 1
    assert d_a_group_law(base, 5) == from_cyclic_orders([5])
    assert d_a_group_law(sylvester_trivial(7), 13) == from_cyclic_orders([13])


def test_d_a_law_hypothesis_not_met():
    # (2,4,4): r0/d_n = 1 always qualifies; (1,2,2): r0/d_n = 1 as well, find a failing one.
    failing = [(d, a) for d in S[4] for a in divisors(d.entries[-1])
               if gcd(d.r0 // d.entries[-1], d.entries[-1] // a + 1) != 1]
    assert failing
    d, a = failing[0]
    assert d_a_group_law(d, a) is None
    assert d_a_expand(d, a).d0 == d.d0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_a_preserves_d0(n):
    for d in S[n]:
        for a in divisors(d.entries[-1]):
            e = d_a_expand(d, a)
            assert e.d0 == d.d0 and e.n == n + 1


def test_iterated_d2_rows():
    rows = {
        3: ((2, 4, 4), (2,)),
        4: ((2, 4, 6, 12), (2, 2)),
        5: ((2, 4, 6, 14, 84), (2, 2, 2)),
        6: ((2, 4, 6, 14, 86, 3612), (2, 2, 2, 2)),
    }
    for n, (dhat, inv) in rows.items():
        d = iterate_d_a(DhatVector([2, 2]), [2] * (n - 2))
        assert d.entries == dhat
        assert critical_star(d).group.invariant_factors == inv


def test_sylvester_prime_cyclic():
    d = sylvester_prime_cyclic(13, {13: 5}, length=7)
    assert d.n == 8 and d.entries[-2:] == (10650056950819, 8724901004273049618800778)
    assert group(d.entries) == from_cyclic_orders([13])
    assert sylvester_prime_cyclic(7, {7: 3}).entries == (2, 3, 7, 49, 294)
    assert sylvester_prime_cyclic(2, {2: 1}).entries == (2, 4, 4)
    with pytest.raises(ValueError):
        sylvester_prime_cyclic(13, {13: 6})
    with pytest.raises(ValueError):
        sylvester_prime_cyclic(13, {13: 5}, length=5)


def test_sylvester_prime_cyclic_transfers_to_complete():
    d = sylvester_prime_cyclic(7, {7: 3})
    assert d.d0 == 1
    assert critical_complete([x - 1 for x in d.entries]).group == from_cyclic_orders([7])


def test_concatenate():
    d = concatenate(DhatVector([3, 3, 7, 7, 21]), DhatVector([2, 5, 5, 10]))
    assert d.entries == (2, 3, 3, 5, 5, 7, 7, 10, 21)
    assert group(d.entries) == from_cyclic_orders([105])
    x = DhatVector([2, 4, 4])
    assert group(concatenate(x, DhatVector([1])).entries) == group(x.entries)
    assert group(concatenate(DhatVector([2, 2]), DhatVector([2, 2])).entries).invariant_factors == (2, 2)


def test_concatenation_law_exhaustive():
    for a in S[2] + S[3]:
        for b in S[2] + S[3]:
            joined = concatenate(a, b)
            assert joined.d0 == a.d0 + b.d0


def test_embed_group():
    d, full = embed_group([10, 10, 25, 3])
    assert d.n == 68
    assert full == from_cyclic_orders([10, 10, 25, 3] + [150] * 62)
    d, full = embed_group(from_cyclic_orders([2]))
    assert d.entries == (2, 2, 2, 2) and full.invariant_factors == (2, 2)
    with pytest.raises(ValueError):
        embed_group(TRIVIAL)


def test_embed_group_contains_target():
    g = from_cyclic_orders([4, 6])
    d, full = embed_group(g)
    # g is a summand: its primary parts appear among those of the full group.
    assert full.order % g.order == 0
    assert critical_star(d).group == full


def test_embed_group_complete():
    k, full = embed_group_complete(from_cyclic_orders([3]))
    assert validate(k)
    assert critical_complete(k.d).group == full


def test_scale_to_d0_one():
    d = scale_to_d0_one(DhatVector([1, 2, 2, 3, 3, 6, 6]))
    assert d.entries == (3, 6, 6, 9, 9, 18, 18) and d.d0 == 1
    assert group(d.entries).invariant_factors == (3, 3, 3, 18, 18)
    assert scale_to_d0_one(DhatVector([2, 3, 6])).entries == (2, 3, 6)
    assert scale_to_d0_one(DhatVector([1, 1])).entries == (2, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_scale_law_exhaustive(n):
    for d in S[n]:
        scaled = scale_to_d0_one(d)
        assert scaled.d0 == 1


def test_double_structure():
    assert double_structure(DhatVector([2, 3, 6])).entries == (2, 4, 6, 12)
    assert group((2, 4, 6, 12)).invariant_factors == (2, 2)
    assert double_structure(DhatVector([2, 2])).entries == (2, 4, 4)
    # n = 1: no law is claimed; the direct computation gives the trivial group.
    assert group(double_structure(DhatVector([1])).entries) == TRIVIAL


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_double_law_exhaustive(n):
    for d in S[n]:
        assert double_structure(d).n == n + 1


def test_prepend_one():
    d = DhatVector([2, 4, 4])
    assert prepend_one(d).entries == (1, 2, 4, 4)
    assert group(prepend_one(d).entries) == group(d.entries)


def test_extremal_candidates():
    ex = extremal_candidates(6)
    assert ex.order_candidate.entries == (2, 3, 7, 126, 126, 126) and ex.order == 5292
    assert extremal_candidates(7).order == 9784908
    ex4 = extremal_candidates(4)
    assert ex4.cyclic_candidate.entries == (2, 3, 12, 12)
    assert ex4.cyclic_group == from_cyclic_orders([6])
    with pytest.raises(ValueError):
        extremal_candidates(3)


def test_order_upper_bound():
    from math import factorial

    a = sylvester_state(6).a
    for n in range(4, 6):
        bound = factorial(n) * a[n - 3] ** 2 // 2
        assert max(critical_star(d).order for d in S[n]) < bound


def test_order_bound_is_tight_at_n3():
    # The strict bound needs n >= 4: on S_3, (3,3,3) reaches it exactly.
    assert max(critical_star(d).order for d in S[3]) == 3

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from arithstar.abelian import FiniteAbelianGroup, from_cyclic_orders
from arithstar.critical import (
    Method,
    OracleBoundError,
    critical_complete,
    critical_complete_oracle,
    critical_order,
    critical_star,
    critical_star_oracle,
    critical_two_unit_r,
    g_values,
    verify_lemma_primes,
    verify_minor_lemmas,
)
from arithstar.enumeration import EnumSpec, enumerate_structures
from arithstar.structures import DhatVector, InvalidStructureError, dhat_to_structure, laplacian

WORKED = DhatVector([2, 3, 4, 4, 6, 9, 9, 10, 15, 18, 18])
S4 = list(enumerate_structures(EnumSpec(4)))
S5 = list(enumerate_structures(EnumSpec(5)))


def sympy_group(dhat):
    # Independent SNF: sympy's invariant factors of the Laplacian.
    lap = Matrix(laplacian(dhat_to_structure(dhat)).to_rows())
    f = [abs(int(x)) for x in invariant_factors(lap)]
    return from_cyclic_orders(x for x in f if x > 1)


def test_worked_example():
    res = critical_star(WORKED)
    assert res.group.invariant_factors == (6, 6, 6, 18, 18)
    assert res.method is Method.FAST
    assert critical_star_oracle(WORKED).group == res.group


def test_small_cases():
    assert critical_star(DhatVector([2, 2])).group.is_trivial
    assert critical_star(DhatVector([3, 3, 3])).group.invariant_factors == (3,)
    assert critical_star(DhatVector([4, 4, 4, 4])).group.invariant_factors == (4, 4)
    assert critical_star(DhatVector([1])).group.is_trivial


@pytest.mark.parametrize("dhat", S5, ids=str)
def test_fast_matches_sympy_snf(dhat):
    assert critical_star(dhat).group == sympy_group(dhat)


def test_oracle_bound():
    big = DhatVector([13] * 13)
    with pytest.raises(OracleBoundError):
        critical_star_oracle(big)
    assert critical_star(big).group.invariant_factors == (13,) * 11


def test_complete():
    assert critical_complete([1, 2, 5]).group.is_trivial
    assert critical_complete([3, 3, 3, 3]).group.invariant_factors == (4, 4)
    assert critical_complete_oracle([3, 3, 3, 3]).group.invariant_factors == (4, 4)
    with pytest.raises(InvalidStructureError):
        critical_complete([1, 2])


def test_order_formula():
    assert critical_order(WORKED) == 6**3 * 18**2
    for dhat in S5:
        assert critical_order(dhat) == critical_star(dhat).order


def test_two_unit_shortcut():
    res = critical_two_unit_r(DhatVector([2, 3, 12, 12]))
    assert res.method is Method.TWO_UNIT
    assert res.group == critical_star(DhatVector([2, 3, 12, 12])).group
    assert critical_two_unit_r(DhatVector([2, 3, 6])) is None
    for dhat in S5:
        short = critical_two_unit_r(dhat)
        if short is not None:
            assert short.group == critical_star(dhat).group


def test_g_values():
    assert g_values(DhatVector([2, 4, 4])) == {2: 1, 3: 2, 4: 8, 5: 32}


@pytest.mark.parametrize("dhat", S4, ids=str)
def test_minor_lemmas(dhat):
    rep = verify_minor_lemmas(dhat)
    assert rep.ok, rep.mismatches


def test_minor_lemmas_bound():
    with pytest.raises(OracleBoundError):
        verify_minor_lemmas(DhatVector([13] * 13))


def test_lemma_primes():
    rep = verify_lemma_primes(WORKED)
    assert rep.ok
    assert rep.witnesses[3] == (2, (9, 9, 18, 18))
    for dhat in S5:
        assert verify_lemma_primes(dhat).ok


@st.composite
def random_structures(draw):
    # An S_4 structure grown by a few random D_a splits of its largest entry.
    d = draw(st.sampled_from(S4))
    for _ in range(draw(st.integers(0, 4))):
        last = d.entries[-1]
        a = draw(st.sampled_from([a for a in range(1, min(last, 40) + 1) if last % a == 0]))
        d = DhatVector(d.entries[:-1] + (last + a, last * (last + a) // a))
    return d


@settings(max_examples=60, deadline=None)
@given(random_structures())
def test_fast_matches_oracle_random(dhat):
    if dhat.n <= 9:
        assert critical_star(dhat).group == critical_star_oracle(dhat).group
    assert critical_order(dhat) == critical_star(dhat).order
    assert critical_star(dhat).group.rank <= dhat.n - 2


def test_result_json():
    rec = critical_star(WORKED).to_json()
    assert rec == {"group": ["6", "6", "6", "18", "18"], "method": "fast-formula", "order": "69984"}
    assert isinstance(critical_star(WORKED).group, FiniteAbelianGroup)

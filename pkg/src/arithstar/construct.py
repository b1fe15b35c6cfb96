"""Explicit constructions of star structures with prescribed critical groups.

Each construction returns a :class:`DhatVector` and, where a group law is
known, checks that law against the fast critical-group computation and
raises :class:`LawViolation` if they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Mapping, Sequence

from .abelian import (
    FiniteAbelianGroup,
    direct_sum,
    from_cyclic_orders,
    to_primary,
)
from .critical import critical_star
from .numtheory import isprime
from .structures import ArithmeticalStructure, DhatVector, dhat_to_structure, star_clique

__all__ = [
    "LawViolation",
    "SylvesterState",
    "sylvester_state",
    "sylvester_trivial",
    "d_a_expand",
    "d_a_group_law",
    "iterate_d_a",
    "sylvester_prime_cyclic",
    "concatenate",
    "embed_group",
    "embed_group_complete",
    "scale_to_d0_one",
    "double_structure",
    "prepend_one",
    "ExtremalCandidates",
    "extremal_candidates",
]


class LawViolation(AssertionError):
    """A construction's predicted critical group disagreed with the computed one."""


def _check(predicted: FiniteAbelianGroup, dhat: DhatVector, what: str) -> FiniteAbelianGroup:
    computed = critical_star(dhat).group
    if computed != predicted:
        raise LawViolation(f"{what}: predicted {predicted}, computed {computed} for {dhat!r}")
    return computed


@dataclass(frozen=True)
class SylvesterState:
    """Sylvester terms s_1 = 2, s_{k+1} = s_k^2 - s_k + 1, and a_k = s_k - 1."""

    s: tuple[int, ...]
    a: tuple[int, ...]


def sylvester_state(k: int) -> SylvesterState:
    s = [2]
    a = [1]
    while len(s) < k:
        s.append(s[-1] ** 2 - s[-1] + 1)
        a.append(a[-1] ** 2 + a[-1])
    return SylvesterState(tuple(s[:k]), tuple(a[:k]))


def sylvester_trivial(n: int) -> DhatVector:
    """(s_1, ..., s_{n-1}, s_1 * ... * s_{n-1}): d0 = 1, trivial group."""
    if n < 2:
        raise ValueError("needs n >= 2")
    s = sylvester_state(n - 1).s
    dhat = DhatVector(s + (prod(s),))
    _check(FiniteAbelianGroup(), dhat, "sylvester_trivial")
    return dhat


def d_a_expand(dhat: DhatVector, a: int) -> DhatVector:
    """Split the largest entry d_n into d_n + a and d_n (d_n + a) / a."""
    dn = dhat.entries[-1]
    if a < 1 or dn % a:
        raise ValueError(f"{a} does not divide the largest entry {dn}")
    return DhatVector(dhat.entries[:-1] + (dn + a, dn * (dn + a) // a))


def d_a_group_law(dhat: DhatVector, a: int) -> FiniteAbelianGroup | None:
    """Predicted group K + Z/a of the expansion, checked against the fast path.

    Returns None when gcd(r0/d_n, d_n/a + 1) != 1; the expansion is still a
    valid structure in that case, but no law is claimed.
    """
    dn = dhat.entries[-1]
    if a < 1 or dn % a:
        raise ValueError(f"{a} does not divide the largest entry {dn}")
    r0 = dhat.r0
    if gcd(r0 // dn, dn // a + 1) != 1:
        return None
    expanded = d_a_expand(dhat, a)
    predicted = direct_sum(critical_star(dhat).group, from_cyclic_orders([a]))
    _check(predicted, expanded, f"D_{a} expansion")
    if r0 == dn and expanded.r0 != dn * (dn + a) // a:
        raise LawViolation(f"lcm of D_{a} expansion is {expanded.r0}")
    return predicted


def iterate_d_a(dhat: DhatVector, steps: Sequence[int]) -> DhatVector:
    """Apply D_a for each a in steps, in order."""
    for a in steps:
        dhat = d_a_expand(dhat, a)
    return dhat


def sylvester_prime_cyclic(
    c: int, witness: Mapping[int, int], length: int | None = None
) -> DhatVector:
    """Structure with critical group Z/c for c a product of distinct Sylvester primes.

    ``witness`` maps each prime p of c to an index m with p | s_m. The base
    is the trivial Sylvester structure of the given length, by default
    max(m) + 1; any longer base also works, since its last entry is then
    divisible by every s_m.
    """
    if c < 1 or prod(witness) != c:
        raise ValueError(f"witness primes {sorted(witness)} do not multiply to {c}")
    top = max(witness.values(), default=0)
    s = sylvester_state(max(top, 1)).s
    for p, m in witness.items():
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1 or s[m - 1] % p:
            raise ValueError(f"{p} does not divide s_{m}")
    n = top + 1 if length is None else length
    if n < top + 1:
        raise ValueError(f"base length {n} is shorter than max index + 1 = {top + 1}")
    base = sylvester_trivial(max(n, 2))
    expanded = d_a_expand(base, c)
    if d_a_group_law(base, c) != from_cyclic_orders([c]):
        raise LawViolation(f"D_{c} of the trivial Sylvester structure is not Z/{c}")
    return expanded


def concatenate(d1: DhatVector, d2: DhatVector) -> DhatVector:
    """Union of leaf multisets; checks K = K' + K'' + (Z/gcd(r0', r0''))^2."""
    joined = DhatVector(d1.entries + d2.entries)
    g = gcd(d1.r0, d2.r0)
    predicted = from_cyclic_orders(
        critical_star(d1).group.invariant_factors
        + critical_star(d2).group.invariant_factors
        + (g, g)
    )
    _check(predicted, joined, "concatenation")
    return joined


def embed_group(
    g: FiniteAbelianGroup | Sequence[int],
) -> tuple[DhatVector, FiniteAbelianGroup]:
    """A star structure whose critical group has ``g`` as a direct summand.

    ``g`` is either a group, used through its primary decomposition, or an
    explicit list of cyclic summand orders, used as given. With r0 the lcm
    of the summands, the leaves are the summands plus l + 2 copies of r0,
    and the critical group is g + (Z/r0)^l.
    """
    if isinstance(g, FiniteAbelianGroup):
        summands = to_primary(g).prime_powers()
    else:
        summands = [int(x) for x in g if int(x) > 1]
    if not summands:
        raise ValueError("embed_group needs a nontrivial group")
    r0 = lcm(*summands)
    weight = sum(r0 // x for x in summands)
    k = -(-(2 + weight) // r0)
    ell = k * r0 - weight - 2
    dhat = DhatVector(summands + [r0] * (ell + 2))
    full = from_cyclic_orders(summands + [r0] * ell)
    _check(full, dhat, "embedding")
    return dhat, full


def embed_group_complete(
    g: FiniteAbelianGroup | Sequence[int],
) -> tuple[ArithmeticalStructure, FiniteAbelianGroup]:
    """Complete-graph version: embed, scale to d0 = 1, then star-clique."""
    dhat, _ = embed_group(g)
    scaled = scale_to_d0_one(dhat)
    return star_clique(dhat_to_structure(scaled)), critical_star(scaled).group


def _padded(group: FiniteAbelianGroup, width: int) -> list[int]:
    f = list(group.invariant_factors)
    return [1] * (width - len(f)) + f


def scale_to_d0_one(dhat: DhatVector) -> DhatVector:
    """Multiply every leaf by d0; invariant factors scale by d0 as well."""
    d0 = dhat.d0
    scaled = DhatVector([d0 * x for x in dhat.entries])
    width = max(dhat.n - 2, 0)
    old = _padded(critical_star(dhat).group, width)
    new = _padded(critical_star(scaled).group, width)
    if new != [d0 * x for x in old]:
        raise LawViolation(f"scaling {dhat!r}: factors {old} -> {new}, expected x{d0}")
    return scaled


def double_structure(dhat: DhatVector) -> DhatVector:
    """(d0 + 1, d_1 (d0 + 1), ..., d_n (d0 + 1)) on S_{n+1}.

    For n >= 2 the critical group becomes Z/(d0+1) + sum of Z/(alpha_k (d0+1))
    over the n - 2 padded invariant factors alpha_k; this is checked. For
    n = 1 no law is asserted.
    """
    c = dhat.d0 + 1
    doubled = DhatVector([c] + [x * c for x in dhat.entries])
    if dhat.n >= 2:
        alphas = _padded(critical_star(dhat).group, dhat.n - 2)
        _check(from_cyclic_orders([c] + [x * c for x in alphas]), doubled, "doubling")
    return doubled


def prepend_one(dhat: DhatVector) -> DhatVector:
    """(1, d_1, ..., d_n): same critical group on one more leaf."""
    return DhatVector((1,) + dhat.entries)


@dataclass(frozen=True)
class ExtremalCandidates:
    order_candidate: DhatVector
    order: int
    cyclic_candidate: DhatVector
    cyclic_group: FiniteAbelianGroup


def extremal_candidates(n: int) -> ExtremalCandidates:
    """Conjectured largest-order and largest-cyclic structures on S_n.

    Order: (a_1+1, ..., a_{n-3}+1, 3a_{n-2}, 3a_{n-2}, 3a_{n-2}) with order
    3 a_{n-2}^2. Cyclic: (a_1+1, ..., a_{n-2}+1, 2a_{n-1}, 2a_{n-1}) with
    group Z/a_{n-1}.
    """
    if n < 4:
        raise ValueError("extremal candidates need n >= 4")
    a = sylvester_state(n - 1).a
    big = 3 * a[n - 3]
    order_dhat = DhatVector([x + 1 for x in a[: n - 3]] + [big] * 3)
    order = 3 * a[n - 3] ** 2
    got = critical_star(order_dhat).group.order
    if got != order:
        raise LawViolation(f"order candidate has order {got}, expected {order}")
    cyc = 2 * a[n - 2]
    cyclic_dhat = DhatVector([x + 1 for x in a[: n - 2]] + [cyc, cyc])
    cyclic_group = _check(from_cyclic_orders([a[n - 2]]), cyclic_dhat, "cyclic candidate")
    return ExtremalCandidates(order_dhat, order, cyclic_dhat, cyclic_group)

"""Critical groups of star and complete-graph structures.

Two independent routes are provided. The fast route reads the group off
the leaf labels: the sum of Z/d_i over all leaves equals the critical group
plus two copies of Z/r0, so cancelling those copies prime by prime gives
the answer. The oracle route takes the Smith normal form of the Laplacian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm, prod
from typing import Sequence

from .abelian import TRIVIAL, FiniteAbelianGroup, cancel_square, from_cyclic_orders
from .exact_linalg import IntMatrix, all_minors_gcds, snf
from .numtheory import factorint
from .structures import (
    DhatVector,
    complete_structure,
    dhat_to_structure,
    laplacian,
)

__all__ = [
    "Method",
    "CriticalGroupResult",
    "OracleBoundError",
    "ORACLE_BOUND",
    "critical_star",
    "critical_complete",
    "critical_star_oracle",
    "critical_complete_oracle",
    "critical_order",
    "critical_two_unit_r",
    "b_matrix",
    "c_matrix",
    "g_values",
    "verify_minor_lemmas",
    "verify_lemma_primes",
    "MinorLemmaReport",
    "PrimeLemmaReport",
]

ORACLE_BOUND = 12


class OracleBoundError(ValueError):
    pass


class Method(str, Enum):
    FAST = "fast-formula"
    ORACLE = "snf-oracle"
    TWO_UNIT = "two-unit-r-shortcut"


@dataclass(frozen=True)
class CriticalGroupResult:
    group: FiniteAbelianGroup
    method: Method

    @property
    def order(self) -> int:
        return self.group.order

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "method": self.method.value,
            "order": str(self.order),
        }


def critical_star(dhat: DhatVector) -> CriticalGroupResult:
    if dhat.n == 1:
        return CriticalGroupResult(TRIVIAL, Method.FAST)
    return CriticalGroupResult(cancel_square(dhat.entries, dhat.r0), Method.FAST)


def critical_complete(d: Sequence[int]) -> CriticalGroupResult:
    """Critical group of the structure with labels d on K_n.

    Raises InvalidStructureError when d is not a structure on K_n.
    """
    s = complete_structure(d)
    shifted = [x + 1 for x in s.d]
    if len(shifted) == 1:
        return CriticalGroupResult(TRIVIAL, Method.FAST)
    return CriticalGroupResult(cancel_square(shifted, lcm(*shifted)), Method.FAST)


def _torsion_from_snf(m: IntMatrix) -> FiniteAbelianGroup:
    res = snf(m)
    zeros = m.rows - res.rank
    if zeros != 1:
        raise ArithmeticError(f"expected a one-dimensional kernel, got corank {zeros}")
    return FiniteAbelianGroup(tuple(a for a in res.invariant_factors if a > 1))


def critical_star_oracle(dhat: DhatVector, bound: int = ORACLE_BOUND) -> CriticalGroupResult:
    if dhat.n > bound:
        raise OracleBoundError(f"oracle limited to n <= {bound}, got n = {dhat.n}")
    return CriticalGroupResult(
        _torsion_from_snf(laplacian(dhat_to_structure(dhat))), Method.ORACLE
    )


def critical_complete_oracle(d: Sequence[int], bound: int = ORACLE_BOUND) -> CriticalGroupResult:
    s = complete_structure(d)
    if s.shape.n > bound:
        raise OracleBoundError(f"oracle limited to n <= {bound}, got n = {s.shape.n}")
    return CriticalGroupResult(_torsion_from_snf(laplacian(s)), Method.ORACLE)


def critical_order(dhat: DhatVector) -> int:
    """Group order r0^(n-2) / prod(r_i) from the r-labels alone."""
    value = Fraction(dhat.r0) ** (dhat.n - 2) / prod(dhat.r)
    if value.denominator != 1:
        raise ArithmeticError(f"order formula gave a non-integer for {dhat}: {value}")
    return value.numerator


def critical_two_unit_r(dhat: DhatVector) -> CriticalGroupResult | None:
    """Shortcut when two leaves carry r = 1, i.e. two entries equal r0.

    Returns None when fewer than two entries equal r0.
    """
    r0 = dhat.r0
    hits = [i for i, x in enumerate(dhat.entries) if x == r0]
    if len(hits) < 2:
        return None
    i, j = hits[:2]
    rest = [x for k, x in enumerate(dhat.entries) if k not in (i, j)]
    return CriticalGroupResult(from_cyclic_orders(rest), Method.TWO_UNIT)


def b_matrix(dhat: DhatVector) -> IntMatrix:
    """Star Laplacian (center last) with two extra diagonal entries r0."""
    return laplacian(dhat_to_structure(dhat)).direct_sum(
        IntMatrix.diagonal([dhat.r0, dhat.r0])
    )


def c_matrix(dhat: DhatVector) -> IntMatrix:
    return IntMatrix.diagonal(list(dhat.entries) + [1, 1, 0])


def g_values(dhat: DhatVector) -> dict[int, int]:
    """k -> gcd of all products of k-2 leaf labels, for k = 2..n+2.

    Brute force over index subsets, kept independent of the fast path.
    """
    out = {}
    for k in range(2, dhat.n + 3):
        g = 0
        for combo in combinations(dhat.entries, k - 2):
            g = gcd(g, prod(combo))
        out[k] = g
    return out


@dataclass
class MinorLemmaReport:
    dhat: DhatVector
    g: dict[int, int]
    d_b: tuple[int, ...]
    d_c: tuple[int, ...]
    snf_b_head: tuple[int, ...]
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_minor_lemmas(dhat: DhatVector, bound: int = ORACLE_BOUND) -> MinorLemmaReport:
    """Compare gcd-of-minors of B and C with the leaf-product gcds G_k."""
    if dhat.n > bound:
        raise OracleBoundError(f"oracle limited to n <= {bound}, got n = {dhat.n}")
    n = dhat.n
    bm, cm = b_matrix(dhat), c_matrix(dhat)
    d_b = all_minors_gcds(bm)
    d_c = all_minors_gcds(cm)
    g = g_values(dhat)
    head = snf(bm).diagonal[:2]
    report = MinorLemmaReport(dhat, g, d_b, d_c, head)
    bad = report.mismatches
    for k in (0, 1):
        if d_b[k] != 1 or d_c[k] != 1:
            bad.append(f"D_{k}: B={d_b[k]} C={d_c[k]}, expected 1")
    for k in range(2, n + 3):
        if not d_b[k] == d_c[k] == g[k]:
            bad.append(f"D_{k}: B={d_b[k]} C={d_c[k]} G={g[k]}")
    if d_b[n + 3] != 0 or d_c[n + 3] != 0:
        bad.append(f"D_{n + 3}: B={d_b[n + 3]} C={d_c[n + 3]}, expected 0")
    if n >= 2 and head != (1, 1):
        bad.append(f"leading invariant factors of B are {head}, expected (1, 1)")
    return report


@dataclass
class PrimeLemmaReport:
    dhat: DhatVector
    # prime -> (exponent in r0, entries divisible by the full prime power)
    witnesses: dict[int, tuple[int, tuple[int, ...]]]
    failures: list[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_lemma_primes(dhat: DhatVector) -> PrimeLemmaReport:
    """Each maximal prime power of r0 must divide at least two leaf labels."""
    if dhat.n < 2:
        raise ValueError("needs n >= 2")
    witnesses = {}
    failures = []
    for p, a in factorint(dhat.r0).items():
        q = p**a
        hits = tuple(x for x in dhat.entries if x % q == 0)
        witnesses[p] = (a, hits)
        if len(hits) < 2:
            failures.append(p)
    return PrimeLemmaReport(dhat, witnesses, failures)

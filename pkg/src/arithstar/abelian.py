"""Finite abelian groups in invariant-factor form.

A group is stored as its nondecreasing divisibility chain of invariant
factors, all at least 2; the trivial group is the empty chain. Two groups
are isomorphic exactly when their chains are equal, and ordering is
lexicographic on the chain, so sets of groups sort deterministically.

Canonicalization and the square-cancellation step work over a coprime
base rather than over primes, so no large integer is ever factored.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping, Sequence

from .numtheory import coprime_base, factorint, isprime, valuation

__all__ = [
    "FiniteAbelianGroup",
    "PrimaryDecomposition",
    "InvalidSpectrumError",
    "TRIVIAL",
    "from_cyclic_orders",
    "direct_sum",
    "cancel_square",
    "to_primary",
    "from_primary",
    "parse_group",
]


class InvalidSpectrumError(ValueError):
    """Raised when cyclic orders cannot come from a star structure."""


@dataclass(frozen=True, order=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = self.invariant_factors
        if any(x < 2 for x in f):
            raise ValueError(f"invariant factors must be >= 2: {f}")
        if any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not a divisibility chain: {f}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{a}" for a in self.invariant_factors)

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({self.invariant_factors})"

    def to_json(self) -> list[str]:
        return [str(a) for a in self.invariant_factors]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "FiniteAbelianGroup":
        return from_cyclic_orders(int(x) for x in data)

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return direct_sum(self, other)


TRIVIAL = FiniteAbelianGroup()


def _chain_from_exponents(exps: Mapping[int, list[int]]) -> tuple[int, ...]:
    """Invariant factors from base element -> exponent lists.

    Exponent lists are aligned at their largest entries: the j-th largest
    invariant factor collects the j-th largest exponent of every base
    element.
    """
    width = max((len(v) for v in exps.values()), default=0)
    factors = [1] * width
    for b, es in exps.items():
        es = sorted(es, reverse=True)
        for j, e in enumerate(es):
            factors[j] *= b**e
    return tuple(x for x in reversed(factors) if x > 1)


def _exponent_table(orders: Sequence[int], base: Sequence[int]) -> dict[int, list[int]]:
    table: dict[int, list[int]] = {}
    for b in base:
        es = [valuation(x, b) for x in orders]
        table[b] = [e for e in es if e]
    return table


def from_cyclic_orders(orders: Iterable[int]) -> FiniteAbelianGroup:
    """Canonical form of the direct sum of Z/m for m in orders."""
    orders = [int(m) for m in orders]
    if any(m < 1 for m in orders):
        raise ValueError(f"cyclic orders must be positive: {orders}")
    orders = [m for m in orders if m > 1]
    if not orders:
        return TRIVIAL
    base = coprime_base(orders)
    return FiniteAbelianGroup(_chain_from_exponents(_exponent_table(orders, base)))


def direct_sum(g: FiniteAbelianGroup, h: FiniteAbelianGroup) -> FiniteAbelianGroup:
    return from_cyclic_orders(g.invariant_factors + h.invariant_factors)


def cancel_square(total_orders: Sequence[int], r0: int) -> FiniteAbelianGroup:
    """Solve K from K + (Z/r0)^2 = sum of Z/m over total_orders.

    For every prime dividing r0 the two largest exponents among the orders
    must both equal the exponent in r0, and no order may carry a prime
    power beyond r0; this is checked, and the two top exponents are then
    removed prime by prime.
    """
    orders = [int(m) for m in total_orders]
    if r0 < 1 or any(m < 1 for m in orders):
        raise ValueError("orders and r0 must be positive")
    base = coprime_base(orders + [r0])
    exps: dict[int, list[int]] = {}
    for b in base:
        es = sorted((valuation(x, b) for x in orders), reverse=True)
        top = valuation(r0, b)
        if not es or es[0] != top or (top and (len(es) < 2 or es[1] != top)):
            raise InvalidSpectrumError(
                "not a valid star structure spectrum: "
                f"orders {tuple(orders)} with r0={r0} (base factor {b})"
            )
        if top:
            es = es[2:]
        exps[b] = [e for e in es if e]
    return FiniteAbelianGroup(_chain_from_exponents(exps))


@dataclass(frozen=True)
class PrimaryDecomposition:
    """prime -> nondecreasing exponents, one Z/p^e summand per exponent."""

    components: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        for p, es in self.components.items():
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            if any(e < 1 for e in es) or list(es) != sorted(es):
                raise ValueError(f"bad exponents for {p}: {es}")

    def prime_powers(self) -> list[int]:
        return [p**e for p in sorted(self.components) for e in self.components[p]]


def to_primary(g: FiniteAbelianGroup) -> PrimaryDecomposition:
    comps: dict[int, list[int]] = defaultdict(list)
    for a in g.invariant_factors:
        for p, e in factorint(a).items():
            comps[p].append(e)
    return PrimaryDecomposition({p: tuple(sorted(es)) for p, es in sorted(comps.items())})


def from_primary(pd: PrimaryDecomposition) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(
        _chain_from_exponents({p: list(es) for p, es in pd.components.items()})
    )


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse "Z/a x Z/b", "trivial", a JSON array, or "a,b,c" orders."""
    text = text.strip()
    if text in ("trivial", "0", "1", ""):
        return TRIVIAL
    if text.startswith("["):
        return FiniteAbelianGroup.from_json(json.loads(text))
    if "Z/" in text:
        parts = [p.strip() for p in text.split("x")]
        return from_cyclic_orders(int(p.removeprefix("Z/")) for p in parts)
    return from_cyclic_orders(int(p) for p in text.replace("(", "").replace(")", "").split(","))

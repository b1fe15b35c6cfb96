"""Exhaustive enumeration of star structures.

Structures on S_n correspond to sorted tuples d_1 <= ... <= d_n whose
reciprocals sum to an integer d0. The search keeps the remaining target
as an exact reduced fraction p/q. With m slots left the next entry d must
satisfy q/p < d <= m*q/p (strictly above q/p while further slots remain).
The last two slots are closed in one step: 1/x + 1/y = p/q is equivalent
to (p*x - q)(p*y - q) = q**2, so x runs over divisors of q**2.

Output is lexicographic per d0 and merged across d0 values, so the
overall stream is lexicographic too.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import islice
from math import gcd
from typing import Iterator

from .numtheory import divisors_of_square_upto, factorint
from .structures import DhatVector

__all__ = [
    "EnumSpec",
    "enumerate_structures",
    "enumerate_tuples",
    "count_structures",
    "partition_work",
]

# Below this many candidates for the penultimate slot, trial is cheaper
# than factoring q.
_DIRECT_PAIR_LIMIT = 48


@dataclass(frozen=True)
class EnumSpec:
    n: int
    d0_filter: int | None = None
    max_results: int | None = None
    prefix: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.d0_filter is not None and not 1 <= self.d0_filter <= self.n:
            raise ValueError(f"d0 filter must lie in 1..{self.n}")
        if len(self.prefix) > self.n:
            raise ValueError("prefix longer than n")
        if any(a > b for a, b in zip(self.prefix, self.prefix[1:])):
            raise ValueError("prefix must be nondecreasing")
        if any(x < 1 for x in self.prefix):
            raise ValueError("prefix entries must be positive")


def _close_pair(p: int, q: int, lo: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # All lo <= x <= y with 1/x + 1/y = p/q, ascending in x.
    xmin = max(lo, q // p + 1)
    xmax = (2 * q) // p
    if xmin > xmax:
        return
    if xmax - xmin < _DIRECT_PAIR_LIMIT:
        for x in range(xmin, xmax + 1):
            num = p * x - q
            den = q * x
            if den % num == 0:
                y = den // num
                if y >= x:
                    yield acc + (x, y)
        return
    umin = p * xmin - q
    for u in divisors_of_square_upto(factorint(q), q):
        if u < umin or (u + q) % p:
            continue
        x = (u + q) // p
        v = q * q // u
        if (v + q) % p:
            continue
        yield acc + (x, (v + q) // p)


def _search(p: int, q: int, m: int, lo: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # Sorted completions of acc by m entries >= lo with reciprocals summing to p/q.
    if m == 1:
        if q % p == 0 and q // p >= lo:
            yield acc + (q // p,)
        return
    if m == 2:
        yield from _close_pair(p, q, lo, acc)
        return
    start = max(lo, q // p + 1)
    stop = (m * q) // p
    for d in range(start, stop + 1):
        np_ = p * d - q
        nq = q * d
        g = gcd(np_, nq)
        yield from _search(np_ // g, nq // g, m - 1, d, acc + (d,))


def _remaining(prefix: tuple[int, ...], target: int) -> tuple[int, int] | None:
    rest = Fraction(target) - sum((Fraction(1, x) for x in prefix), Fraction(0))
    if rest < 0:
        return None
    return rest.numerator, rest.denominator


def _filtered(n: int, d0: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    rem = _remaining(prefix, d0)
    if rem is None:
        return
    p, q = rem
    m = n - len(prefix)
    if m == 0:
        if p == 0:
            yield prefix
        return
    if p == 0:
        return
    lo = prefix[-1] if prefix else 1
    yield from _search(p, q, m, lo, prefix)


def _target_range(spec: EnumSpec) -> range:
    if spec.d0_filter is not None:
        return range(spec.d0_filter, spec.d0_filter + 1)
    return range(1, spec.n + 1)


def _tagged(spec: EnumSpec, d0: int) -> Iterator[tuple[tuple[int, ...], int]]:
    for t in _filtered(spec.n, d0, spec.prefix):
        yield t, d0


def enumerate_tuples(spec: EnumSpec) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (sorted entries, d0) pairs in lexicographic order of entries."""
    streams = [_tagged(spec, d0) for d0 in _target_range(spec)]
    merged = streams[0] if len(streams) == 1 else heapq.merge(*streams)
    if spec.max_results is not None:
        merged = islice(merged, spec.max_results)
    return merged


def enumerate_structures(spec: EnumSpec) -> Iterator[DhatVector]:
    for entries, d0 in enumerate_tuples(spec):
        yield DhatVector._trusted(entries, d0)


def count_structures(spec: EnumSpec) -> int:
    return sum(1 for _ in enumerate_tuples(spec))


def _prefixes(spec: EnumSpec, length: int) -> set[tuple[int, ...]]:
    # Every bound-feasible extension of spec.prefix to the given length.
    found: set[tuple[int, ...]] = set()
    for d0 in _target_range(spec):
        rem = _remaining(spec.prefix, d0)
        if rem is None:
            continue
        stack = [(rem[0], rem[1], spec.prefix)]
        while stack:
            p, q, acc = stack.pop()
            if len(acc) == length:
                found.add(acc)
                continue
            if p == 0:
                continue
            m = spec.n - len(acc)
            lo = acc[-1] if acc else 1
            for d in range(max(lo, q // p + (1 if m > 1 else 0)), (m * q) // p + 1):
                np_ = p * d - q
                nq = q * d
                g = gcd(np_, nq)
                stack.append((np_ // g, nq // g, acc + (d,)))
    return found


def partition_work(spec: EnumSpec, depth: int) -> list[EnumSpec]:
    """Split spec into children with longer fixed prefixes.

    The children's streams are disjoint and their union is the parent's
    stream; they are returned in prefix order. max_results is not carried
    over to the children.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    length = min(spec.n, len(spec.prefix) + depth)
    return [
        replace(spec, prefix=pre, max_results=None) for pre in sorted(_prefixes(spec, length))
    ]

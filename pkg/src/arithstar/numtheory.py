"""Small integer helpers shared by the group and enumeration code.

The group computations never need a full prime factorization: a coprime
base of the integers involved carries exactly the same exponent data.
Full factorization (via sympy) is used only where primes themselves are
part of the answer, i.e. primary decompositions and prime-by-prime checks.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm
from typing import Iterable

from sympy import factorint as _sympy_factorint
from sympy import isprime as _sympy_isprime

__all__ = [
    "coprime_base",
    "valuation",
    "factorint",
    "isprime",
    "lcm_all",
    "divisors_of_square_upto",
]


def coprime_base(numbers: Iterable[int]) -> list[int]:
    """Return a sorted list of pairwise coprime integers > 1 such that every
    input is a product of powers of its members.

    Repeatedly splits any base element that shares a factor with an
    incoming value. Each split strictly decreases the product of pending
    values, so the loop terminates.
    """
    base: list[int] = []
    for x in numbers:
        pending = [abs(x)]
        while pending:
            y = pending.pop()
            if y <= 1:
                continue
            for i, b in enumerate(base):
                g = gcd(b, y)
                if g > 1:
                    base.pop(i)
                    pending.extend((g, b // g, y // g))
                    break
            else:
                base.append(y)
    base.sort()
    return base


def valuation(x: int, b: int) -> int:
    """Largest e with b**e dividing x (x != 0, b > 1)."""
    e = 0
    while x % b == 0:
        x //= b
        e += 1
    return e


@lru_cache(maxsize=65536)
def factorint(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return {int(p): int(e) for p, e in _sympy_factorint(n).items()}


def isprime(n: int) -> bool:
    return bool(_sympy_isprime(n))


def lcm_all(values: Iterable[int]) -> int:
    return lcm(*values)


def divisors_of_square_upto(factors: dict[int, int], bound: int) -> list[int]:
    """Sorted divisors u of N**2 with u <= bound, where N = prod(p**e).

    Builds the divisor list prime by prime, discarding partial products
    above the bound as soon as they appear.
    """
    divs = [1]
    for p, e in factors.items():
        grown = []
        for d in divs:
            v = d
            for _ in range(2 * e + 1):
                if v > bound:
                    break
                grown.append(v)
                v *= p
        divs = grown
    divs.sort()
    return divs

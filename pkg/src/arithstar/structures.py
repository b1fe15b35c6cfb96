"""Arithmetical structures on star graphs and complete graphs.

A structure on the star S_n is determined by its leaf labels, kept here as
a sorted :class:`DhatVector`; the center label d0 is the integer sum of
reciprocals, r0 is the lcm of the leaves and each leaf r is r0 / d_i.

Vertex order for stars is leaves first (nondecreasing d), center last.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from .exact_linalg import IntMatrix

__all__ = [
    "GraphKind",
    "GraphShape",
    "DhatVector",
    "ArithmeticalStructure",
    "ValidationReport",
    "InvalidStructureError",
    "dhat_to_structure",
    "complete_structure",
    "validate",
    "laplacian",
    "clique_star",
    "star_clique",
    "parse_int_list",
]


class InvalidStructureError(ValueError):
    pass


class GraphKind(str, Enum):
    STAR = "star"
    COMPLETE = "complete"


@dataclass(frozen=True)
class GraphShape:
    kind: GraphKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", GraphKind(self.kind))
        if self.n < 1:
            raise ValueError("graph needs n >= 1")

    @property
    def num_vertices(self) -> int:
        return self.n + 1 if self.kind is GraphKind.STAR else self.n

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.kind is GraphKind.COMPLETE:
            return True
        center = self.n
        return u == center or v == center


class DhatVector:
    """Sorted leaf labels (d_1, ..., d_n) whose reciprocals sum to an integer."""

    def __init__(self, entries: Sequence[int]):
        entries = tuple(sorted(int(x) for x in entries))
        if not entries:
            raise InvalidStructureError("a star structure needs at least one leaf")
        if entries[0] < 1:
            raise InvalidStructureError(f"leaf labels must be positive: {entries}")
        total = sum((Fraction(1, x) for x in entries), Fraction(0))
        if total.denominator != 1:
            raise InvalidStructureError(
                f"reciprocals of {entries} do not sum to an integer: sum = {total}"
            )
        self.entries = entries
        self._d0 = total.numerator

    @classmethod
    def _trusted(cls, entries: tuple[int, ...], d0: int) -> "DhatVector":
        # Enumeration already knows the sorted entries and their sum.
        obj = cls.__new__(cls)
        obj.entries = entries
        obj._d0 = d0
        return obj

    @property
    def d0(self) -> int:
        return self._d0

    @cached_property
    def r0(self) -> int:
        return lcm(*self.entries)

    @property
    def r(self) -> tuple[int, ...]:
        r0 = self.r0
        return tuple(r0 // x for x in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, DhatVector):
            return self.entries == other.entries
        return NotImplemented

    def __lt__(self, other: "DhatVector") -> bool:
        return self.entries < other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"DhatVector({self.entries})"

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))

    def to_json(self) -> dict:
        return dhat_to_structure(self).to_json()


@dataclass(frozen=True)
class ArithmeticalStructure:
    shape: GraphShape
    d: tuple[int, ...]
    r: tuple[int, ...]

    @property
    def d0(self) -> int | None:
        return self.d[-1] if self.shape.kind is GraphKind.STAR else None

    @property
    def r0(self) -> int | None:
        return self.r[-1] if self.shape.kind is GraphKind.STAR else None

    def to_json(self) -> dict:
        rec = {
            "shape": self.shape.kind.value,
            "n": self.shape.n,
            "d": [str(x) for x in self.d],
            "r": [str(x) for x in self.r],
        }
        if self.shape.kind is GraphKind.STAR:
            rec["d0"] = str(self.d0)
            rec["r0"] = str(self.r0)
        return rec

    @classmethod
    def from_json(cls, rec: dict) -> "ArithmeticalStructure":
        shape = GraphShape(GraphKind(rec["shape"]), int(rec["n"]))
        return cls(shape, tuple(int(x) for x in rec["d"]), tuple(int(x) for x in rec["r"]))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    vertex: int | None = None
    lhs: int | None = None
    rhs: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def dhat_to_structure(dhat: DhatVector) -> ArithmeticalStructure:
    r0 = dhat.r0
    d = dhat.entries + (dhat.d0,)
    r = tuple(r0 // x for x in dhat.entries) + (r0,)
    return ArithmeticalStructure(GraphShape(GraphKind.STAR, dhat.n), d, r)


def complete_structure(d: Sequence[int]) -> ArithmeticalStructure:
    """The structure on K_n with labels d; r is forced by r_i (d_i + 1) = sum r."""
    d = tuple(int(x) for x in d)
    if not d or min(d) < 1:
        raise InvalidStructureError(f"complete-graph labels must be positive: {d}")
    total = sum((Fraction(1, x + 1) for x in d), Fraction(0))
    if total != 1:
        raise InvalidStructureError(
            f"{d} is not a structure on K_{len(d)}: sum of 1/(d_i+1) = {total}, expected 1"
        )
    big = lcm(*(x + 1 for x in d))
    return ArithmeticalStructure(
        GraphShape(GraphKind.COMPLETE, len(d)), d, tuple(big // (x + 1) for x in d)
    )


def validate(s: ArithmeticalStructure) -> ValidationReport:
    """Check r_v d_v = sum of r over neighbours at every vertex, and gcd(r) = 1."""
    shape = s.shape
    nv = shape.num_vertices
    if len(s.d) != nv or len(s.r) != nv:
        return ValidationReport(False, message=f"expected {nv} labels per vertex")
    if min(s.r) < 1:
        return ValidationReport(False, message="r labels must be positive")
    for v in range(nv):
        lhs = s.r[v] * s.d[v]
        rhs = sum(s.r[u] for u in range(nv) if shape.adjacent(u, v))
        if lhs != rhs:
            return ValidationReport(
                False, v, lhs, rhs, f"vertex {v}: r*d = {lhs} but neighbour sum = {rhs}"
            )
    g = 0
    for x in s.r:
        g = gcd(g, x)
    if g != 1:
        return ValidationReport(False, message=f"gcd(r) = {g} != 1")
    return ValidationReport(True)


def laplacian(s: ArithmeticalStructure) -> IntMatrix:
    """diag(d) - A for the structure's graph, in the module's vertex order."""
    shape = s.shape
    nv = shape.num_vertices
    return IntMatrix.from_rows(
        [
            [s.d[i] if i == j else (-1 if shape.adjacent(i, j) else 0) for j in range(nv)]
            for i in range(nv)
        ]
    )


def clique_star(s: ArithmeticalStructure) -> ArithmeticalStructure:
    if s.shape.kind is not GraphKind.COMPLETE:
        raise ValueError("clique_star needs a structure on a complete graph")
    d = tuple(x + 1 for x in s.d) + (1,)
    r = tuple(s.r) + (sum(s.r),)
    return ArithmeticalStructure(GraphShape(GraphKind.STAR, s.shape.n), d, r)


def star_clique(s: ArithmeticalStructure) -> ArithmeticalStructure:
    if s.shape.kind is not GraphKind.STAR:
        raise ValueError("star_clique needs a structure on a star graph")
    if s.d[-1] != 1:
        raise ValueError(f"star_clique needs center label 1, got {s.d[-1]}")
    leaves = s.d[:-1]
    if min(leaves) < 2:
        raise ValueError("no complete-graph preimage: a leaf label is 1")
    return ArithmeticalStructure(
        GraphShape(GraphKind.COMPLETE, s.shape.n),
        tuple(x - 1 for x in leaves),
        tuple(s.r[:-1]),
    )


def parse_int_list(text: str) -> list[int]:
    """Parse "2,3,6" (brackets and spaces tolerated) into positive ints."""
    cleaned = text.strip().strip("()[]")
    if not cleaned:
        raise ValueError("empty integer list")
    values = []
    for part in cleaned.split(","):
        part = part.strip()
        if not part.lstrip("-").isdigit():
            raise ValueError(f"not an integer: {part!r}")
        values.append(int(part))
    return values

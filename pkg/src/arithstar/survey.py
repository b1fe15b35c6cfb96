"""Surveys of all critical groups on S_n and K_n, and checks against
published tables.

A survey folds the fast critical-group computation over a full
enumeration. Partial results merge associatively (counts add, witness
maps keep the lexicographically smallest structure per group), so the
final report does not depend on how work was split across processes.
"""

from __future__ import annotations

import csv
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal

from .abelian import FiniteAbelianGroup, from_cyclic_orders
from .critical import (
    critical_complete,
    critical_order,
    critical_star,
    critical_star_oracle,
    verify_lemma_primes,
    verify_minor_lemmas,
)
from .enumeration import EnumSpec, enumerate_structures, partition_work
from .structures import GraphKind

__all__ = [
    "SurveyReport",
    "FixtureTable",
    "FixtureDiff",
    "FixtureRow",
    "run_survey",
    "merge_reports",
    "load_fixture",
    "compare_fixture",
    "verify_star_equals_complete",
    "verify_count_doubling",
    "StarCompleteReport",
    "DoublingReport",
    "write_outputs",
    "CheckReport",
    "check_oracle",
    "check_minor_lemmas",
    "check_prime_lemma",
    "check_order_formula",
    "check_rank_bound",
    "check_d_a_law",
]

Graph = Literal["star", "complete"]


@dataclass(frozen=True)
class SurveyReport:
    n: int
    graph: str
    structure_count: int
    # group -> lexicographically smallest witness (d-hat for stars, d for K_n)
    witnesses: dict[FiniteAbelianGroup, tuple[int, ...]] = field(hash=False)

    @property
    def distinct_groups(self) -> tuple[FiniteAbelianGroup, ...]:
        return tuple(sorted(self.witnesses))

    @property
    def max_order(self) -> int:
        return max((g.order for g in self.witnesses), default=1)

    @property
    def max_order_witness(self) -> tuple[int, ...] | None:
        best = self.max_order
        cands = [w for g, w in self.witnesses.items() if g.order == best]
        return min(cands) if cands else None

    @property
    def rank_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(g.rank for g in self.witnesses).items()))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "graph": self.graph,
            "structure_count": self.structure_count,
            "distinct_group_count": len(self.witnesses),
            "max_order": str(self.max_order),
            "max_order_witness": [str(x) for x in self.max_order_witness or ()],
            "rank_histogram": {str(k): v for k, v in self.rank_histogram.items()},
            "groups": [
                {"group": g.to_json(), "witness": [str(x) for x in self.witnesses[g]]}
                for g in self.distinct_groups
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurveyReport":
        witnesses = {
            FiniteAbelianGroup.from_json(rec["group"]): tuple(int(x) for x in rec["witness"])
            for rec in data["groups"]
        }
        return cls(data["n"], data["graph"], data["structure_count"], witnesses)


def merge_reports(reports: Iterable[SurveyReport]) -> SurveyReport:
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to merge")
    n, graph = reports[0].n, reports[0].graph
    witnesses: dict[FiniteAbelianGroup, tuple[int, ...]] = {}
    count = 0
    for rep in reports:
        if (rep.n, rep.graph) != (n, graph):
            raise ValueError("cannot merge surveys of different graphs")
        count += rep.structure_count
        for g, w in rep.witnesses.items():
            old = witnesses.get(g)
            if old is None or w < old:
                witnesses[g] = w
    return SurveyReport(n, graph, count, witnesses)


def _survey_spec(spec: EnumSpec, graph: str) -> SurveyReport:
    witnesses: dict[FiniteAbelianGroup, tuple[int, ...]] = {}
    count = 0
    for dhat in enumerate_structures(spec):
        count += 1
        if graph == GraphKind.STAR.value:
            key = dhat.entries
            group = critical_star(dhat).group
        else:
            key = tuple(x - 1 for x in dhat.entries)
            group = critical_complete(key).group
        if group not in witnesses:
            # Stream is lexicographic, so the first witness is the smallest.
            witnesses[group] = key
    return SurveyReport(spec.n, graph, count, witnesses)


def _checkpoint_path(directory: Path, spec: EnumSpec, graph: str) -> Path:
    tag = "-".join(map(str, spec.prefix)) or "all"
    return directory / f"partial_{graph}_n{spec.n}_{tag}.jsonl"


def _survey_child(args: tuple[EnumSpec, str, str | None]) -> SurveyReport:
    spec, graph, checkpoint_dir = args
    if checkpoint_dir is not None:
        path = _checkpoint_path(Path(checkpoint_dir), spec, graph)
        if path.exists():
            return _read_checkpoint(path)
    rep = _survey_spec(spec, graph)
    if checkpoint_dir is not None:
        _write_checkpoint(path, rep)
    return rep


def _write_checkpoint(path: Path, rep: SurveyReport) -> None:
    # Header line, then one sorted line per group; renamed into place so a
    # killed run never leaves a truncated file behind.
    lines = [json.dumps({"n": rep.n, "graph": rep.graph, "structure_count": rep.structure_count})]
    for g in rep.distinct_groups:
        rec = {"group": g.to_json(), "witness": [str(x) for x in rep.witnesses[g]]}
        lines.append(json.dumps(rec))
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def _read_checkpoint(path: Path) -> SurveyReport:
    header, *rest = path.read_text().splitlines()
    head = json.loads(header)
    head["groups"] = [json.loads(line) for line in rest]
    return SurveyReport.from_json(head)


def run_survey(
    n: int,
    graph: Graph = "star",
    workers: int = 1,
    checkpoint_dir: str | os.PathLike | None = None,
    depth: int = 2,
) -> SurveyReport:
    """Distinct critical groups over every structure on S_n or K_n.

    With ``workers > 1`` or a checkpoint directory the enumeration is split
    by fixed prefixes; per-prefix results are saved in the checkpoint
    directory and reused on rerun.
    """
    if n < 2:
        raise ValueError("surveys need n >= 2")
    graph = GraphKind(graph).value
    spec = EnumSpec(n, d0_filter=1 if graph == "complete" else None)
    if workers <= 1 and checkpoint_dir is None:
        return _cached_survey(n, graph)
    if checkpoint_dir is not None:
        Path(checkpoint_dir).mkdir(parents=True, exist_ok=True)
        checkpoint_dir = str(checkpoint_dir)
    jobs = [(child, graph, checkpoint_dir) for child in partition_work(spec, depth)]
    if workers <= 1:
        parts = [_survey_child(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_survey_child, jobs, chunksize=4))
    return merge_reports(parts)


@lru_cache(maxsize=None)
def _cached_survey(n: int, graph: str) -> SurveyReport:
    spec = EnumSpec(n, d0_filter=1 if graph == "complete" else None)
    return _survey_spec(spec, graph)


# -- published tables -------------------------------------------------------


@dataclass(frozen=True)
class FixtureRow:
    published: str
    group: FiniteAbelianGroup


@dataclass(frozen=True)
class FixtureTable:
    source: str
    n: int | None
    rows: tuple
    corrections: tuple[tuple[str, str], ...] = ()

    @property
    def groups(self) -> frozenset[FiniteAbelianGroup]:
        return frozenset(r.group for r in self.rows)


def _data_text(name: str) -> str:
    return resources.files("arithstar").joinpath("data", name).read_text()


def _parse_tuple(text: str) -> tuple[int, ...]:
    inner = text.strip().strip("()").replace(",", " ").split()
    return tuple(int(x) for x in inner)


def _errata(table: str, n: int | None) -> dict[str, str]:
    out = {}
    for row in csv.DictReader(_data_text("errata.csv").splitlines()):
        if row["table"] == table and (n is None or int(row["n"]) == n):
            out[row["published"]] = row["corrected"]
    return out


def load_fixture(source: str, n: int | None = None, apply_errata: bool = True) -> FixtureTable:
    """Load a published table.

    ``group-lists`` gives the group list for S_n: each published tuple is
    canonicalized (so a non-chain tuple merges with its canonical twin)
    and, when ``apply_errata`` is set, the listed corrections are applied
    first. ``largest-order``, ``group-counts``, ``sylvester-trivial`` and
    ``iterated-d2`` are small CSV tables keyed by n; errata apply to
    whole cell values.
    """
    if source == "group-lists":
        if n is None:
            raise ValueError("group-lists fixture needs n")
        fixes = _errata(source, n) if apply_errata else {}
        rows = []
        applied = []
        for line in _data_text(f"groups_s{n}.txt").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            nums = _parse_tuple(line)
            key = " ".join(map(str, nums))
            if key in fixes:
                applied.append((line, "(" + ", ".join(fixes[key].split()) + ")"))
                nums = tuple(int(x) for x in fixes[key].split())
            rows.append(FixtureRow(line, from_cyclic_orders(nums)))
        return FixtureTable(source, n, tuple(rows), tuple(applied))
    files = {
        "largest-order": "largest_order.csv",
        "group-counts": "group_counts.csv",
        "sylvester-trivial": "trivial_sylvester.csv",
        "iterated-d2": "iterated_d2.csv",
    }
    if source not in files:
        raise ValueError(f"unknown fixture source {source!r}")
    fixes = _errata(source, n) if apply_errata else {}
    rows = []
    applied = []
    for r in csv.DictReader(_data_text(files[source]).splitlines()):
        if n is not None and int(r["n"]) != n:
            continue
        for key, value in r.items():
            if value in fixes:
                applied.append((value, fixes[value]))
                r[key] = fixes[value]
        rows.append(r)
    return FixtureTable(source, n, tuple(rows), tuple(applied))


@dataclass(frozen=True)
class FixtureDiff:
    only_computed: tuple[FiniteAbelianGroup, ...]
    only_fixture: tuple[FiniteAbelianGroup, ...]
    matched: int
    fixture_size: int
    computed_size: int

    @property
    def ok(self) -> bool:
        return not self.only_computed and not self.only_fixture

    def summary(self) -> str:
        text = f"{self.matched}/{self.computed_size} groups matched"
        if self.only_computed:
            text += "; missing from table: " + ", ".join(map(str, self.only_computed))
        if self.only_fixture:
            text += "; not realized: " + ", ".join(map(str, self.only_fixture))
        return text


def compare_fixture(report: SurveyReport, fixture: FixtureTable) -> FixtureDiff:
    if fixture.source != "group-lists" or fixture.n != report.n:
        raise ValueError("fixture does not describe this survey")
    computed = set(report.witnesses)
    table = set(fixture.groups)
    return FixtureDiff(
        tuple(sorted(computed - table)),
        tuple(sorted(table - computed)),
        len(computed & table),
        len(table),
        len(computed),
    )


@dataclass(frozen=True)
class StarCompleteReport:
    n: int
    star_count: int
    complete_count: int
    only_star: tuple[FiniteAbelianGroup, ...]
    only_complete: tuple[FiniteAbelianGroup, ...]

    @property
    def ok(self) -> bool:
        return not self.only_star and not self.only_complete


def verify_star_equals_complete(n: int) -> StarCompleteReport:
    star = set(run_survey(n, "star").witnesses)
    comp = set(run_survey(n, "complete").witnesses)
    return StarCompleteReport(
        n, len(star), len(comp), tuple(sorted(star - comp)), tuple(sorted(comp - star))
    )


@dataclass(frozen=True)
class DoublingReport:
    n: int
    count: int
    previous: int
    # groups carried over by prepending a leaf labelled 1 (rank <= n-3)
    prepend_family: int
    # groups produced by doubling (rank exactly n-2)
    doubling_family: int
    families_realized: bool

    @property
    def ok(self) -> bool:
        return (
            self.count >= 2 * self.previous
            and self.count >= 2 ** (self.n - 2)
            and self.families_realized
            and self.doubling_family == self.previous == self.prepend_family
        )


def verify_count_doubling(n: int) -> DoublingReport:
    """|CG(S_n)| >= 2 |CG(S_{n-1})|, via two disjoint families of groups."""
    from .construct import double_structure, prepend_one
    from .structures import DhatVector

    if n < 3:
        raise ValueError("needs n >= 3")
    prev = run_survey(n - 1, "star")
    cur = run_survey(n, "star")
    realized = set(cur.witnesses)
    carried = set()
    doubled = set()
    for w in prev.witnesses.values():
        d = DhatVector(w)
        carried.add(critical_star(prepend_one(d)).group)
        doubled.add(critical_star(double_structure(d)).group)
    ok = (
        carried <= realized
        and doubled <= realized
        and not carried & doubled
        and all(g.rank == n - 2 for g in doubled)
        and all(g.rank <= n - 3 for g in carried)
    )
    return DoublingReport(
        n, len(cur.witnesses), len(prev.witnesses), len(carried), len(doubled), ok
    )


def write_outputs(reports: Iterable[SurveyReport], out_dir: str | os.PathLike) -> list[Path]:
    """Write per-survey JSON, the two summary tables and appendix diffs."""
    out = Path(out_dir)
    (out / "tables").mkdir(parents=True, exist_ok=True)
    written = []
    reports = sorted(reports, key=lambda r: (r.graph, r.n))
    published_order = {int(r["n"]): int(r["largest_order"]) for r in load_fixture("largest-order").rows}
    published_count = {int(r["n"]): int(r["group_count"]) for r in load_fixture("group-counts").rows}
    order_rows = []
    count_rows = []
    for rep in reports:
        path = out / f"survey_{rep.graph}_n{rep.n}.json"
        path.write_text(json.dumps(rep.to_json(), indent=1) + "\n")
        written.append(path)
        order_rows.append((rep.graph, rep.n, rep.max_order, published_order.get(rep.n)))
        count_rows.append((rep.graph, rep.n, len(rep.witnesses), published_count.get(rep.n)))
        if rep.graph == "star" and 2 <= rep.n <= 6:
            diff_path = out / f"appendix_diff_n{rep.n}.txt"
            fixture = load_fixture("group-lists", rep.n)
            diff = compare_fixture(rep, fixture)
            literal = compare_fixture(rep, load_fixture("group-lists", rep.n, apply_errata=False))
            lines = [diff.summary()]
            for pub, fix in fixture.corrections:
                lines.append(f"erratum applied: {pub} -> {fix}")
            lines.append("without errata: " + literal.summary())
            diff_path.write_text("\n".join(lines) + "\n")
            written.append(diff_path)
    for name, rows, col in (
        ("largest_order.csv", order_rows, "largest_order"),
        ("group_counts.csv", count_rows, "group_count"),
    ):
        path = out / "tables" / name
        # Rows from earlier runs into the same directory are kept unless
        # this run recomputed them.
        merged = {}
        if path.exists():
            with path.open(newline="") as fh:
                for rec in csv.DictReader(fh):
                    merged[(rec["graph"], int(rec["n"]))] = [rec[k] for k in ("graph", "n", col, "published", "match")]
        for graph, n, value, pub in rows:
            merged[(graph, n)] = [graph, n, value, "" if pub is None else pub,
                                  "" if pub is None else str(pub == value).lower()]
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["graph", "n", col, "published", "match"])
            for key in sorted(merged):
                w.writerow(merged[key])
        written.append(path)
    return written


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one exhaustive check over every structure on S_n."""

    name: str
    n: int
    checked: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        text = f"{self.name} n={self.n}: {self.checked} checked, {status}"
        if self.failures:
            text += "; first: " + self.failures[0]
        return text


def _all(n: int):
    return enumerate_structures(EnumSpec(n))


def check_oracle(n: int) -> CheckReport:
    """Fast path against the Laplacian SNF for every structure on S_n."""
    bad = []
    count = 0
    for dhat in _all(n):
        count += 1
        fast = critical_star(dhat).group
        slow = critical_star_oracle(dhat).group
        if fast != slow:
            bad.append(f"{dhat}: fast {fast}, oracle {slow}")
    return CheckReport("oracle", n, count, tuple(bad))


def check_minor_lemmas(n: int) -> CheckReport:
    bad = []
    count = 0
    for dhat in _all(n):
        count += 1
        rep = verify_minor_lemmas(dhat)
        if not rep.ok:
            bad.append(f"{dhat}: {rep.mismatches[0]}")
    return CheckReport("minor-lemmas", n, count, tuple(bad))


def check_prime_lemma(n: int) -> CheckReport:
    bad = []
    count = 0
    for dhat in _all(n):
        count += 1
        if not verify_lemma_primes(dhat).ok:
            bad.append(str(dhat))
    return CheckReport("prime-powers", n, count, tuple(bad))


def check_order_formula(n: int) -> CheckReport:
    bad = []
    count = 0
    for dhat in _all(n):
        count += 1
        a, b = critical_order(dhat), critical_star(dhat).order
        if a != b:
            bad.append(f"{dhat}: formula {a}, group order {b}")
    return CheckReport("order-formula", n, count, tuple(bad))


def check_rank_bound(n: int) -> CheckReport:
    """No group of rank above n - 2, and rank n - 2 occurs."""
    if n < 2:
        raise ValueError("needs n >= 2")
    bad = []
    count = 0
    top = 0
    for dhat in _all(n):
        count += 1
        rank = critical_star(dhat).group.rank
        top = max(top, rank)
        if rank > n - 2:
            bad.append(f"{dhat}: rank {rank}")
    if top != n - 2:
        bad.append(f"maximum rank {top} never reaches {n - 2}")
    return CheckReport("rank-bound", n, count, tuple(bad))


def check_d_a_law(n: int) -> CheckReport:
    """K + Z/a for every admissible D_a expansion of every structure on S_n.

    ``checked`` counts (structure, a) pairs where the gcd hypothesis holds.
    """
    from .construct import LawViolation, d_a_group_law
    from sympy import divisors

    bad = []
    count = 0
    for dhat in _all(n):
        dn = dhat.entries[-1]
        for a in divisors(dn):
            try:
                law = d_a_group_law(dhat, a)
            except LawViolation as exc:
                bad.append(str(exc))
                count += 1
                continue
            if law is not None:
                count += 1
    return CheckReport("d_a-law", n, count, tuple(bad))

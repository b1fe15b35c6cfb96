"""Command-line entry point: ``arithstar <subcommand> ...``.

Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
1 when a computation or check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .abelian import FiniteAbelianGroup, parse_group
from .critical import (
    OracleBoundError,
    critical_complete,
    critical_complete_oracle,
    critical_star,
    critical_star_oracle,
)
from .enumeration import EnumSpec, count_structures, enumerate_structures
from .structures import DhatVector, InvalidStructureError, complete_structure, parse_int_list

OUTPUT_ENV = "ARITHSTAR_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _emit_structure(dhat: DhatVector, group: FiniteAbelianGroup, fmt: str, extra=None) -> None:
    if fmt == "json":
        rec = {"structure": dhat.to_json(), "group": group.to_json(), "order": str(group.order)}
        rec.update(extra or {})
        _emit_json(rec)
    else:
        print(f"dhat: {dhat}")
        print(f"d0: {dhat.d0}")
        print(f"r0: {dhat.r0}")
        for key, value in (extra or {}).items():
            print(f"{key}: {value}")
        print(f"group: {group}")


# -- compute ----------------------------------------------------------------


def cmd_compute(args) -> int:
    if args.star is not None:
        dhat = DhatVector(args.star)
        res = critical_star_oracle(dhat) if args.oracle else critical_star(dhat)
        structure = dhat.to_json()
    else:
        res = critical_complete_oracle(args.complete) if args.oracle else critical_complete(args.complete)
        structure = complete_structure(args.complete).to_json()
    if args.format == "json":
        rec = res.to_json()
        rec["structure"] = structure
        _emit_json(rec)
    else:
        print(res.group)
    return 0


# -- enumerate --------------------------------------------------------------


def cmd_enumerate(args) -> int:
    spec = EnumSpec(args.n, d0_filter=args.d0, max_results=args.max_results)
    if args.count_only:
        print(count_structures(spec))
        return 0
    out = sys.stdout
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["d0", "r0", "dhat"])
        for dhat in enumerate_structures(spec):
            writer.writerow([dhat.d0, dhat.r0, " ".join(map(str, dhat.entries))])
    else:
        for dhat in enumerate_structures(spec):
            out.write(json.dumps(dhat.to_json(), sort_keys=True) + "\n")
    return 0


# -- construct --------------------------------------------------------------


def _witness(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        try:
            p, m = part.split(":")
            out[int(p)] = int(m)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected prime:index pairs, got {part!r}") from None
    return out


def _embed_target(text: str):
    # A bare list of integers names the cyclic summands to use verbatim;
    # anything else is parsed as a group and split into prime powers.
    try:
        return parse_int_list(text)
    except ValueError:
        return parse_group(text)


def cmd_construct(args) -> int:
    from . import construct as c

    fmt = args.format
    kind = args.construction
    if kind == "sylvester":
        dhat = c.sylvester_trivial(args.n)
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "da":
        dhat = DhatVector(args.dhat)
        steps = args.a
        for a in steps:
            law = c.d_a_group_law(dhat, a)
            if law is None:
                print(f"note: gcd hypothesis fails for a = {a} on {dhat}; no law checked",
                      file=sys.stderr)
            dhat = c.d_a_expand(dhat, a)
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "concat":
        dhat = c.concatenate(DhatVector(args.left), DhatVector(args.right))
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "embed":
        target = _embed_target(args.group)
        dhat, full = c.embed_group(target)
        _emit_structure(dhat, full, fmt, {"n": dhat.n})
    elif kind == "double":
        dhat = c.double_structure(DhatVector(args.dhat))
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "scale":
        dhat = c.scale_to_d0_one(DhatVector(args.dhat))
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "sylvester-prime":
        dhat = c.sylvester_prime_cyclic(args.c, args.witness, args.length)
        _emit_structure(dhat, critical_star(dhat).group, fmt)
    elif kind == "extremal":
        ex = c.extremal_candidates(args.n)
        if fmt == "json":
            _emit_json({
                "order_candidate": ex.order_candidate.to_json(),
                "order": str(ex.order),
                "cyclic_candidate": ex.cyclic_candidate.to_json(),
                "cyclic_group": ex.cyclic_group.to_json(),
            })
        else:
            print(f"order candidate: {ex.order_candidate} (order {ex.order})")
            print(f"cyclic candidate: {ex.cyclic_candidate} ({ex.cyclic_group})")
    return 0


# -- survey -----------------------------------------------------------------


def _out_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get(OUTPUT_ENV) or "arithstar-output")


def cmd_survey(args) -> int:
    from .survey import run_survey, write_outputs

    out = _out_dir(args.out)
    ckpt = out / "checkpoints" if args.resume else None
    rep = run_survey(args.n, args.graph, workers=args.workers, checkpoint_dir=ckpt)
    paths = write_outputs([rep], out)
    if args.format == "json":
        _emit_json(rep.to_json())
    else:
        print(f"{args.graph} n={args.n}: {rep.structure_count} structures, "
              f"{len(rep.witnesses)} distinct groups, max order {rep.max_order}")
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)
    return 0


# -- verify -----------------------------------------------------------------


def _verify_appendix(n: int) -> tuple[bool, str]:
    from .survey import compare_fixture, load_fixture, run_survey

    rep = run_survey(n, "star")
    fixture = load_fixture("group-lists", n)
    diff = compare_fixture(rep, fixture)
    text = diff.summary()
    for published, fixed in fixture.corrections:
        text += f" (erratum applied: {published} -> {fixed})"
    return diff.ok, text


def _verify_star_complete(n: int) -> tuple[bool, str]:
    from .survey import verify_star_equals_complete

    rep = verify_star_equals_complete(n)
    text = f"star/complete n={n}: {rep.star_count} and {rep.complete_count} groups"
    if not rep.ok:
        text += f"; only star: {list(map(str, rep.only_star))}, only complete: {list(map(str, rep.only_complete))}"
    return rep.ok, text + (", equal" if rep.ok else "")


def _verify_doubling(n: int) -> tuple[bool, str]:
    from .survey import verify_count_doubling

    rep = verify_count_doubling(n)
    return rep.ok, (
        f"doubling n={n}: {rep.count} >= 2*{rep.previous} and >= {2 ** (n - 2)}; "
        f"families {rep.prepend_family} + {rep.doubling_family}"
    )


def _check(fn):
    def run(n):
        rep = fn(n)
        return rep.ok, rep.summary()
    return run


def _battery():
    from . import survey as s

    return {
        "appendix": _verify_appendix,
        "oracle": _check(s.check_oracle),
        "lemmas": _check(s.check_minor_lemmas),
        "primes": _check(s.check_prime_lemma),
        "star-complete": _verify_star_complete,
        "doubling": _verify_doubling,
        "order": _check(s.check_order_formula),
        "rank": _check(s.check_rank_bound),
        "da-law": _check(s.check_d_a_law),
    }


VERIFY_CHOICES = ("appendix", "oracle", "lemmas", "primes", "star-complete",
                  "doubling", "order", "rank", "da-law", "all")


def _applicable(name: str, n: int) -> bool:
    if name == "appendix":
        return 2 <= n <= 6
    if name == "lemmas":
        return n <= 5
    if name == "doubling":
        return n >= 3
    return True


def cmd_verify(args) -> int:
    battery = _battery()
    n = args.n
    if args.check == "all":
        names = [k for k in battery if _applicable(k, n)]
    else:
        if args.check == "appendix" and not _applicable("appendix", n):
            raise UsageError("published group lists cover n = 2..6 only")
        if args.check == "doubling" and n < 3:
            raise UsageError("doubling needs n >= 3")
        names = [args.check]
    results = []
    for name in names:
        ok, text = battery[name](n)
        results.append({"check": name, "n": n, "ok": ok, "detail": text})
    if args.format == "json":
        _emit_json({"results": results, "ok": all(r["ok"] for r in results)})
    else:
        for r in results:
            prefix = "" if len(results) == 1 else ("PASS " if r["ok"] else "FAIL ")
            print(prefix + r["detail"])
    return 0 if all(r["ok"] for r in results) else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithstar",
        description="Critical groups of arithmetical structures on stars and complete graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="critical group of one structure")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--star", type=_ints, metavar="D1,...,DN", help="leaf labels on S_n")
    g.add_argument("--complete", type=_ints, metavar="D1,...,DN", help="labels on K_n")
    p.add_argument("--oracle", action="store_true", help="use the Laplacian SNF instead")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("enumerate", help="list every structure on S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d0", type=int, help="only structures with this center label")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--max-results", type=int)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="explicit constructions")
    p.add_argument("--format", choices=("human", "json"), default="human")
    csub = p.add_subparsers(dest="construction", required=True)
    q = csub.add_parser("sylvester", help="trivial-group structure from Sylvester's sequence")
    q.add_argument("--n", type=int, required=True)
    q = csub.add_parser("da", help="D_a expansion of the largest entry")
    q.add_argument("--base", "--dhat", dest="dhat", type=_ints, required=True)
    q.add_argument("--a", type=_ints, required=True, help="one value, or a list to iterate")
    q = csub.add_parser("concat", help="union of two leaf multisets")
    q.add_argument("--left", type=_ints, required=True)
    q.add_argument("--right", type=_ints, required=True)
    q = csub.add_parser("embed", help="structure containing a given group as a summand")
    q.add_argument("--group", required=True,
                   help='summand orders "10,10,25,3" (used as given) or a group "Z/2 x Z/6"')
    q = csub.add_parser("double", help="structure on S_(n+1) with doubled group count")
    q.add_argument("--base", "--dhat", dest="dhat", type=_ints, required=True)
    q = csub.add_parser("scale", help="multiply leaves by d0 to get center label 1")
    q.add_argument("--base", "--dhat", dest="dhat", type=_ints, required=True)
    q = csub.add_parser("sylvester-prime", help="cyclic group Z/c from Sylvester primes")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--witness", type=_witness, required=True, help="prime:index pairs, e.g. 13:5")
    q.add_argument("--length", type=int, help="length of the trivial Sylvester base")
    q = csub.add_parser("extremal", help="conjectured extremal structures on S_n")
    q.add_argument("--n", type=int, required=True)
    for action in csub.choices.values():
        action.add_argument("--format", choices=("human", "json"), default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("survey", help="all distinct critical groups on S_n or K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--graph", choices=("star", "complete"), default="star")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help=f"output directory (default ${OUTPUT_ENV} or ./arithstar-output)")
    p.add_argument("--resume", action="store_true", help="keep per-prefix checkpoints under OUT")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify", help="exhaustive checks against published results")
    p.add_argument("check", choices=VERIFY_CHOICES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.print_usage(sys.stderr)
        print("arithstar: error: --n must be positive", file=sys.stderr)
        return 2
    if getattr(args, "workers", 1) < 1:
        print("arithstar: error: --workers must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"arithstar: error: {exc}", file=sys.stderr)
        return 2
    except (InvalidStructureError, OracleBoundError, ValueError, ArithmeticError, AssertionError) as exc:
        print(f"arithstar: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

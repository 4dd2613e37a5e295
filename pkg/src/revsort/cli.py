"""Command-line interface.

Permutations are read as whitespace-separated signed interior elements
("-2 3 1"); the frame elements are implicit.  "-" reads standard input.
Reversal output uses 0-based positions over the extended permutation
(element 0 sits at position 0), one "i j" per line.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

JSON output (--format json) is a single document:

    sort      {"n", "distance", "prefix": [[i, j]..], "pairs": [[a, b]..],
               "reversals": [[i, j]..]}
    distance  {"n", "distance"}
    verify    {"sorts_to_identity", "all_reversals_good", "length",
               "optimal"}

The bench table is TSV: n, reps, mean seconds, seconds/(n*log2(n)).  Its
header records the random generator so runs can be reproduced.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from types import SimpleNamespace

from . import oracle
from .oracle import GENERATOR_NAME, bfs_distance_table, random_permutation, verify_scenario
from .permutation import Reversal, SignedPermutation, apply_reversal
from .components import has_bad_component
from .solver import sort_signed_permutation


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return arg


def _parse_perm(text: str) -> SignedPermutation:
    return SignedPermutation.parse(text)


def _print_scenario_text(s) -> None:
    for r in s.all_reversals():
        print(f"{r.i} {r.j}")
    print(" ".join(str(x) for x in s.final_permutation.interior()))


def _scenario_json(p, s) -> dict:
    return {
        "n": p.n,
        "distance": s.distance,
        "prefix": [[r.i, r.j] for r in s.prefix_reversals],
        "pairs": [[pr.lo_element, pr.hi_element] for pr in s.good_pairs],
        "reversals": [[r.i, r.j] for r in s.all_reversals()],
    }


def cmd_sort(args) -> int:
    p = _parse_perm(_read_input(args.permutation))
    trace = [] if args.trace else None
    s = sort_signed_permutation(p, trace=trace)
    if trace is not None:
        for ev in trace:
            print("#", ev, file=sys.stderr)
    if args.format == "json":
        print(json.dumps(_scenario_json(p, s)))
    else:
        _print_scenario_text(s)
    return 0


def cmd_distance(args) -> int:
    p = _parse_perm(_read_input(args.permutation))
    s = sort_signed_permutation(p)
    if args.format == "json":
        print(json.dumps({"n": p.n, "distance": s.distance}))
    else:
        print(s.distance)
    return 0


def _parse_scenario_text(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty scenario input")
    perm = SignedPermutation.parse(lines[-1])
    revs = []
    for ln in lines[:-1]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"invalid reversal line {ln!r}")
        try:
            revs.append(Reversal(int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValueError(f"invalid reversal line {ln!r}: {exc}") from None
    return revs, perm


def _reversal_is_good(p: SignedPermutation, r: Reversal) -> bool:
    e = p.elems
    return e[r.i] + e[r.j + 1] == 1 or e[r.i - 1] + e[r.j] == -1


def cmd_verify(args) -> int:
    p = _parse_perm(_read_input(args.permutation))
    text = _read_input(args.scenario)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        scenario = SimpleNamespace(
            prefix_reversals=[Reversal(i, j) for i, j in doc.get("prefix", [])],
            good_pairs=[(int(a), int(b)) for a, b in doc.get("pairs", [])],
        )
        report = verify_scenario(p, scenario, table=_maybe_table(p))
    else:
        revs, final = _parse_scenario_text(text)
        cur = p
        all_good = True
        for r in revs:
            # non-good reversals are legitimate only while a bad component
            # still needs clearing
            if not _reversal_is_good(cur, r):
                if not has_bad_component(cur):
                    all_good = False
            try:
                cur = apply_reversal(cur, r)
            except ValueError as exc:
                print(f"invalid reversal {r}: {exc}", file=sys.stderr)
                return 2
        identity = cur.is_identity() and final == cur
        optimal = None
        table = _maybe_table(p)
        if table is not None:
            optimal = identity and all_good and len(revs) == table.lookup(p)
        report = oracle.VerificationReport(
            sorts_to_identity=identity,
            all_reversals_good=all_good,
            length=len(revs),
            optimal=optimal,
        )
    if args.format == "json":
        print(
            json.dumps(
                {
                    "sorts_to_identity": report.sorts_to_identity,
                    "all_reversals_good": report.all_reversals_good,
                    "length": report.length,
                    "optimal": report.optimal,
                }
            )
        )
    else:
        print(f"sorts_to_identity\t{report.sorts_to_identity}")
        print(f"all_reversals_good\t{report.all_reversals_good}")
        print(f"length\t{report.length}")
        print(f"optimal\t{report.optimal if report.optimal is not None else 'n/a'}")
    if not report.ok:
        for name in ("sorts_to_identity", "all_reversals_good", "optimal"):
            val = getattr(report, name)
            if val is False:
                print(f"verification failed: {name}", file=sys.stderr)
        return 1
    return 0


def _maybe_table(p: SignedPermutation):
    if p.n <= oracle.MAX_ORACLE_N:
        try:
            return bfs_distance_table(p.n)
        except Exception:
            return None
    return None


def cmd_gen(args) -> int:
    for k in range(args.count):
        p = random_permutation(args.n, args.seed + k)
        print(" ".join(str(x) for x in p.interior()))
    return 0


def cmd_oracle(args) -> int:
    p = _parse_perm(_read_input(args.permutation))
    if p.n < 1:
        print(0)
        return 0
    if p.n > oracle.MAX_ORACLE_N:
        print(f"oracle limited to n <= {oracle.MAX_ORACLE_N} (got n={p.n})", file=sys.stderr)
        return 2
    table = bfs_distance_table(p.n)
    print(table.lookup(p))
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"# revsort bench\tgenerator={GENERATOR_NAME}\tseed={args.seed}")
    print("n\treps\tmean_seconds\tseconds_per_nlogn")
    for n in sizes:
        times = []
        for rep in range(args.reps):
            p = random_permutation(n, args.seed + rep)
            t0 = time.perf_counter()
            s = sort_signed_permutation(p)
            times.append(time.perf_counter() - t0)
            if not s.final_permutation.is_identity():
                print("bench run produced a non-sorting scenario", file=sys.stderr)
                return 1
        mean = sum(times) / len(times)
        print(f"{n}\t{args.reps}\t{mean:.6f}\t{mean / (n * math.log2(max(n, 2))):.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="revsort",
        description="Sort signed permutations with a minimum number of reversals.",
        epilog='Positions in reversal output are 0-based over the extended permutation '
        "(element 0 at position 0); valid reversals span positions 1..n.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("sort", help="print a minimum reversal scenario")
    sp.add_argument("permutation", help='interior elements, e.g. "-2 3 1", or - for stdin')
    sp.add_argument("--trace", action="store_true", help="emit solver events on stderr")
    common(sp)
    sp.set_defaults(func=cmd_sort)

    sp = sub.add_parser("distance", help="print the reversal distance")
    sp.add_argument("permutation")
    common(sp)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("verify", help="check a scenario against a permutation")
    sp.add_argument("permutation")
    sp.add_argument("scenario", help="sort output (text or json), or - for stdin")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate random signed permutations")
    sp.add_argument("n", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("oracle", help="exact distance by exhaustive search (n <= 7)")
    sp.add_argument("permutation")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="time the solver across sizes")
    sp.add_argument("--sizes", default="65536,131072,262144,524288,1048576")
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

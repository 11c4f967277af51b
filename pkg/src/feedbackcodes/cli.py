"""Command-line front end.

Tables and results go to stdout as TSV; mismatches and progress go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import tables
from .bounds import (
    ALL_CONDITIONS,
    BoundProblem,
    InfeasibleError,
    condition6_sensitivity,
    upper_bound_free_points,
)
from .channel import Z_CHANNEL, dumps_code, graph_by_name
from .codesearch import (
    CACHE_NAME,
    cache_dir,
    frontier,
    merge_cache,
    read_cache,
    search_f_optimal,
)
from .oracles import GAMES, GameState, max_messages, winnable
from .strategy import (
    assemble_one_feedback,
    best_corollary2,
    best_one_feedback_bsc,
    build_two_feedback,
    complete_feedback_strategy,
    corollary1_strategy,
    corollary2_family,
    dumps_family,
    dumps_strategy,
    golden_families,
    loads_strategy,
    m_ad,
    z_family_n8,
)
from .verify import verify_strategy

log = logging.getLogger("feedbackcodes")


def _cache_path(args) -> Path:
    return Path(args.cache) / CACHE_NAME if args.cache else cache_dir() / CACHE_NAME


def cmd_reproduce(args) -> int:
    try:
        cells = tables.reproduce(args.table, _cache_path(args), search=args.search)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(tables.render(cells))
    for line in tables.diff_lines(cells):
        print(line, file=sys.stderr)
    return 1 if any(c.failed for c in cells) else 0


def _z_strategy(n: int, args):
    golden = golden_families().get(("z", n))
    if n == 8:
        return assemble_one_feedback(z_family_n8())
    cache = read_cache(_cache_path(args))
    f_tables: dict[int, list] = {}
    codes: dict[int, dict] = {}
    for (n2, M, t), e in cache.items():
        f_tables.setdefault(n2, []).append((M, e.F))
        codes.setdefault(n2, {})[M] = e.code()
    plan = best_corollary2(n, f_tables)
    best = assemble_one_feedback(corollary2_family(plan, codes[plan.n2], Z_CHANNEL))
    if golden is not None and golden.total() > best.M:
        best = assemble_one_feedback(golden)
    return best


def build_strategy(args):
    graph = graph_by_name(args.channel)
    n, k = args.n, args.feedbacks
    if graph.name == "bsc":
        if k == 1:
            return corollary1_strategy(n, args.k) if args.k else best_one_feedback_bsc(n)
        if k == 2:
            return build_two_feedback(n)
        if k == n - 1:
            return complete_feedback_strategy(n)
        raise ValueError("BSC strategies are built with 1, 2 or n-1 feedbacks")
    if graph.name == "z":
        if k != 1:
            raise ValueError("Z-channel strategies are built with one feedback")
        return _z_strategy(n, args)
    raise ValueError(f"no strategy builder for channel {args.channel}")


def cmd_build(args) -> int:
    s = build_strategy(args)
    report = verify_strategy(s) if args.verify else None
    text = dumps_strategy(s)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{s.label}\tn={s.n}\tM={s.M}\tfeedbacks={s.k}\tblocks={s.block_lengths}", file=sys.stderr)
    if report is not None:
        print(f"verified: {report.total_cases} cases, {len(report.failures)} failures", file=sys.stderr)
        return 0 if report.ok else 1
    return 0


def cmd_verify(args) -> int:
    s = loads_strategy(Path(args.strategy).read_text())
    report = verify_strategy(s)
    print("message\taction\treceived\tdecoded")
    for row in report.failure_rows(s.n, s.q):
        print(row)
    print(f"{report.total_cases} cases, {len(report.failures)} failures, {len(report.overlaps)} overlaps",
          file=sys.stderr)
    return 0 if report.ok else 1


def cmd_bound(args) -> int:
    conditions = ALL_CONDITIONS - set(args.without or ())
    p = BoundProblem(args.n, args.M, args.t)
    try:
        res = upper_bound_free_points(p, conditions, literal6=args.literal6)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print("n\tM\tt\tF_bound\tdistributions")
    dists = ";".join("+".join(map(str, z)) for z in res.distributions)
    print(f"{p.n}\t{p.M}\t{p.t}\t{res.F}\t{dists}")
    if args.sensitivity:
        rep = condition6_sensitivity(p)
        print(f"condition 6: bound {rep.bound}, without {rep.without6}, every printed row {rep.literal}",
              file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    if args.check is not None:
        ok = winnable(args.game, GameState(args.check, 0, args.n))
        print(f"{args.game}\t{args.n}\t{args.check}\t{int(ok)}")
        return 0
    M = max_messages(args.game, args.n)
    print(f"{args.game}\t{args.n}\t{M}")
    return 0


def cmd_search(args) -> int:
    lengths = args.n or list(range(1, 10))
    entries = []
    for n in lengths:
        if args.M:
            entries += [search_f_optimal(n, M) for M in args.M]
        else:
            entries += frontier(n, low=args.low if n >= 9 else 1)
        print(f"searched n={n}", file=sys.stderr)
    path = merge_cache(entries, _cache_path(args))
    print("n\tM\tF\tbound\toptimal\tweight_distribution")
    for e in entries:
        print(f"{e.n}\t{e.M}\t{e.F}\t{e.bound}\t{int(e.optimal_flag)}\t{'+'.join(map(str, e.weight_distribution))}")
    print(f"cache: {path}", file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    if args.what == "code":
        cache = read_cache(_cache_path(args))
        key = (args.n, args.M, 1)
        entry = cache[key] if key in cache else search_f_optimal(args.n, args.M)
        text = dumps_code(entry.code())
    elif args.what == "family":
        if args.channel == "z" and args.n == 8:
            fam = z_family_n8()
        else:
            fam = golden_families()[(args.channel, args.n)]
        text = dumps_family(fam)
    else:
        text = dumps_strategy(build_strategy(args))
    Path(args.output).write_text(text)
    return 0


def cmd_count(args) -> int:
    print(f"mad\t{args.n}\t{m_ad(args.n)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feedbackcodes", description=__doc__)
    ap.add_argument("--cache", help="cache directory (default $FEEDBACKCODES_CACHE or ./cache)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="recompute a reference table")
    p.add_argument("table", type=int, choices=tables.TABLE_IDS)
    p.add_argument("--search", action="store_true", help="table 1: also search code families")
    p.set_defaults(func=cmd_reproduce)

    def strategy_args(p):
        p.add_argument("--channel", choices=["bsc", "z"], default="bsc")
        p.add_argument("--feedbacks", type=int, default=1)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, help="Hamming parameter for the one-feedback BSC build")

    p = sub.add_parser("build", help="build a strategy and print it as JSON")
    strategy_args(p)
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a strategy file against every single error")
    p.add_argument("strategy")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="upper bound on free points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--without", type=int, action="append", choices=[3, 4, 5, 6])
    p.add_argument("--literal6", action="store_true", help="use every row of condition 6")
    p.add_argument("--sensitivity", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("oracle", help="solve the complete-feedback game")
    p.add_argument("--game", choices=GAMES, default="symmetric")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", type=int, metavar="M")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("search", help="search F-optimal Z-channel codes into the cache")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--M", type=int, action="append")
    p.add_argument("--low", type=int, default=58, help="smallest size for nested searches (n >= 9)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export", help="write a code, family or strategy as JSON")
    p.add_argument("what", choices=["code", "family", "strategy"])
    p.add_argument("output")
    p.add_argument("--channel", choices=["bsc", "z"], default="z")
    p.add_argument("--feedbacks", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("count", help="closed-form message counts")
    p.add_argument("kind", choices=["mad"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_count)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

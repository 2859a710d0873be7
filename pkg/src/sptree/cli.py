"""Command line entry point: ``sptree <command> ...``.

Exit codes: 0 success, 1 a check failed (bound, correctness, or ``check``
found a non single-peaked vote), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from .core import SPTreeError, format_profile, format_tree, read_profile
from .harness import (
    ADVERSARY_ALGOS,
    CW_ALGOS,
    ExperimentConfig,
    load_config_file,
    resolve_tree,
    run_experiment,
)
from .elicitation import STRATEGIES
from .spcheck import is_single_peaked_on_tree, sample_sp_profile
from .tree_analysis import tree_parameters

log = logging.getLogger("sptree")

TREE_HELP = "tree file, or family spec such as star:m=4, bstar:l=3,t=2, caterpillar:path=5,legs=2, random:m=10,seed=7"


def _add_experiment_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tree", help=TREE_HELP)
    p.add_argument("--profile", help="profile file or gen[:n=..,seed=..] (default gen)")
    p.add_argument("--n", type=int, help="voters per generated profile or adversary (default 5)")
    p.add_argument("--trials", type=int, help="number of trials (default 1)")
    p.add_argument("--seed", type=int, help="base seed; trial t uses seed + t (default 0)")
    p.add_argument("--partition", choices=["min", "leaf"], help="path partition for path-cover algorithms")
    p.add_argument("--csv", dest="csv_out", help="write rows here instead of stdout")
    p.add_argument("--trace", help="write the query ledger of trial 0 as CSV")
    p.add_argument("--config", help="key=value file; flags given on the command line win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sptree", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="sample a profile single peaked on a tree")
    g.add_argument("--tree", required=True, help=TREE_HELP)
    g.add_argument("--n", type=int, default=5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", help="profile file (default stdout)")
    g.add_argument("--tree-out", help="also write the tree in file format")

    c = sub.add_parser("check", help="is every vote of a profile single peaked on a tree")
    c.add_argument("--profile", required=True)
    c.add_argument("--tree", required=True, help=TREE_HELP)

    a = sub.add_parser("analyze", help="leaves, path cover number, distance from path, diameter")
    a.add_argument("--tree", required=True, action="append", help=TREE_HELP + " (repeatable)")
    a.add_argument("--csv", dest="csv_out")

    e = sub.add_parser("elicit", help="elicit profiles with an honest oracle")
    _add_experiment_args(e)
    e.add_argument("--strategy", choices=STRATEGIES)
    e.add_argument("--threshold", type=int, help="auto: use distpath when d <= threshold")

    w = sub.add_parser("condorcet", help="find weak Condorcet winners with an honest oracle")
    _add_experiment_args(w)
    w.add_argument("--algo", choices=CW_ALGOS)

    d = sub.add_parser("adversary", help="run an algorithm against an adversarial oracle")
    _add_experiment_args(d)
    d.add_argument("--kind", choices=["counting", "marking", "interval"])
    d.add_argument("--algo", choices=ADVERSARY_ALGOS)
    d.add_argument("--threshold", type=int)
    return parser


def _experiment_config(args) -> ExperimentConfig:
    data = load_config_file(args.config) if args.config else {}
    data.pop("command", None)
    for key in ("tree", "profile", "n", "trials", "seed", "partition", "trace",
                "strategy", "threshold", "algo", "kind"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    data["command"] = args.command
    return ExperimentConfig.from_mapping(data)


def _emit(text: str, path) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    tree = resolve_tree(args.tree, args.seed)
    profile = sample_sp_profile(tree, args.n, args.seed)
    _emit(format_profile(profile), args.out)
    if args.tree_out:
        Path(args.tree_out).write_text(format_tree(tree))
    return 0


def cmd_check(args) -> int:
    tree = resolve_tree(args.tree, 0)
    profile = read_profile(args.profile)
    if profile.m != tree.m:
        print(f"profile has {profile.m} candidates, tree has {tree.m}", file=sys.stderr)
        return 1
    for i, vote in enumerate(profile.votes):
        if not is_single_peaked_on_tree(vote, tree):
            print(f"vote {i} is not single peaked: {' '.join(map(str, vote.order))}", file=sys.stderr)
            return 1
    print(f"all {profile.n} votes single peaked", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["tree", "m", "l", "k", "d", "diameter"])
    for source in args.tree:
        p = tree_parameters(resolve_tree(source, 0))
        w.writerow([source, p["m"], p["l"], p["k"], p["d"], p["diameter"]])
    _emit(buf.getvalue(), args.csv_out)
    return 0


def cmd_experiment(args) -> int:
    cfg = _experiment_config(args)
    report = run_experiment(cfg)
    _emit(report.to_csv(), args.csv_out)
    s = report.summary()
    print(
        f"{s['trials']} trials, mean queries {s['mean_queries']:.1f}, max {s['max_queries']}, "
        f"violations {s['violations']}",
        file=sys.stderr,
    )
    for v in report.violations:
        print(f"VIOLATION {v}", file=sys.stderr)
    return 0 if report.ok else 1


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "analyze": cmd_analyze,
    "elicit": cmd_experiment,
    "condorcet": cmd_experiment,
    "adversary": cmd_experiment,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (SPTreeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

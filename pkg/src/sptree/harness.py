"""Experiment runner behind the ``elicit``, ``condorcet`` and ``adversary`` commands.

A run is a number of seeded trials. Each trial builds a tree and either a
ground-truth profile (honest oracle) or an adversary, runs one algorithm,
checks its answer and its query count against the guaranteed bound, and
produces one CSV row. Identical configurations give byte-identical CSV.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from .adversary import Adversary, CountingAdversary, IntervalAdversary, check_completion, make_adversary
from .condorcet import weak_cw_median_path, weak_cw_pathcover, weak_cw_tree
from .core import InvalidSpecError, Profile, Tree, parse_profile, read_tree, weak_condorcet_set
from .elicitation import (
    STRATEGIES,
    choose_strategy,
    elicit_profile,
    query_bound,
)
from .oracle import Oracle, ProfileOracle, interleaving_check
from .spcheck import is_profile_single_peaked, sample_sp_profile
from .tree_analysis import (
    ceil_log2,
    distance_from_path,
    leaf_path_partition,
    leaves,
    make_tree,
    min_path_cover,
    parse_tree_spec,
)

log = logging.getLogger(__name__)

ELICIT_COLUMNS = ["trial", "m", "n", "l", "k", "d", "strategy", "total_queries", "max_per_voter", "exact"]
CONDORCET_COLUMNS = ["trial", "m", "n", "algo", "queries", "winner", "is_weak_cw"]
ADVERSARY_COLUMNS = ["trial", "kind", "m", "n", "algo", "queries_total", "queries_min_per_voter", "consistent_completion"]

CW_ALGOS = ("tree", "median", "pathcover")
ADVERSARY_ALGOS = tuple(f"{s}-elicit" for s in STRATEGIES) + tuple(f"{a}-cw" for a in CW_ALGOS)


@dataclass
class ExperimentConfig:
    command: str = "elicit"
    tree: str = "path:m=8"
    profile: str = "gen"
    n: int = 5
    strategy: str = "auto"
    algo: Optional[str] = None
    kind: str = "counting"
    partition: str = "min"
    threshold: Optional[int] = None
    trials: int = 1
    seed: int = 0
    trace: Optional[str] = None

    @classmethod
    def from_mapping(cls, data: dict) -> ExperimentConfig:
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, val in data.items():
            key = key.replace("-", "_")
            key = {"adversary": "kind"}.get(key, key)
            if key not in known:
                raise InvalidSpecError(f"unknown config key {key!r}")
            if val is None:
                continue
            if key in ("n", "trials", "seed", "threshold"):
                try:
                    val = int(val)
                except ValueError as exc:
                    raise InvalidSpecError(f"{key} must be an integer, got {val!r}") from exc
            kwargs[key] = val
        return cls(**kwargs)


def load_config_file(path: str | Path) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        if not eq:
            raise InvalidSpecError(f"{path}:{lineno}: expected key=value")
        out[key.strip()] = val.strip()
    return out


@dataclass
class Report:
    columns: list[str]
    command: str = "elicit"
    rows: list[dict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    ledgers: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow(row)
        return buf.getvalue()

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        key = {"elicit": "total_queries", "condorcet": "queries"}.get(self.command, "queries_total")
        qs = [r[key] for r in self.rows]
        return {
            "trials": len(self.rows),
            "mean_queries": sum(qs) / len(qs) if qs else 0.0,
            "max_queries": max(qs) if qs else 0,
            "violations": len(self.violations),
        }


def resolve_tree(source: str, trial_seed: int) -> Tree:
    path = Path(source)
    if path.is_file():
        return read_tree(path)
    spec = parse_tree_spec(source)
    if spec.kind == "random" and "seed" not in spec.params:
        spec.params["seed"] = trial_seed
    return make_tree(spec)


def resolve_profile(source: str, tree: Tree, n: int, trial_seed: int) -> Profile:
    if source == "gen" or source.startswith("gen:"):
        params = {}
        for item in filter(None, source[4:].split(",")):
            k, _, v = item.partition("=")
            if k.strip() not in ("n", "seed"):
                raise InvalidSpecError(f"unknown profile generator key {k!r}")
            try:
                params[k.strip()] = int(v)
            except ValueError as exc:
                raise InvalidSpecError(f"profile generator {k.strip()} must be an integer") from exc
        return sample_sp_profile(tree, params.get("n", n), params.get("seed", trial_seed))
    path = Path(source)
    if not path.is_file():
        raise InvalidSpecError(f"profile source {source!r} is neither gen:... nor a file")
    profile = parse_profile(path.read_text())
    if profile.m != tree.m:
        raise InvalidSpecError(f"profile has {profile.m} candidates, tree has {tree.m}")
    return profile


def _partition(tree: Tree, which: str):
    if which == "leaf":
        return leaf_path_partition(tree)
    if which == "min":
        return min_path_cover(tree)
    raise InvalidSpecError(f"partition must be 'leaf' or 'min', got {which!r}")


def _max_per_voter(o: Oracle) -> int:
    return max((o.query_count(v) for v in range(o.n)), default=0)


def _run_elicitation(o: Oracle, tree: Tree, strategy: str, cfg: ExperimentConfig):
    """Returns (profile, resolved strategy, per-voter bound)."""
    pp = _partition(tree, cfg.partition)
    if strategy == "auto":
        strategy = choose_strategy(tree, cfg.threshold, pp)
    d, deleted = distance_from_path(tree)
    result = elicit_profile(o, tree, strategy, pp=pp, deleted=deleted)
    bound = query_bound(strategy, tree.m, k=len(pp), d=d)
    return result, strategy, bound


def _cw_bound(algo: str, tree: Tree, n: int, pp) -> int:
    used = n - 1 if n % 2 == 0 and n > 1 else n
    if algo == "tree":
        return (tree.m - 1) * used
    if algo == "median":
        return n * ceil_log2(tree.m)
    return used * sum(ceil_log2(len(p)) for p in pp) + used * (len(pp) - 1)


def _run_cw(o: Oracle, tree: Tree, algo: str, n: int, pp) -> int:
    if algo == "tree":
        return weak_cw_tree(o, tree, n)
    if algo == "median":
        return weak_cw_median_path(o, tree.path_axis(), n)
    if algo == "pathcover":
        return weak_cw_pathcover(o, tree, pp, n)
    raise InvalidSpecError(f"unknown condorcet algorithm {algo!r}")


def run_experiment(config) -> Report:
    cfg = config if isinstance(config, ExperimentConfig) else ExperimentConfig.from_mapping(config)
    if cfg.trials < 1:
        raise InvalidSpecError("trials must be >= 1")
    runner = {"elicit": _elicit_trial, "condorcet": _condorcet_trial, "adversary": _adversary_trial}.get(cfg.command)
    if runner is None:
        raise InvalidSpecError(f"unknown experiment command {cfg.command!r}")
    columns = {"elicit": ELICIT_COLUMNS, "condorcet": CONDORCET_COLUMNS, "adversary": ADVERSARY_COLUMNS}[cfg.command]
    # the seed that drove each trial goes last so runs can be replayed row by row
    report = Report(columns + ["seed"], cfg.command)
    for trial in range(cfg.trials):
        trial_seed = cfg.seed + trial
        tree = resolve_tree(cfg.tree, trial_seed)
        row, ledger = runner(cfg, trial, trial_seed, tree, report.violations)
        row["seed"] = trial_seed
        report.rows.append(row)
        report.ledgers.append(ledger)
        log.debug("trial %d: %s", trial, row)
    if cfg.trace:
        with open(cfg.trace, "w", newline="") as fh:
            report.ledgers[0].write_csv(fh)
    return report


def _elicit_trial(cfg, trial, trial_seed, tree, violations):
    if cfg.strategy not in STRATEGIES:
        raise InvalidSpecError(f"unknown strategy {cfg.strategy!r}")
    truth = resolve_profile(cfg.profile, tree, cfg.n, trial_seed)
    if cfg.strategy != "sorting" and not is_profile_single_peaked(truth, tree):
        raise InvalidSpecError("profile is not single peaked on the tree")
    o = ProfileOracle(truth)
    got, strategy, bound = _run_elicitation(o, tree, cfg.strategy, cfg)
    exact = got == truth
    worst = _max_per_voter(o)
    if not exact:
        violations.append(f"trial {trial}: elicited profile differs from ground truth")
    if worst > bound:
        violations.append(f"trial {trial}: {worst} queries for one voter exceeds bound {bound}")
    if not interleaving_check(o.ledger):
        violations.append(f"trial {trial}: queries interleave voters")
    params_k = len(min_path_cover(tree))
    row = {
        "trial": trial, "m": tree.m, "n": truth.n, "l": len(leaves(tree)), "k": params_k,
        "d": distance_from_path(tree)[0], "strategy": strategy,
        "total_queries": o.query_count(), "max_per_voter": worst, "exact": exact,
    }
    return row, o.ledger


def _condorcet_trial(cfg, trial, trial_seed, tree, violations):
    algo = cfg.algo or "tree"
    if algo not in CW_ALGOS:
        raise InvalidSpecError(f"unknown condorcet algorithm {algo!r}")
    if algo == "median" and not tree.is_path():
        raise InvalidSpecError("median algorithm needs a path-shaped tree")
    truth = resolve_profile(cfg.profile, tree, cfg.n, trial_seed)
    if not is_profile_single_peaked(truth, tree):
        raise InvalidSpecError("profile is not single peaked on the tree")
    pp = _partition(tree, cfg.partition)
    o = ProfileOracle(truth)
    winner = _run_cw(o, tree, algo, truth.n, pp)
    ok = winner in weak_condorcet_set(truth)
    bound = _cw_bound(algo, tree, truth.n, pp)
    if not ok:
        violations.append(f"trial {trial}: {winner} is not a weak Condorcet winner")
    if o.query_count() > bound:
        violations.append(f"trial {trial}: {o.query_count()} queries exceeds bound {bound}")
    row = {
        "trial": trial, "m": tree.m, "n": truth.n, "algo": algo,
        "queries": o.query_count(), "winner": winner, "is_weak_cw": ok,
    }
    return row, o.ledger


def counting_floor(adv: CountingAdversary) -> int:
    """Information-theoretic per-voter minimum against the counting adversary."""
    return math.ceil(math.log2(adv.initial_size)) if adv.initial_size > 1 else 0


def _adversary_trial(cfg, trial, trial_seed, tree, violations):
    algo = cfg.algo or "sorting-elicit"
    if algo not in ADVERSARY_ALGOS:
        raise InvalidSpecError(f"unknown algorithm {algo!r}; choose from {', '.join(ADVERSARY_ALGOS)}")
    adv = make_adversary(cfg.kind, tree, cfg.n)
    pp = _partition(tree, cfg.partition)
    name, _, family = algo.rpartition("-")
    if family == "elicit":
        out, _, _ = _run_elicitation(adv, tree, name, cfg)
        completion = adv.complete(out)
        if completion != out:
            violations.append(f"trial {trial}: {algo} output is not forced by the answers")
    else:
        if name == "median" and not tree.is_path():
            raise InvalidSpecError("median algorithm needs a path-shaped tree")
        out = _run_cw(adv, tree, name, cfg.n, pp)
        completion = adv.complete(out)
        if out not in weak_condorcet_set(completion):
            violations.append(f"trial {trial}: adversary completion defeats {algo}")
    consistent = check_completion(adv, completion)
    if not consistent:
        violations.append(f"trial {trial}: adversary completion contradicts its answers")
    per_voter = [adv.query_count(v) for v in range(adv.n)]
    _adversary_bounds(adv, family, per_voter, trial, violations)
    row = {
        "trial": trial, "kind": cfg.kind, "m": tree.m, "n": adv.n, "algo": algo,
        "queries_total": adv.query_count(), "queries_min_per_voter": min(per_voter),
        "consistent_completion": consistent,
    }
    return row, adv.ledger


def _adversary_bounds(adv: Adversary, family, per_voter, trial, violations):
    if isinstance(adv, CountingAdversary) and family == "elicit":
        floor = counting_floor(adv)
        if min(per_voter) < floor:
            violations.append(f"trial {trial}: {min(per_voter)} queries for a voter, below floor {floor}")
    if isinstance(adv, IntervalAdversary):
        for v, q in enumerate(per_voter):
            if adv.width(v) * 2 ** q < adv.m - 1:
                violations.append(f"trial {trial}: voter {v} window {adv.width(v)} after {q} queries")
        if not interleaving_check(adv.ledger):
            log.warning("trial %d: algorithm interleaves voters; the interval bound does not apply", trial)

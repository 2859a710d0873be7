"""Acceptance criteria 1-10.

Each test prints ``criterion N: PASS|FAIL ...`` and the lines are repeated in
the pytest terminal summary. Run alone with

    pytest tests/test_acceptance.py -s

or ``python3 tests/test_acceptance.py``.
"""

import math
import random
import time

from sptree.adversary import CountingAdversary, IntervalAdversary, check_completion
from sptree.condorcet import weak_cw_median_path, weak_cw_pathcover, weak_cw_tree
from sptree.core import Profile, Tree, weak_condorcet_set
from sptree.elicitation import (
    elicit_on_path,
    elicit_on_tree_distpath,
    elicit_on_tree_pathcover,
    elicit_profile,
)
from sptree.harness import run_experiment
from sptree.oracle import ProfileOracle, interleaving_check
from sptree.spcheck import count_sp_votes, enumerate_sp_votes, sample_sp_profile
from sptree.tree_analysis import (
    ceil_log2,
    distance_from_path,
    leaf_path_partition,
    leaves,
    make_tree,
    min_path_cover,
    min_path_cover_size_bruteforce,
    nonisomorphic_trees,
    random_tree,
)

RESULTS: dict[int, str] = {}

NAMED = ["star:m=4", "star:m=7", "bstar:l=3,t=2", "sstar:legs=1/2/3", "caterpillar:path=3,legs=0/2/0",
         "caterpillar:path=4,legs=1", "binary:h=2", "path:m=7"]


def _path(m):
    return Tree(m, [(i, i + 1) for i in range(m - 1)])


def _trees_upto(m_max):
    out = [t for m in range(1, m_max + 1) for t in nonisomorphic_trees(m)]
    out += [t for t in map(make_tree, NAMED) if t.m <= m_max]
    return out


def _report(num, ok, detail, started=None, budget=None):
    if started is not None:
        took = time.perf_counter() - started
        detail += f" ({took:.1f}s"
        if budget is not None:
            ok = ok and took <= budget
            detail += f", budget {budget}s"
        detail += ")"
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def test_criterion_1_exhaustive_elicitation():
    t0 = time.perf_counter()
    mismatches = votes = 0
    for t in _trees_upto(7):
        leaf_pp, min_pp = leaf_path_partition(t), min_path_cover(t)
        _, deleted = distance_from_path(t)
        runs = [
            lambda o: elicit_profile(o, t, "sorting").votes[0],
            lambda o: elicit_on_tree_pathcover(o, 0, t, leaf_pp),
            lambda o: elicit_on_tree_pathcover(o, 0, t, min_pp),
            lambda o: elicit_on_tree_distpath(o, 0, t, deleted),
        ]
        for r in enumerate_sp_votes(t):
            votes += 1
            for run in runs:
                if run(ProfileOracle(Profile(t.m, (r,)))) != r:
                    mismatches += 1
    _report(1, mismatches == 0, f"{votes} votes x 4 strategies, {mismatches} mismatches", t0, 120)


def test_criterion_2_path_bound_exact():
    t0 = time.perf_counter()
    bad = total = 0
    for m in range(1, 10):
        for r in enumerate_sp_votes(_path(m)):
            total += 1
            o = ProfileOracle(Profile(m, (r,)))
            if elicit_on_path(o, 0, range(m)) != r or o.query_count() != m - 1:
                bad += 1
    _report(2, bad == 0, f"{total} path votes, {bad} not recovered with exactly m-1 queries", t0, 30)


def test_criterion_3_parameterized_bounds():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = 0
    for i in range(500):
        m, n = rng.randint(1, 12), rng.randint(1, 6)
        t = random_tree(m, i)
        truth = sample_sp_profile(t, n, i)
        pp = leaf_path_partition(t) if i % 2 else min_path_cover(t)
        d, deleted = distance_from_path(t)
        pc, dp = ProfileOracle(truth), ProfileOracle(truth)
        for v in range(n):
            ok = elicit_on_tree_pathcover(pc, v, t, pp) == truth.votes[v]
            ok &= elicit_on_tree_distpath(dp, v, t, deleted) == truth.votes[v]
            ok &= pc.query_count(v) <= m * (1 + ceil_log2(len(pp)))
            ok &= dp.query_count(v) <= 2 * m + d * ceil_log2(d)
            bad += not ok
    _report(3, bad == 0, f"500 instances, {bad} voters over bound or wrong", t0, 120)


def test_criterion_4_path_cover_vs_leaves():
    t0 = time.perf_counter()
    bad = checked = 0
    for t in _trees_upto(9):
        checked += 1
        k, l = len(min_path_cover(t)), len(leaves(t))
        if not (math.ceil(l / 2) <= k <= l) or k != min_path_cover_size_bruteforce(t):
            bad += 1
    _report(4, bad == 0, f"{checked} trees, {bad} violations", t0, 120)


def test_criterion_5_weak_condorcet():
    t0 = time.perf_counter()
    rng = random.Random(7)
    bad = 0
    runs = 0
    for i in range(1000):
        m, n = rng.randint(1, 10), rng.randint(1, 9)
        t = _path(m) if i % 3 == 0 else random_tree(m, i)
        p = sample_sp_profile(t, n, i)
        wcw = weak_condorcet_set(p)
        outs = [weak_cw_tree(ProfileOracle(p), t),
                weak_cw_pathcover(ProfileOracle(p), t, min_path_cover(t))]
        if t.is_path():
            outs.append(weak_cw_median_path(ProfileOracle(p), t.path_axis()))
        runs += len(outs)
        bad += sum(w not in wcw for w in outs)
    _report(5, bad == 0, f"1000 instances, {runs} algorithm runs, {bad} non-winners", t0, 120)


def test_criterion_6_winner_vs_elicitation():
    t0 = time.perf_counter()
    m, n = 64, 15
    p = sample_sp_profile(_path(m), n, 6)
    med, eli = ProfileOracle(p), ProfileOracle(p)
    w = weak_cw_median_path(med, range(m))
    for v in range(n):
        elicit_on_path(eli, v, range(m))
    q_med, q_eli = med.query_count(), eli.query_count()
    ok = (q_med <= n * ceil_log2(m) == 90 and q_eli == n * (m - 1) == 945
          and q_eli >= 10 * q_med and w in weak_condorcet_set(p))
    _report(6, ok, f"median {q_med} vs elicitation {q_eli}, ratio {q_eli / q_med:.1f}", t0, 10)


COUNTING_RUNS = [
    ("star:m=4", "sorting", None),
    ("star:m=4", "pathcover", "leaf"),
    ("star:m=4", "pathcover", "min"),
    ("star:m=4", "distpath", None),
    ("bstar:l=3,t=2", "sorting", None),
    ("bstar:l=3,t=2", "pathcover", "leaf"),
    ("bstar:l=3,t=2", "pathcover", "min"),
    ("bstar:l=3,t=2", "distpath", None),
]


def _counting_runs(n=3):
    for spec, strategy, part in COUNTING_RUNS:
        t = make_tree(spec)
        adv = CountingAdversary(t, n)
        pp = {"leaf": leaf_path_partition, "min": min_path_cover, None: lambda _: None}[part](t)
        out = elicit_profile(adv, t, strategy, pp=pp)
        yield spec, strategy + (f"({part})" if part else ""), adv, out


def _interval_runs():
    for n in (1, 2, 5, 8, 15):
        for seed in range(4):
            axis = list(range(16))
            random.Random(seed).shuffle(axis)
            adv = IntervalAdversary(axis, n)
            w = weak_cw_median_path(adv, axis)
            yield adv, w


def test_criterion_7_counting_floor():
    t0 = time.perf_counter()
    assert count_sp_votes(make_tree("star:m=4")) == 12
    assert count_sp_votes(make_tree("bstar:l=3,t=2")) >= 36
    bad, mins = 0, []
    for spec, strategy, adv, out in _counting_runs():
        floor = math.ceil(math.log2(adv.initial_size))
        low = min(adv.query_count(v) for v in range(adv.n))
        mins.append(f"{spec}/{strategy}>={low}")
        bad += low < floor or adv.complete(out) != out
    _report(7, bad == 0, f"{len(COUNTING_RUNS)} runs, {bad} below floor; " + " ".join(mins), t0, 60)


def test_criterion_8_adversary_consistency():
    t0 = time.perf_counter()
    bad = runs = 0
    for _, _, adv, out in _counting_runs():
        runs += 1
        bad += not check_completion(adv, adv.complete()) or not check_completion(adv, adv.complete(out))
    for adv, w in _interval_runs():
        runs += 1
        bad += not check_completion(adv, adv.complete()) or not check_completion(adv, adv.complete(w))
    _report(8, bad == 0, f"{runs} adversarial runs replayed, {bad} inconsistent", t0)


def test_criterion_9_interval_halving():
    t0 = time.perf_counter()
    bad = runs = flips = 0
    for adv, w in _interval_runs():
        runs += 1
        flips += adv.flips
        for v in range(adv.n):
            if adv.width(v) * 2 ** adv.query_count(v) < 15:
                bad += 1
        if not interleaving_check(adv.ledger):
            bad += 1
        if w not in weak_condorcet_set(adv.complete(w)):
            bad += 1
    _report(9, bad == 0, f"{runs} runs on m=16, {bad} violations, {flips} guard flips", t0, 30)


DETERMINISM_CONFIGS = [
    {"command": "elicit", "tree": "random:m=10", "n": 5, "trials": 10},
    {"command": "elicit", "tree": "bstar:l=4,t=2", "n": 5, "strategy": "pathcover", "trials": 5},
    {"command": "condorcet", "tree": "random:m=9", "n": 6, "algo": "pathcover", "trials": 10},
    {"command": "condorcet", "tree": "path:m=16", "n": 9, "algo": "median", "trials": 5},
    {"command": "adversary", "kind": "counting", "tree": "star:m=4", "algo": "sorting-elicit", "n": 3},
    {"command": "adversary", "kind": "marking", "tree": "star:m=6", "algo": "tree-cw", "n": 5},
    {"command": "adversary", "kind": "interval", "tree": "path:m=16", "algo": "median-cw", "n": 5},
]


def _harness_csv(seed):
    return "".join(run_experiment(dict(cfg, seed=seed)).to_csv() for cfg in DETERMINISM_CONFIGS)


def test_criterion_10_determinism():
    t0 = time.perf_counter()
    a, b = _harness_csv(11), _harness_csv(11)
    differs = _harness_csv(12) != a
    _report(10, a == b and differs, f"{len(a)} bytes of CSV, identical={a == b}", t0)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

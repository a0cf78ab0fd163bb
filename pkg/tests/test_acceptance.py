"""Acceptance criteria 1-13, one test each.

Every test records a single PASS/FAIL line through the ``verdict`` fixture;
the lines are repeated in the terminal summary.
"""

import json
import math
import statistics
import time
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from qpdom.bounds import augment_code, perfect_closure, upper_bound
from qpdom.generators import (
    all_free_trees,
    all_labeled_trees,
    caterpillar_equal,
    caterpillar_gap,
    chain_for_pattern,
    corona,
    path,
    random_caterpillar,
    random_tree,
    star,
    tight_witness_search,
)
from qpdom.oracle import brute_min, chain_profile, is_k_quasiperfect, subset_profile
from qpdom.qp_dp import domination_number, qp_chain, qp_number_frontier
from qpdom.sweep import SweepResult, sweep, write_findings
from qpdom.tree_core import leaves, root_and_renumber, strong_support_vertices, support_vertices

FINDINGS = Path(__file__).resolve().parents[1] / "findings"
ORACLE_N = 20  # oracle confirmation limit for the realization families


@pytest.fixture(scope="module")
def corpus():
    """Exhaustive sweep over all labeled trees up to n = 9 (frontier DP, published DP, oracle, extremal test)."""
    return sweep(9, k_policy=0, workers=1)


def _orders(result, lo, hi):
    return SweepResult([o for o in result.orders if lo <= o.n <= hi])


def test_criterion_01_oracle_equivalence(corpus, verdict):
    upto8 = _orders(corpus, 1, 8)
    trees = upto8.total("trees")
    expected = sum(n ** (n - 2) if n > 1 else 1 for n in range(1, 9))
    bad = upto8.total("frontier_oracle_mismatches")
    bad9 = _orders(corpus, 9, 9).total("frontier_oracle_mismatches")
    verdict(
        1,
        trees == expected and bad == 0 and bad9 == 0,
        f"{trees} labeled trees n<=8, {upto8.total('pairs')} (tree, k) pairs, "
        f"{bad} frontier/oracle mismatches (n=9 also: {bad9})",
    )


def test_criterion_02_published_dp_discrepancies(corpus, verdict):
    upto8 = _orders(corpus, 1, 8)
    FINDINGS.mkdir(exist_ok=True)
    dest = FINDINGS / "published_vs_frontier.json"
    write_findings(upto8, dest)
    stored = json.loads(dest.read_text())
    count = upto8.total("published_frontier_discrepancies")
    rows = [f for f in stored["findings"] if f["kind"] == "published_vs_frontier"]
    # documented finding, not a failure: every stored row must be a genuine, reproducible disagreement
    reproducible = all(
        r["published"] != r["frontier"] and r["frontier"] == r["oracle"] for r in rows
    )
    ok = (
        stored["summary"]["published_frontier_discrepancies"] == count
        and (count == 0 or (rows and reproducible))
        and upto8.total("frontier_oracle_mismatches") == 0
    )
    ks = sorted({r["k"] for r in rows})
    verdict(2, ok, f"{count} published/frontier discrepancies over n<=8 (k values seen: {ks}); artifact {dest.name}")


def test_criterion_03_paths(verdict):
    bad = [
        n
        for n in range(1, 301)
        if not (
            qp_number_frontier(path(n), 1)
            == qp_number_frontier(path(n), 2)
            == domination_number(path(n))
            == math.ceil(n / 3)
        )
    ]
    verdict(3, not bad, f"P_n for n=1..300, failures: {bad[:5]}")


def test_criterion_04_stars(verdict):
    bad = []
    for n in range(3, 51):
        rep = qp_chain(star(n))
        if rep.delta != n - 1 or rep.values != [1] * (n - 1):
            bad.append(n)
    verdict(4, not bad, f"K_1,n-1 for n=3..50, failures: {bad}")


def test_criterion_05_corona(verdict):
    rng = np.random.default_rng(5)
    bad = []
    for _ in range(200):
        n = int(rng.integers(2, 101))
        t = corona(random_tree(n, int(rng.integers(2**32))))
        if not domination_number(t) == qp_number_frontier(t, 1) == n:
            bad.append(n)
    verdict(5, not bad, f"200 random coronas, failures: {bad[:5]}")


def test_criterion_06_caterpillars(verdict):
    rng = np.random.default_rng(6)
    bad = []
    for _ in range(500):
        n = int(rng.integers(1, 201))
        t = random_caterpillar(n, int(rng.integers(2**32)))
        if qp_number_frontier(t, 2) != domination_number(t):
            bad.append(n)
    verdict(6, not bad, f"500 random caterpillars n<=200, gamma_12 != gamma on {len(bad)}")


def test_criterion_07_upper_bound(verdict):
    rng = np.random.default_rng(7)
    bound_failures = 0
    checked = 0
    for _ in range(10_000):
        t = random_tree(int(rng.integers(1, 201)), int(rng.integers(2**32)))
        rep = qp_chain(t)
        g = rep.gamma
        for k, v in enumerate(rep.values, start=1):
            checked += 1
            bound_failures += not (g <= v <= upper_bound(g, k))
    aug_failures = 0
    aug_runs = 0
    for n in range(1, 11):
        for t in all_free_trees(n):
            delta = max(t.max_degree, 1)
            codes = brute_min(t, delta, collect_all=True)
            for k in range(1, delta + 1):
                for s in codes.witnesses:
                    res = augment_code(t, s, k).result
                    aug_runs += 1
                    aug_failures += not (
                        is_k_quasiperfect(t, res, k) and len(res) <= upper_bound(codes.value, k)
                    )
    verdict(
        7,
        bound_failures == 0 and aug_failures == 0,
        f"bound violated on {bound_failures}/{checked} (tree, k) pairs; "
        f"augmentation invalid or over bound on {aug_failures}/{aug_runs} runs (all trees n<=10, every gamma-code)",
    )


@pytest.mark.parametrize("a,k", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_criterion_08_tightness(a, k, verdict):
    t0 = time.perf_counter()
    t = tight_witness_search(a, k, max_n=14)
    elapsed = time.perf_counter() - t0
    prof = chain_profile(t)
    ok = prof[-1] == a and prof[k - 1] == a + math.ceil(a / k) - 1 and elapsed < 300
    verdict(8, ok, f"(a={a}, k={k}): witness on n={t.n}, oracle chain {prof}, {elapsed:.1f} s")


def test_criterion_09_extremal_characterization(corpus, verdict):
    mismatches = {o.n: o.extremal_mismatches for o in corpus.orders}
    n2 = [f for f in corpus.findings() if f["kind"] == "extremal_vs_oracle"]
    # P2: gamma_11 = 1 = 2 gamma - 1, yet it has no strong support vertex
    only_p2 = (
        mismatches[2] == 1
        and len(n2) == 1
        and n2[0]["edges"] == [[1, 2]]
        and n2[0]["extremal_check"] is False
        and (n2[0]["gamma_11"], n2[0]["gamma"]) == (1, 1)
    )
    rest = sum(v for n, v in mismatches.items() if n >= 3)
    extremal = sum(o.extremal_trees for o in corpus.orders if o.n >= 3)
    verdict(
        9,
        rest == 0 and only_p2,
        f"equivalence on all labeled trees 3<=n<=9 ({extremal} extremal), {rest} mismatches; "
        f"n=2: P2 is the single counterexample to the unrestricted statement",
    )


def test_criterion_10_caterpillar_realization(verdict):
    bad = []
    confirmed = 0
    for a in range(1, 7):
        for n in range(2 * a, 2 * a + 7):
            t = caterpillar_equal(a, n)
            if not domination_number(t) == qp_number_frontier(t, 1) == a:
                bad.append(("equal", a, n))
            if n <= ORACLE_N:
                prof = chain_profile(t)
                confirmed += 1
                if prof[0] != a or prof[-1] != a:
                    bad.append(("equal/oracle", a, n))
    for a in range(2, 6):
        for b in range(a + 1, 2 * a):
            for n in range(2 * b + 1, 2 * b + 5):
                t = caterpillar_gap(a, b, n)
                if domination_number(t) != a or qp_number_frontier(t, 1) != b:
                    bad.append(("gap", a, b, n))
                if n <= ORACLE_N:
                    prof = chain_profile(t)
                    confirmed += 1
                    if prof[0] != b or prof[-1] != a:
                        bad.append(("gap/oracle", a, b, n))
    verdict(10, not bad, f"all parameter ranges, {confirmed} trees oracle-confirmed, failures: {bad[:5]}")


def test_criterion_11_chain_patterns(verdict):
    bad = []
    realized = 0
    for delta in (4, 5):
        for flags in product("=>", repeat=delta - 1):
            t = chain_for_pattern(delta, flags)
            rep = qp_chain(t)
            if t.max_degree != delta or rep.flags() != list(flags):
                bad.append((delta, "".join(flags)))
            else:
                realized += 1
    verdict(11, not bad and realized == 8 + 16, f"{realized}/24 sign patterns realized for delta 4 and 5, failures: {bad}")


def test_criterion_12_linear_time(verdict):
    qp_number_frontier(path(5), 3)  # compile before timing
    sizes = [100_000, 200_000, 400_000, 800_000]
    medians = []
    for n in sizes:
        rt = root_and_renumber(random_tree(n, n), 1).rooted
        runs = []
        for _ in range(5):
            t0 = time.perf_counter()
            qp_number_frontier(rt, 3)
            runs.append(time.perf_counter() - t0)
        medians.append(statistics.median(runs))
    ratios = [b / a for a, b in zip(medians, medians[1:])]
    big = random_tree(1_000_000, 12)
    t0 = time.perf_counter()
    qp_number_frontier(big, 3)  # includes rooting and renumbering
    full = time.perf_counter() - t0
    verdict(
        12,
        all(r <= 3.0 for r in ratios) and full < 2.0,
        "doubling ratios " + ", ".join(f"{r:.2f}" for r in ratios) + f"; n=10^6 end to end {full * 1e3:.0f} ms",
    )


def _bits(vertices) -> int:
    return sum(1 << (v - 1) for v in vertices)


def _lemma_failures(t) -> dict[str, bool]:
    prof = subset_profile(t)
    masks = np.arange(prof.size, dtype=np.int64)
    sizes = np.bitwise_count(masks)
    dom = prof >= 0
    gamma = int(sizes[dom].min())
    codes = masks[dom & (sizes == gamma)]
    perfect = masks[(prof == 0) | (prof == 1)]
    strong = _bits(strong_support_vertices(t))
    leaf = _bits(leaves(t))
    closure_ok = True
    for c in codes.tolist():
        closed = _bits(perfect_closure(t, {v for v in range(1, t.n + 1) if c >> (v - 1) & 1}))
        supersets = perfect[(perfect & c) == c]
        closure_ok &= bool(np.all((supersets & closed) == closed))
    return {
        "strong_in_codes": bool(np.all((codes & strong) == strong)),
        "leafless_code": bool(np.any((codes & leaf) == 0)),
        "gamma_ge_supports": gamma >= len(support_vertices(t)),
        "closure_minimal": closure_ok,
    }


def test_criterion_13_structural_lemmas(verdict):
    failures: dict[str, list] = {}
    trees = 0
    for n in range(2, 9):  # support vertices are defined from n = 2
        for t in all_labeled_trees(n):
            trees += 1
            for name, ok in _lemma_failures(t).items():
                if not ok:
                    failures.setdefault(name, []).append(t.edges())
    # P2 has two support vertices but gamma = 1, and every vertex is a leaf
    p2 = [[(1, 2)]]
    verdict(
        13,
        failures == {"leafless_code": p2, "gamma_ge_supports": p2},
        f"{trees} labeled trees 2<=n<=8; all four lemmas hold for n>=3; "
        f"n=2 exceptions (P2 only): {sorted(failures)}",
    )

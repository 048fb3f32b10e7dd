"""Desk-scale experiments: exhaustive cylinder check and a small-support search."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from .errors import ScaleRefused
from .geometry import check_prime, enumerate_lines, enumerate_planes
from .structure import contains_full_line, is_cylinder, skew_lines_construction
from .weights import WeightZ, is_p_divisible

SCC_MAX_P = 3


@dataclass
class SearchReport:
    p: int
    candidates_examined: int = 0
    violations: list = field(default_factory=list)
    best: Optional[tuple] = None
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)


def _scc_tables(p):
    n = p**3
    planes = enumerate_planes(p)
    members = [[int(i) for i in h.indices()] for h in planes]
    planes_of = [[] for _ in range(n)]
    for r, pts in enumerate(members):
        for i in pts:
            planes_of[i].append(r)
    last = [max(pts) for pts in members]
    closing = [[r for r in range(len(planes)) if last[r] == i] for i in range(n)]
    return planes_of, closing, len(planes)


def _scc_subtree(p: int, first: int):
    """All p-divisible p^2-sets whose least point index is ``first``.

    Returns (accounted candidates, divisible sets as index tuples, nodes visited).
    Candidates cut off by pruning are counted with a binomial, so the totals
    over every ``first`` add up to C(p^3, p^2).
    """
    n, k = p**3, p * p
    planes_of, closing, n_planes = _scc_tables(p)
    counts = [0] * n_planes
    # undecided points left in each plane
    open_pts = [0] * n_planes
    for i in range(first, n):
        for r in planes_of[i]:
            open_pts[r] += 1
    for i in range(first):
        for r in closing[i]:
            if counts[r] % p:
                return comb(n - first - 1, k - 1), [], 0
    chosen = []
    found = []
    stats = {"accounted": 0, "nodes": 0}

    def feasible(i):
        for r in planes_of[i]:
            need = (-counts[r]) % p
            if need > open_pts[r]:
                return False
        return True

    def visit(i, remaining):
        stats["nodes"] += 1
        if remaining == 0:
            # everything else is excluded; remaining planes must already be divisible
            if all(c % p == 0 for c in counts):
                found.append(tuple(chosen))
            stats["accounted"] += 1
            return
        if n - i < remaining:
            return
        for take in (1, 0):
            if take == 0 and n - i - 1 < remaining:
                continue
            if take:
                chosen.append(i)
                for r in planes_of[i]:
                    counts[r] += 1
            for r in planes_of[i]:
                open_pts[r] -= 1
            ok = all(counts[r] % p == 0 for r in closing[i]) and feasible(i)
            if ok:
                visit(i + 1, remaining - take)
            else:
                stats["accounted"] += comb(n - i - 1, remaining - take)
            for r in planes_of[i]:
                open_pts[r] += 1
            if take:
                chosen.pop()
                for r in planes_of[i]:
                    counts[r] -= 1

    chosen.append(first)
    for r in planes_of[first]:
        counts[r] += 1
        open_pts[r] -= 1
    if all(counts[r] % p == 0 for r in closing[first]) and feasible(first):
        visit(first + 1, k - 1)
    else:
        stats["accounted"] += comb(n - first - 1, k - 1)
    return stats["accounted"], found, stats["nodes"]


def exhaustive_scc_check(p: int, workers: int = 1) -> SearchReport:
    """Check that every p-divisible set of p^2 points is a cylinder (p <= 3).

    Backtracks over points in index order, closing each plane's residue test
    as soon as its last point is decided and pruning planes that can no longer
    reach a multiple of p. Work is split by the least chosen point.
    """
    p = check_prime(p)
    if p > SCC_MAX_P:
        raise ScaleRefused(f"exhaustive check is limited to p <= {SCC_MAX_P}")
    start = time.perf_counter()
    n, k = p**3, p * p
    firsts = list(range(n - k + 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scc_subtree, [p] * len(firsts), firsts))
    else:
        parts = [_scc_subtree(p, f) for f in firsts]
    report = SearchReport(p)
    divisible = []
    nodes = 0
    for accounted, found, visited in parts:
        report.candidates_examined += accounted
        divisible.extend(found)
        nodes += visited
    for pts in sorted(divisible):
        vals = np.zeros(n, dtype=np.int64)
        vals[list(pts)] = 1
        w = WeightZ(p, vals)
        assert is_p_divisible(w).divisible
        if is_cylinder(w) is None:
            report.violations.append(w)
    report.extra = {"divisible_sets": len(divisible), "nodes_visited": nodes,
                    "total_candidates": comb(n, k)}
    report.elapsed = time.perf_counter() - start
    return report


def _valid_small_set(w: WeightZ) -> bool:
    return w.is_set() and w.support_size() > 0 and contains_full_line(w) is None


def min_support_search(p: int, max_support: int, budget: int = 2000, seed: int = 0,
                       seed_weights=None) -> SearchReport:
    """Heuristic search for small 0/1 integer combinations of lines with no full line.

    Starts from skew-line constructions (identity plus random bijections) and
    any ``seed_weights``, then random-walks on line coefficients, accepting
    moves that do not worsen a penalty score. The incumbent is the best valid
    set found; nothing is claimed about optimality.
    """
    p = check_prime(p)
    report = SearchReport(p)
    if budget <= 0:
        return report
    start = time.perf_counter()
    rng = random.Random(seed)
    lines = enumerate_lines(p)
    idx = [line.indices() for line in lines]

    def score(vals):
        bad = int(-vals[vals < 0].sum()) + int((vals[vals > 1] - 1).sum())
        support = int(np.count_nonzero(vals))
        return 4 * p * bad + support + (p**3 if support == 0 else 0)

    def consider(vals, origin):
        w = WeightZ(p, vals)
        report.candidates_examined += 1
        if w.support_size() < max_support and _valid_small_set(w):
            if report.best is None or w.support_size() < report.best[1]:
                report.best = (w, w.support_size())
                report.extra["origin"] = origin
            return True
        return False

    starts = []
    skew = skew_lines_construction(p)
    starts.append(("skew-identity", skew.values.copy()))
    if not _valid_small_set(skew):
        report.extra["identity_seed_rejected"] = "contains a full line" \
            if skew.is_set() else "not 0/1-valued"
    for w in seed_weights or []:
        starts.append(("seed", np.array(w.values, dtype=np.int64)))
    for _ in range(min(8, budget)):
        perm = list(range(p))
        rng.shuffle(perm)
        starts.append(("skew-random", skew_lines_construction(p, perm).values.copy()))

    steps = 0
    while steps < budget:
        origin, vals = starts[steps % len(starts)]
        vals = vals.copy()
        consider(vals, origin)
        current = score(vals)
        for _ in range(max(1, budget // len(starts))):
            if steps >= budget:
                break
            steps += 1
            j = rng.randrange(len(lines))
            delta = rng.choice((-1, 1))
            vals[idx[j]] += delta
            new = score(vals)
            if new <= current or rng.random() < 0.01:
                current = new
                if new < 4 * p:
                    consider(vals, origin + "+walk")
            else:
                vals[idx[j]] -= delta
    report.elapsed = time.perf_counter() - start
    return report


def skew_bijection_survey(p: int, samples: int = 50, seed: int = 0) -> dict:
    """How often the skew construction is a set without full lines, over sampled bijections."""
    p = check_prime(p)
    rng = random.Random(seed)
    tally = {"samples": 0, "set": 0, "no_full_line": 0, "affine": 0, "affine_with_full_line": 0}
    for _ in range(samples):
        perm = list(range(p))
        rng.shuffle(perm)
        w = skew_lines_construction(p, perm)
        affine = all((perm[i] - perm[0] - i * (perm[1] - perm[0])) % p == 0 for i in range(p))
        full = contains_full_line(w) is not None
        tally["samples"] += 1
        tally["set"] += w.is_set()
        tally["no_full_line"] += not full
        tally["affine"] += affine
        tally["affine_with_full_line"] += affine and full
    return tally

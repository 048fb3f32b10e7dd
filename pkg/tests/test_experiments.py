import itertools
from math import comb

import pytest

from cylinderlab.errors import ScaleRefused
from cylinderlab.experiments import (
    exhaustive_scc_check, min_support_search, skew_bijection_survey,
)
from cylinderlab.structure import contains_full_line

from . import oracles


def distinct_cylinders(p):
    """Every union of p parallel lines, as point sets, straight from the brute-force lines."""
    by_direction = {}
    for line in oracles.all_line_point_sets(p):
        pts = sorted(line)
        d = tuple((pts[1][i] - pts[0][i]) % p for i in range(3))
        lead = next(c for c in d if c)
        inv = pow(lead, -1, p)
        by_direction.setdefault(tuple(c * inv % p for c in d), []).append(line)
    found = set()
    for lines in by_direction.values():
        for chosen in itertools.combinations(lines, p):
            found.add(frozenset().union(*chosen))
    return found


@pytest.mark.parametrize("p,expected", [(2, 14), (3, 975)])
def test_cylinder_count_oracle(p, expected):
    # planes are cylinders in p + 1 directions and get counted once
    assert len(distinct_cylinders(p)) == expected
    assert expected == (p * p + p + 1) * comb(p * p, p) - p * (p * p + p + 1) * p


def test_scc_p2():
    r = exhaustive_scc_check(2)
    assert r.candidates_examined == 70
    assert r.violations == []
    assert r.extra["divisible_sets"] == 14


def test_scc_p3_matches_cylinder_count():
    r = exhaustive_scc_check(3)
    assert r.candidates_examined == comb(27, 9) == r.extra["total_candidates"]
    assert r.violations == []
    assert r.extra["divisible_sets"] == len(distinct_cylinders(3))


def test_scc_workers_agree():
    a = exhaustive_scc_check(3, workers=1)
    b = exhaustive_scc_check(3, workers=2)
    assert (a.candidates_examined, a.extra) == (b.candidates_examined, b.extra)


def test_scc_refuses_large_p():
    with pytest.raises(ScaleRefused):
        exhaustive_scc_check(5)


def test_minsearch_zero_budget():
    r = min_support_search(5, 25, budget=0)
    assert r.best is None and r.candidates_examined == 0


def test_minsearch_rejects_identity_seed():
    r = min_support_search(3, 9, budget=200)
    assert "identity_seed_rejected" in r.extra
    if r.best is not None:
        w, support = r.best
        assert w.is_set() and contains_full_line(w) is None and support < 9


def test_minsearch_p5_incumbent():
    r = min_support_search(5, 25, budget=2000, seed=0)
    assert r.best is not None
    w, support = r.best
    assert support <= 15 and support == w.support_size()
    assert w.is_set() and contains_full_line(w) is None


def test_minsearch_deterministic():
    a = min_support_search(5, 25, budget=300, seed=4)
    b = min_support_search(5, 25, budget=300, seed=4)
    assert a.best[1] == b.best[1] and a.candidates_examined == b.candidates_examined


def test_skew_survey():
    t = skew_bijection_survey(5, samples=60, seed=1)
    assert t["samples"] == t["set"] == 60
    assert t["no_full_line"] == t["samples"] - t["affine"]
    assert t["affine_with_full_line"] == t["affine"]
    t = skew_bijection_survey(3, samples=10)
    assert t["affine"] == t["samples"] and t["no_full_line"] == 0

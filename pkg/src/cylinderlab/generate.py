"""Seeded test-instance generators."""
from __future__ import annotations

import random

import numpy as np

from .decompose import DIFFS, span_family
from .geometry import (
    canonical_direction, check_prime, enumerate_directions, enumerate_lines, enumerate_planes,
    lines_with_direction,
)
from .weights import WeightFp, WeightZ, indicator


def random_cylinder(p: int, rng: random.Random, direction=None) -> WeightZ:
    p = check_prime(p)
    d = rng.choice(enumerate_directions(p)) if direction is None else canonical_direction(direction, p)
    vals = np.zeros(p**3, dtype=np.int64)
    for line in rng.sample(lines_with_direction(d, p), p):
        vals[line.indices()] = 1
    return WeightZ(p, vals)


def random_plane(p: int, rng: random.Random) -> WeightZ:
    return indicator(rng.choice(enumerate_planes(check_prime(p))))


def random_line(p: int, rng: random.Random) -> WeightZ:
    return indicator(rng.choice(enumerate_lines(check_prime(p))))


def random_divisible(p: int, rng: random.Random, terms: int | None = None,
                     plane_shift: bool = False) -> WeightFp:
    """Random F_p-combination of parallel-line differences, optionally plus a plane."""
    p = check_prime(p)
    fam = span_family(DIFFS, p)
    mat = fam.matrix()
    if terms is None:
        coeffs = np.array([rng.randrange(p) for _ in range(len(fam))], dtype=np.int64)
        vals = coeffs @ mat
    else:
        vals = np.zeros(p**3, dtype=np.int64)
        for _ in range(terms):
            vals += rng.randrange(1, p) * mat[rng.randrange(len(fam))] if p > 2 \
                else mat[rng.randrange(len(fam))]
    if plane_shift:
        vals += indicator(rng.choice(enumerate_planes(p))).values
    return WeightFp(p, vals)


def random_multiset(p: int, rng: random.Random, moves: int = 6) -> WeightZ:
    """Nonnegative p-divisible multiset of total p^2: a plane moved by parallel differences.

    Each move adds ``1_l1 - 1_l2`` for a random line l2 fully inside the
    current support and a random l1 parallel to it, so every step stays
    nonnegative.
    """
    p = check_prime(p)
    vals = indicator(rng.choice(enumerate_planes(p))).values.copy()
    lines = enumerate_lines(p)
    for _ in range(moves):
        full = [line for line in lines if (vals[line.indices()] >= 1).all()]
        l2 = rng.choice(full)
        l1 = rng.choice([x for x in lines_with_direction(l2.direction, p) if x != l2])
        vals[l2.indices()] -= 1
        vals[l1.indices()] += 1
    return WeightZ(p, vals)

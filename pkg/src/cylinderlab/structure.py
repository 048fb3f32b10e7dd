"""Geometric structure of point sets: cylinders, directions, full lines, tilings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidBijection, PreconditionViolated
from .geometry import (
    Direction, Point, canonical_direction, check_prime, enumerate_directions, enumerate_lines,
    line_through, lines_with_direction,
)
from .weights import WeightZ, indicator


@dataclass(frozen=True)
class DirectionReport:
    determined: frozenset
    undetermined: frozenset


def _require_set(s: WeightZ, size: Optional[int] = None):
    if not s.is_set():
        raise PreconditionViolated("expected a 0/1-valued weight")
    if size is not None and s.total_weight() != size:
        raise PreconditionViolated(f"expected {size} points, got {s.total_weight()}")


def is_cylinder(s: WeightZ) -> Optional[Direction]:
    """First direction d such that S is a union of p full lines parallel to d."""
    p = s.p
    _require_set(s, p * p)
    for d in enumerate_directions(p):
        fibers = [int(s.values[line.indices()].sum()) for line in lines_with_direction(d, p)]
        if all(f in (0, p) for f in fibers):
            return d
    return None


def determined_directions(s: WeightZ) -> DirectionReport:
    p = s.p
    _require_set(s)
    pts = s.support()
    found = set()
    for a, b in itertools.combinations(pts, 2):
        found.add(canonical_direction([b[i] - a[i] for i in range(3)], p))
    every = set(enumerate_directions(p))
    return DirectionReport(frozenset(found), frozenset(every - found))


def contains_full_line(w: WeightZ):
    """First line (enumeration order) on which every point has weight >= 1, or None."""
    positive = w.values >= 1
    for line in enumerate_lines(w.p):
        if positive[line.indices()].all():
            return line
    return None


def skew_lines_construction(p: int, bijection=None) -> WeightZ:
    """``-1_l1 - 1_l2 + sum_i 1_(line through (i,0,0) and (0,1,sigma(i)))``.

    ``l1 = {(i,0,0)}`` and ``l2 = {(0,1,i)}``; ``bijection`` defaults to the
    identity. The result always has total weight p(p-2).
    """
    p = check_prime(p)
    sigma = list(range(p)) if bijection is None else [int(v) for v in bijection]
    if sorted(sigma) != list(range(p)):
        raise InvalidBijection(f"{bijection!r} is not a permutation of range({p})")
    vals = np.zeros(p**3, dtype=np.int64)
    l1 = line_through((0, 0, 0), (1, 0, 0), p)
    l2 = line_through((0, 1, 0), (0, 1, 1), p)
    vals -= indicator(l1).values + indicator(l2).values
    for i in range(p):
        vals += indicator(line_through((i, 0, 0), (0, 1, sigma[i]), p)).values
    return WeightZ(p, vals)


def _points(points, p):
    return {Point(*(int(c) % p for c in pt)) for pt in points}


def _differences(points, p):
    return {tuple((a[i] - b[i]) % p for i in range(3)) for a in points for b in points}


def is_tiling_pair(a_set, b_set, p: int) -> bool:
    """Difference criterion: |A||B| = p^3 and (A-A) & (B-B) = {0}."""
    a_set, b_set = _points(a_set, p), _points(b_set, p)
    if len(a_set) * len(b_set) != p**3:
        return False
    return _differences(a_set, p) & _differences(b_set, p) == {(0, 0, 0)}


def tiles_directly(a_set, b_set, p: int) -> bool:
    """Every point of F_p^3 is a + b in exactly one way."""
    a_set, b_set = _points(a_set, p), _points(b_set, p)
    counts = np.zeros((p, p, p), dtype=np.int64)
    for a in a_set:
        for b in b_set:
            counts[(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p] += 1
    return bool((counts == 1).all())


def point_set_weight(points, p: int) -> WeightZ:
    vals = np.zeros(p**3, dtype=np.int64)
    for pt in _points(points, p):
        vals[(pt[0] * p + pt[1]) * p + pt[2]] = 1
    return WeightZ(p, vals)

"""Integer certificates: point-difference gadgets and the set/multiset lifts.

A ``ZCertificate`` states ``target = 1_H + sum coeff * (1_l1 - 1_l2)`` with
every ``l1 || l2``. ``verify_certificate`` rechecks that statement by walking
the lines point by point, without touching any of the producer's caches.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .decompose import decompose_p_divisible
from .errors import (
    DegeneratePair, LiftObstruction, NotAMultiset, PreconditionViolated, SizeViolation,
)
from .geometry import (
    Line, Plane, Point, canonical_direction, directions_in_plane, enumerate_planes,
    first_plane_containing, lines_in_plane, make_line, point_at,
)
from .weights import WeightFp, WeightZ, indicator, is_p_divisible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointDiffGadget:
    """Signed parallel pairs ``+1_l - 1_l'`` summing to ``p*1_a - p*1_b``."""

    a: Point
    b: Point
    host_plane: Plane
    pairs: tuple

    def diff_terms(self) -> list:
        return [(l1, l2, 1) for l1, l2 in self.pairs]

    def evaluate(self) -> WeightZ:
        p = self.host_plane.p
        vals = np.zeros(p**3, dtype=np.int64)
        for l1, l2 in self.pairs:
            vals[l1.indices()] += 1
            vals[l2.indices()] -= 1
        return WeightZ(p, vals)


@dataclass(frozen=True)
class ZCertificate:
    p: int
    base_plane: Optional[Plane]
    diff_terms: tuple
    declared_target: WeightZ
    info: dict = field(default_factory=dict, compare=False)

    def evaluate(self) -> WeightZ:
        p = self.p
        vals = np.zeros(p**3, dtype=np.int64)
        if self.base_plane is not None:
            vals[self.base_plane.indices()] += 1
        for l1, l2, c in self.diff_terms:
            vals[l1.indices()] += c
            vals[l2.indices()] -= c
        return WeightZ(p, vals)


def point_difference_certificate(a, b, p: int) -> PointDiffGadget:
    a, b = Point(*(x % p for x in a)), Point(*(x % p for x in b))
    if a == b:
        raise DegeneratePair("point difference needs two distinct points")
    host = first_plane_containing([a, b], p)
    ab = canonical_direction([b[i] - a[i] for i in range(3)], p)
    pairs = tuple((make_line(a, d, p), make_line(b, d, p))
                  for d in directions_in_plane(host) if d != ab)
    return PointDiffGadget(a, b, host, pairs)


def p_zero_sum_certificate(u: WeightZ) -> list:
    """Gadgets whose evaluations add up to ``p * u`` for a zero-sum ``u``.

    Repeatedly pairs the least point with positive value against the least
    point with negative value.
    """
    if u.total_weight() != 0:
        raise PreconditionViolated(f"weights sum to {u.total_weight()}, expected 0")
    p = u.p
    rest = u.values.copy()
    gadgets = []
    cache = {}
    while True:
        pos = np.flatnonzero(rest > 0)
        if pos.size == 0:
            break
        i, j = int(pos[0]), int(np.flatnonzero(rest < 0)[0])
        k = int(min(rest[i], -rest[j]))
        if (i, j) not in cache:
            cache[(i, j)] = point_difference_certificate(point_at(i, p), point_at(j, p), p)
        gadgets.extend([cache[(i, j)]] * k)
        rest[i] -= k
        rest[j] += k
    return gadgets


def _merge_terms(terms) -> tuple:
    merged = {}
    for l1, l2, c in terms:
        if l1 == l2 or c == 0:
            continue
        key, sign = ((l1, l2), 1) if l1 < l2 else ((l2, l1), -1)
        merged[key] = merged.get(key, 0) + sign * c
    return tuple((l1, l2, c) for (l1, l2), c in sorted(merged.items()) if c)


def _lifted_diff_terms(residual: WeightFp) -> list:
    comb = decompose_p_divisible(residual)
    gens = comb.family.generators
    return [(gens[i][1], gens[i][2], int(c)) for i, c in comb.terms]


def _evaluate_terms(terms, p) -> np.ndarray:
    vals = np.zeros(p**3, dtype=np.int64)
    for l1, l2, c in terms:
        vals[l1.indices()] += c
        vals[l2.indices()] -= c
    return vals


def _plane_of(w) -> Optional[Plane]:
    """The plane whose indicator equals ``w``, if any."""
    if w.total_weight() != w.p**2 or not w.is_set():
        return None
    pts = w.support()
    for h in enumerate_planes(w.p):
        if all(h.contains(x) for x in pts):
            return h
    return None


def _require_divisible(w):
    report = is_p_divisible(w)
    if not report.divisible:
        raise PreconditionViolated(
            f"not {w.p}-divisible: plane {report.witness} sums to {report.witness_sum}",
            (report.witness, report.witness_sum))


def _negative_mass(v) -> int:
    return int(-v[v < 0].sum())


def repair_negatives(g, p: int, trace=None):
    """Apply gadgets e_{c,d} until ``g`` has no negative entries.

    ``c`` is the least point with g(c) < 0 and ``d`` the least with g(d) >= p.
    Each move keeps the total and every residue mod p, and strictly lowers
    the negative mass; both facts are asserted. ``trace``, if a list,
    receives the negative mass after every move.
    """
    g = np.array(g, dtype=np.int64)
    total = int(g.sum())
    mass = _negative_mass(g)
    cap = p * int(np.abs(g).sum())
    repairs = []
    while mass > 0:
        if len(repairs) >= cap:
            raise LiftObstruction("repair loop exceeded its iteration cap", WeightZ(p, g))
        c = int(np.flatnonzero(g < 0)[0])
        donors = np.flatnonzero(g >= p)
        if donors.size == 0:
            raise LiftObstruction(
                f"g({point_at(c, p)}) = {g[c]} < 0 but no point has g >= {p}", WeightZ(p, g))
        d = int(donors[0])
        new = g.copy()
        new[c] += p
        new[d] -= p
        new_mass = _negative_mass(new)
        assert new_mass < mass
        assert int(new.sum()) == total and np.array_equal(new % p, g % p)
        repairs.append(point_difference_certificate(point_at(c, p), point_at(d, p), p))
        g, mass = new, new_mass
        if trace is not None:
            trace.append(mass)
    return g, repairs


def lift_set(s: WeightZ) -> ZCertificate:
    """Certificate ``1_S = 1_H + integer combination of parallel differences``.

    Reduces ``1_S - 1_H`` mod p, decomposes it over parallel differences,
    lifts coefficients into {0, ..., p-1}, then removes negative values with
    point-difference gadgets ``e_{c,d}`` (c: least point with g < 0, d: least
    point with g >= p) until the lift is 0/1-valued.
    """
    p = s.p
    if not s.is_set():
        raise PreconditionViolated("input is not 0/1-valued")
    if s.total_weight() != p * p:
        raise SizeViolation(f"set has size {s.total_weight()}, expected {p * p}")
    _require_divisible(s)

    host = _plane_of(s) or enumerate_planes(p)[0]
    target = s.values
    if np.array_equal(target, indicator(host).values):
        return ZCertificate(p, host, (), s, {"repairs": 0})

    lifted = _lifted_diff_terms(WeightFp(p, target - indicator(host).values))
    g, repairs = repair_negatives(indicator(host).values + _evaluate_terms(lifted, p), p)
    if not np.array_equal(g, target):
        raise RuntimeError("lift finished without reproducing the input set")
    terms = list(lifted)
    for gadget in repairs:
        terms.extend(gadget.diff_terms())
    log.debug("lift_set p=%d: %d lifted terms, %d repairs", p, len(lifted), len(repairs))
    return ZCertificate(p, host, _merge_terms(terms), s, {"repairs": len(repairs)})


def lift_multiset(w: WeightZ) -> ZCertificate:
    """Certificate for ``w - 1_H`` over parallel differences (size-p^2 multisets)."""
    p = w.p
    if not w.is_multiset():
        neg = point_at(int(np.flatnonzero(w.values < 0)[0]), p)
        raise NotAMultiset(f"negative weight at {neg}", neg)
    if w.total_weight() != p * p:
        raise SizeViolation(f"total weight {w.total_weight()} != {p * p}")
    _require_divisible(w)

    host = _plane_of(w) or enumerate_planes(p)[0]
    if np.array_equal(w.values, indicator(host).values):
        return ZCertificate(p, host, (), w)
    anchor = lines_in_plane(host)[0]

    lifted = _lifted_diff_terms(WeightFp(p, w.values))
    g = _evaluate_terms(lifted, p)
    quotient, remainder = np.divmod(w.values - g, p)
    assert not remainder.any() and quotient.sum() == p
    u = WeightZ(p, quotient - indicator(anchor).values)
    gadgets = p_zero_sum_certificate(u)
    pencil = [(line, anchor, -1) for line in lines_in_plane(host)
              if line.direction == anchor.direction and line != anchor]

    terms = list(lifted)
    for gadget in gadgets:
        terms.extend(gadget.diff_terms())
    terms.extend(pencil)
    return ZCertificate(p, host, _merge_terms(terms), w, {"gadgets": len(gadgets)})


def _line_points(line: Line) -> set:
    p, d, b = line.p, line.direction, line.base
    return {tuple((b[i] + t * d[i]) % p for i in range(3)) for t in range(p)}


def _is_canonical_line(line) -> bool:
    try:
        return line == make_line(line.base, line.direction, line.p)
    except Exception:
        return False


def verify_certificate(cert: ZCertificate) -> bool:
    """Independent check of ``declared_target == 1_H + sum c (1_l1 - 1_l2)``."""
    p = cert.p
    counts = {}
    if cert.base_plane is not None:
        h = cert.base_plane
        if h.p != p:
            return False
        for x in range(p):
            for y in range(p):
                for z in range(p):
                    if (h.a * x + h.b * y + h.c * z + h.d) % p == 0:
                        counts[(x, y, z)] = counts.get((x, y, z), 0) + 1
    for l1, l2, c in cert.diff_terms:
        if l1.p != p or l2.p != p or l1.direction != l2.direction:
            return False
        if not (_is_canonical_line(l1) and _is_canonical_line(l2)):
            return False
        for pt in _line_points(l1):
            counts[pt] = counts.get(pt, 0) + c
        for pt in _line_points(l2):
            counts[pt] = counts.get(pt, 0) - c
    target = cert.declared_target
    if target.p != p:
        return False
    for i in range(p**3):
        x, rest = divmod(i, p * p)
        y, z = divmod(rest, p)
        if counts.get((x, y, z), 0) != int(target.values[i]):
            return False
    return True

"""Weight functions on F_p^3 and the p-divisibility test."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidCylinderSpec, ModulusMismatch
from .geometry import (
    Line, Plane, Point, check_prime, enumerate_planes, make_line, plane_incidence, point_at,
    point_index,
)


class _Weight:
    """Dense vector of p^3 values in lexicographic point order."""

    __slots__ = ("p", "values")

    def __init__(self, p, values):
        p = check_prime(p)
        arr = np.array(values, dtype=np.int64).reshape(-1)
        if arr.shape[0] != p**3:
            raise ValueError(f"expected {p**3} values for p={p}, got {arr.shape[0]}")
        arr = self._normalize(arr, p)
        arr.setflags(write=False)
        self.p = p
        self.values = arr

    @staticmethod
    def _normalize(arr, p):
        return arr

    @classmethod
    def zeros(cls, p):
        return cls(p, np.zeros(p**3, dtype=np.int64))

    def __getitem__(self, pt) -> int:
        if isinstance(pt, (int, np.integer)):
            return int(self.values[pt])
        return int(self.values[point_index(pt, self.p)])

    def __eq__(self, other):
        return (type(self) is type(other) and self.p == other.p
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((type(self).__name__, self.p, self.values.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, support={len(self.support())})"

    def _check(self, other):
        if not isinstance(other, _Weight):
            return NotImplemented
        if other.p != self.p:
            raise ModulusMismatch(f"p={self.p} vs p={other.p}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self.p, self.values + other.values)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self.p, self.values - other.values)

    def __neg__(self):
        return type(self)(self.p, -self.values)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return type(self)(self.p, self.values * int(scalar))

    __rmul__ = __mul__

    def total_weight(self) -> int:
        return int(self.values.sum())

    def support(self) -> list:
        return [point_at(int(i), self.p) for i in np.flatnonzero(self.values)]

    def support_size(self) -> int:
        return int(np.count_nonzero(self.values))


class WeightFp(_Weight):
    """F_p-valued weight; entries are kept reduced into [0, p)."""

    __slots__ = ()

    @staticmethod
    def _normalize(arr, p):
        return arr % p

    def total_weight(self) -> int:
        return int(self.values.sum()) % self.p

    def lift(self) -> "WeightZ":
        return WeightZ(self.p, self.values)


class WeightZ(_Weight):
    __slots__ = ()

    def reduce_mod_p(self) -> WeightFp:
        return WeightFp(self.p, self.values)

    def is_multiset(self) -> bool:
        return bool((self.values >= 0).all())

    def is_set(self) -> bool:
        return bool(((self.values == 0) | (self.values == 1)).all())


def reduce_mod_p(w) -> WeightFp:
    return w if isinstance(w, WeightFp) else WeightFp(w.p, w.values)


@dataclass(frozen=True)
class DivisibilityReport:
    divisible: bool
    witness: Optional[Plane] = None
    witness_sum: Optional[int] = None


@dataclass(frozen=True)
class CylinderSpec:
    """p lines sharing ``direction``, one through each base point (repeats allowed)."""

    direction: tuple
    bases: tuple = field(default_factory=tuple)

    def lines(self, p) -> list:
        if len(self.bases) != p:
            raise InvalidCylinderSpec(f"a cylinder needs exactly {p} fibers, got {len(self.bases)}")
        return [make_line(b, self.direction, p) for b in self.bases]


def plane_sum(w, plane: Plane) -> int:
    if plane.p != w.p:
        raise ModulusMismatch(f"plane over p={plane.p}, weight over p={w.p}")
    s = int(w.values[plane.indices()].sum())
    return s % w.p if isinstance(w, WeightFp) else s


def plane_sums(w) -> np.ndarray:
    """Exact integer sums over every plane, in plane enumeration order."""
    return plane_incidence(w.p) @ w.values


def is_p_divisible(w) -> DivisibilityReport:
    sums = plane_sums(w)
    bad = np.flatnonzero(sums % w.p)
    if bad.size == 0:
        return DivisibilityReport(True)
    first = int(bad[0])
    plane = enumerate_planes(w.p)[first]
    return DivisibilityReport(False, plane, plane_sum(w, plane))


def bilinear(f, g) -> int:
    if f.p != g.p:
        raise ModulusMismatch(f"p={f.p} vs p={g.p}")
    return int((f.values % f.p) @ (g.values % g.p)) % f.p


def indicator(obj, p: Optional[int] = None) -> WeightZ:
    """Characteristic function of a point, line, plane or cylinder spec."""
    if isinstance(obj, (Line, Plane)):
        p = obj.p
        vals = np.zeros(p**3, dtype=np.int64)
        vals[obj.indices()] = 1
        return WeightZ(p, vals)
    if p is None:
        raise ValueError("p is required for point and cylinder indicators")
    p = check_prime(p)
    vals = np.zeros(p**3, dtype=np.int64)
    if isinstance(obj, CylinderSpec):
        for line in obj.lines(p):
            vals[line.indices()] += 1
        return WeightZ(p, vals)
    vals[point_index(Point(*obj), p)] = 1
    return WeightZ(p, vals)


def total_weight(w) -> int:
    return w.total_weight()

"""Points, directions, lines and planes of the affine space F_p^3.

Every object is kept in a canonical form so that equal subspaces compare and
hash equal:

* a direction is scaled so its first nonzero coordinate is 1;
* a line is stored as (direction, lexicographically least point);
* a plane ``ax + by + cz + d = 0`` is scaled so the first nonzero of
  ``(a, b, c)`` is 1.

Points are flattened as ``x*p*p + y*p + z``; this index order is the column
order of every weight vector and generator matrix in the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DegenerateLine, InvalidDirection, InvalidModulus

MAX_PRIME = 97


def check_prime(p) -> int:
    """Validate a modulus by trial division and return it as an int."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise InvalidModulus(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p < 2:
        raise InvalidModulus(f"modulus must be a prime >= 2, got {p}")
    for q in range(2, int(p**0.5) + 1):
        if p % q == 0:
            raise InvalidModulus(f"{p} is not prime")
    return p


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


class Point(NamedTuple):
    x: int
    y: int
    z: int


class Direction(NamedTuple):
    dx: int
    dy: int
    dz: int


def point_index(pt, p: int) -> int:
    return (pt[0] % p) * p * p + (pt[1] % p) * p + (pt[2] % p)


def point_at(index: int, p: int) -> Point:
    x, rest = divmod(index, p * p)
    y, z = divmod(rest, p)
    return Point(x, y, z)


@lru_cache(maxsize=None)
def all_points(p: int) -> tuple:
    return tuple(Point(*t) for t in itertools.product(range(p), repeat=3))


def canonical_direction(v, p: int) -> Direction:
    v = tuple(int(c) % p for c in v)
    lead = next((c for c in v if c), 0)
    if lead == 0:
        raise InvalidDirection("the zero vector has no direction")
    inv = inverse(lead, p)
    return Direction(*((c * inv) % p for c in v))


@lru_cache(maxsize=None)
def enumerate_directions(p: int) -> tuple:
    check_prime(p)
    dirs = set()
    for v in itertools.product(range(p), repeat=3):
        if any(v):
            dirs.add(canonical_direction(v, p))
    return tuple(sorted(dirs))


@dataclass(frozen=True, order=True)
class Line:
    p: int
    direction: Direction
    base: Point

    def points(self) -> list:
        d, b, p = self.direction, self.base, self.p
        return [Point((b[0] + t * d[0]) % p, (b[1] + t * d[1]) % p, (b[2] + t * d[2]) % p)
                for t in range(p)]

    def contains(self, pt) -> bool:
        diff = tuple((pt[i] - self.base[i]) % self.p for i in range(3))
        if not any(diff):
            return True
        try:
            return canonical_direction(diff, self.p) == self.direction
        except InvalidDirection:
            return False

    def indices(self) -> np.ndarray:
        return _line_indices(self)

    def to_text(self) -> str:
        return "L {} {} {} {} {} {} {}".format(self.p, *self.direction, *self.base)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True, order=True)
class Plane:
    p: int
    a: int
    b: int
    c: int
    d: int

    @property
    def normal(self) -> tuple:
        return (self.a, self.b, self.c)

    def value(self, pt) -> int:
        return (self.a * pt[0] + self.b * pt[1] + self.c * pt[2] + self.d) % self.p

    def contains(self, pt) -> bool:
        return self.value(pt) == 0

    def points(self) -> list:
        return [pt for pt in all_points(self.p) if self.contains(pt)]

    def indices(self) -> np.ndarray:
        return _plane_indices(self)

    def to_text(self) -> str:
        return f"P {self.p} {self.a} {self.b} {self.c} {self.d}"

    def __str__(self):
        return self.to_text()


def make_line(point, direction, p: int) -> Line:
    """Canonical line through ``point`` with the given (not necessarily canonical) direction."""
    d = canonical_direction(direction, p)
    pts = [((point[0] + t * d[0]) % p, (point[1] + t * d[1]) % p, (point[2] + t * d[2]) % p)
           for t in range(p)]
    return Line(p, d, Point(*min(pts)))


def make_plane(a, b, c, d, p: int) -> Plane:
    coeffs = [int(v) % p for v in (a, b, c, d)]
    lead = next((v for v in coeffs[:3] if v), 0)
    if lead == 0:
        raise InvalidDirection("plane normal (a, b, c) must be nonzero")
    inv = inverse(lead, p)
    return Plane(p, *((v * inv) % p for v in coeffs))


def line_through(a, b, p: int) -> Line:
    if tuple(x % p for x in a) == tuple(x % p for x in b):
        raise DegenerateLine("a line needs two distinct points")
    return make_line(a, [b[i] - a[i] for i in range(3)], p)


def are_parallel(l1: Line, l2: Line) -> bool:
    return l1.p == l2.p and l1.direction == l2.direction


@lru_cache(maxsize=None)
def _lines_with_direction(d: Direction, p: int) -> tuple:
    seen = set()
    for pt in all_points(p):
        seen.add(make_line(pt, d, p))
    return tuple(sorted(seen))


def lines_with_direction(d, p: int) -> tuple:
    """The p^2 pairwise disjoint lines parallel to ``d``, sorted by base point."""
    return _lines_with_direction(canonical_direction(d, p), check_prime(p))


@lru_cache(maxsize=None)
def enumerate_lines(p: int) -> tuple:
    return tuple(line for d in enumerate_directions(p) for line in lines_with_direction(d, p))


@lru_cache(maxsize=None)
def enumerate_planes(p: int) -> tuple:
    return tuple(Plane(p, *n, d) for n in enumerate_directions(p) for d in range(p))


@lru_cache(maxsize=None)
def _line_indices(line: Line) -> np.ndarray:
    idx = np.array(sorted(point_index(pt, line.p) for pt in line.points()), dtype=np.int64)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=None)
def _plane_indices(plane: Plane) -> np.ndarray:
    idx = np.array([point_index(pt, plane.p) for pt in plane.points()], dtype=np.int64)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=None)
def plane_incidence(p: int) -> np.ndarray:
    """0/1 matrix with one row per plane (enumeration order) and one column per point."""
    planes = enumerate_planes(p)
    m = np.zeros((len(planes), p**3), dtype=np.int64)
    for r, h in enumerate(planes):
        m[r, h.indices()] = 1
    m.setflags(write=False)
    return m


def directions_in_plane(plane: Plane) -> list:
    p = plane.p
    return [d for d in enumerate_directions(p)
            if (plane.a * d[0] + plane.b * d[1] + plane.c * d[2]) % p == 0]


def lines_in_plane(plane: Plane) -> list:
    """Lines contained in ``plane``, in global line enumeration order."""
    out = []
    for d in directions_in_plane(plane):
        out.extend(line for line in lines_with_direction(d, plane.p) if plane.contains(line.base))
    return sorted(out)


def lines_through_point(pt, p: int) -> list:
    return [make_line(pt, d, p) for d in enumerate_directions(p)]


def first_plane_containing(points, p: int) -> Plane:
    for h in enumerate_planes(p):
        if all(h.contains(pt) for pt in points):
            return h
    raise DegenerateLine("no plane contains the given points")


def parse_line(text: str) -> Line:
    parts = text.split()
    if len(parts) != 8 or parts[0] != "L":
        raise ValueError(f"malformed line text {text!r}")
    p, dx, dy, dz, bx, by, bz = (int(v) for v in parts[1:])
    check_prime(p)
    line = make_line((bx, by, bz), (dx, dy, dz), p)
    if line.direction != (dx, dy, dz) or line.base != (bx, by, bz):
        raise ValueError(f"line text {text!r} is not in canonical form")
    return line


def parse_plane(text: str) -> Plane:
    parts = text.split()
    if len(parts) != 6 or parts[0] != "P":
        raise ValueError(f"malformed plane text {text!r}")
    p, a, b, c, d = (int(v) for v in parts[1:])
    check_prime(p)
    plane = make_plane(a, b, c, d, p)
    if plane != Plane(p, a, b, c, d):
        raise ValueError(f"plane text {text!r} is not in canonical form")
    return plane

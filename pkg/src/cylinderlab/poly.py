"""Reduced polynomials in x, y, z over F_p and their link to weight functions.

A function F_p^3 -> F_p is the same thing as a polynomial whose degree in each
variable is at most p-1. Conversion uses the 1-D evaluation matrix
``V[a, i] = a**i`` (with ``0**0 == 1``) applied along each axis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import DegreeTooHigh
from .fplinalg import rref
from .geometry import Plane, check_prime, enumerate_planes, inverse, make_plane
from .weights import WeightFp, bilinear, indicator, is_p_divisible, reduce_mod_p

NEG_INF = float("-inf")


class ReducedPoly:
    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        p = check_prime(p)
        arr = np.array(coeffs, dtype=np.int64).reshape(p, p, p) % p
        arr.setflags(write=False)
        self.p = p
        self.coeffs = arr

    @classmethod
    def from_terms(cls, p, terms):
        """Build from ``{(i, j, k): c}``; exponents must already be at most p-1."""
        arr = np.zeros((p, p, p), dtype=np.int64)
        for (i, j, k), c in dict(terms).items():
            if max(i, j, k) >= p or min(i, j, k) < 0:
                raise ValueError(f"exponent {(i, j, k)} out of range for p={p}")
            arr[i, j, k] = (arr[i, j, k] + c) % p
        return cls(p, arr)

    @classmethod
    def monomial(cls, p, i, j, k):
        return cls.from_terms(p, {(i, j, k): 1})

    def terms(self) -> list:
        """Nonzero ``(i, j, k, c)`` in lexicographic exponent order."""
        return [(int(i), int(j), int(k), int(self.coeffs[i, j, k]))
                for i, j, k in zip(*np.nonzero(self.coeffs))]

    def __eq__(self, other):
        return (isinstance(other, ReducedPoly) and self.p == other.p
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.p, self.coeffs.tobytes()))

    def __repr__(self):
        return f"ReducedPoly(p={self.p}, terms={self.terms()})"


@lru_cache(maxsize=None)
def _vandermonde(p: int):
    v = np.array([[pow(a, i, p) for i in range(p)] for a in range(p)], dtype=np.int64)
    reduced, _ = rref(np.concatenate([v, np.eye(p, dtype=np.int64)], axis=1), p, ncols=p)
    v_inv = reduced[:, p:].copy()
    v.setflags(write=False)
    v_inv.setflags(write=False)
    return v, v_inv


def _apply_axes(mat, cube, p):
    out = np.einsum("ai,ijk->ajk", mat, cube) % p
    out = np.einsum("bj,ajk->abk", mat, out) % p
    return np.einsum("ck,abk->abc", mat, out) % p


def poly_from_weight(w) -> ReducedPoly:
    p = w.p
    _, v_inv = _vandermonde(p)
    return ReducedPoly(p, _apply_axes(v_inv, (w.values % p).reshape(p, p, p), p))


def weight_from_poly(q: ReducedPoly) -> WeightFp:
    v, _ = _vandermonde(q.p)
    return WeightFp(q.p, _apply_axes(v, q.coeffs, q.p).reshape(-1))


def total_degree(q: ReducedPoly):
    """Largest i+j+k with a nonzero coefficient; ``NEG_INF`` for the zero polynomial."""
    idx = np.nonzero(q.coeffs)
    if idx[0].size == 0:
        return NEG_INF
    return int((idx[0] + idx[1] + idx[2]).max())


def multinomial(n: int, parts) -> int:
    rest = n - sum(parts)
    out = factorial(n) // factorial(rest)
    for k in parts:
        out //= factorial(k)
    return out


def plane_polynomial(plane: Plane) -> ReducedPoly:
    """Expansion of ``1 - (ax+by+cz+d)^(p-1)``; exponents never exceed p-1."""
    p, (a, b, c, d) = plane.p, (plane.a, plane.b, plane.c, plane.d)
    terms = {(0, 0, 0): 1}
    for i, j, k in itertools.product(range(p), repeat=3):
        if i + j + k > p - 1:
            continue
        coef = multinomial(p - 1, (i, j, k)) * pow(a, i, p) * pow(b, j, p) * pow(c, k, p) \
            * pow(d, p - 1 - i - j - k, p)
        terms[(i, j, k)] = (terms.get((i, j, k), 0) - coef) % p
    return ReducedPoly.from_terms(p, terms)


def point_polynomial(pt, p: int) -> ReducedPoly:
    """Expansion of the product of ``1 - (x_t - a_t)^(p-1)`` over the three coordinates."""
    factors = []
    for a in pt:
        f = [(-comb(p - 1, i) * pow(-a, p - 1 - i, p)) % p for i in range(p)]
        f[0] = (f[0] + 1) % p
        factors.append(f)
    coeffs = np.einsum("i,j,k->ijk", *(np.array(f, dtype=np.int64) for f in factors)) % p
    return ReducedPoly(p, coeffs)


@dataclass(frozen=True)
class PlaneCombination:
    """``sum(coef * 1_H) + constant_adjust`` equals ``scale`` times the target monomial.

    The combination's own evaluation (``evaluate``) already divides by ``scale``,
    so it reproduces the monomial exactly.
    """

    p: int
    exponents: tuple
    terms: tuple
    constant_adjust: int = 0
    scale: int = 1

    def evaluate(self) -> WeightFp:
        p = self.p
        vals = np.full(p**3, self.constant_adjust % p, dtype=np.int64)
        for plane, coef in self.terms:
            vals[plane.indices()] += coef
        return WeightFp(p, vals)


def monomial_via_planes(i: int, j: int, k: int, p: int, d: int = 1) -> PlaneCombination:
    """Write x^i y^j z^k (i+j+k <= p-1) as an F_p-combination of plane indicators.

    Sums ``a^s b^t c^u * 1_{ax+by+cz+d=0}`` over all normals with
    ``s, t, u = p-1-i, p-1-j, p-1-k``; only the target monomial survives,
    multiplied by the multinomial coefficient (p-1)!/(i! j! k! (p-1-i-j-k)!).
    The constant monomial is the pencil of p parallel planes x = const.
    """
    p = check_prime(p)
    if min(i, j, k) < 0:
        raise ValueError("exponents must be nonnegative")
    if i + j + k > p - 1:
        raise DegreeTooHigh(f"x^{i} y^{j} z^{k} has degree {i + j + k} > {p - 1}")
    if d % p == 0:
        raise ValueError("the fixed plane offset d must be nonzero")
    if i == j == k == 0:
        pencil = tuple((make_plane(1, 0, 0, c, p), 1) for c in range(p))
        return PlaneCombination(p, (0, 0, 0), pencil)

    s, t, u = p - 1 - i, p - 1 - j, p - 1 - k
    scale = multinomial(p - 1, (i, j, k)) * pow(d, p - 1 - i - j - k, p) % p
    inv_scale = inverse(scale, p)
    terms = {}
    for a, b, c in itertools.product(range(p), repeat=3):
        if a == b == c == 0:
            # "plane" 0 = d is empty for d != 0
            continue
        w = pow(a, s, p) * pow(b, t, p) * pow(c, u, p) % p
        if w:
            plane = make_plane(a, b, c, d, p)
            terms[plane] = (terms.get(plane, 0) + w * inv_scale) % p
    ordered = tuple((h, terms[h]) for h in sorted(terms) if terms[h])
    return PlaneCombination(p, (i, j, k), ordered, 0, scale)


def orthogonal_to_all_planes(w) -> bool:
    """Direct test: <w, 1_H> = 0 mod p for every plane H."""
    w = reduce_mod_p(w)
    return all(bilinear(w, reduce_mod_p(indicator(h))) == 0 for h in enumerate_planes(w.p))


def _degree(w):
    return total_degree(poly_from_weight(reduce_mod_p(w)))


def in_S1(w) -> bool:
    return _degree(w) <= w.p - 1


def in_S1_perp(w) -> bool:
    by_degree = _degree(w) <= 2 * w.p - 3
    by_planes = is_p_divisible(reduce_mod_p(w)).divisible
    if by_degree != by_planes:
        raise RuntimeError("degree bound and plane orthogonality disagree")
    return by_degree


def in_S2(w) -> bool:
    return _degree(w) <= 2 * w.p - 2


def power_sum(s: int, p: int) -> int:
    """sum of a^s over F_p, reduced into [0, p); 0^0 counts as 1."""
    return sum(pow(a, s, p) for a in range(p)) % p


def monomial_count(p: int, max_total: int) -> int:
    return sum(1 for e in itertools.product(range(p), repeat=3) if sum(e) <= max_total)

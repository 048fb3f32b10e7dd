"""F_p-linear decompositions over families of planes, lines and line differences."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ModulusMismatch, NotRepresentable, PreconditionViolated
from .fplinalg import SpanSolver
from .geometry import (
    Line, Plane, check_prime, enumerate_directions, enumerate_lines, enumerate_planes,
    lines_with_direction, parse_line, parse_plane,
)
from .weights import WeightFp, is_p_divisible, reduce_mod_p

PLANES = "planes"
LINES = "lines"
DIFFS = "diffs"
CYLINDER_TYPE = "cylinder-type"
FAMILIES = (PLANES, LINES, DIFFS, CYLINDER_TYPE)


def generator_key(gen) -> str:
    """Text form of a generator: a plane, a line, ``L1 - L2`` or ``L1 + ... + Lp``."""
    if isinstance(gen, (Line, Plane)):
        return gen.to_text()
    if gen[0] == "diff":
        return f"{gen[1].to_text()} - {gen[2].to_text()}"
    return " + ".join(line.to_text() for line in gen[1])


def parse_generator_key(text: str, family: str):
    if family == PLANES:
        return parse_plane(text)
    if family == LINES:
        return parse_line(text)
    if family == DIFFS:
        left, right = text.split(" - ")
        return ("diff", parse_line(left), parse_line(right))
    if family == CYLINDER_TYPE:
        return ("cyl", tuple(parse_line(t) for t in text.split(" + ")))
    raise ValueError(f"unknown family {family!r}")


def generator_vector(gen, p: int) -> np.ndarray:
    vals = np.zeros(p**3, dtype=np.int64)
    if isinstance(gen, (Line, Plane)):
        vals[gen.indices()] = 1
    elif gen[0] == "diff":
        vals[gen[1].indices()] += 1
        vals[gen[2].indices()] -= 1
    else:
        for line in gen[1]:
            vals[line.indices()] += 1
    return vals


@dataclass(frozen=True)
class SpanFamily:
    tag: str
    p: int
    generators: tuple

    def __len__(self):
        return len(self.generators)

    def matrix(self) -> np.ndarray:
        return _matrix(self.tag, self.p)

    def index(self, gen) -> int:
        return _positions(self.tag, self.p)[gen]


@lru_cache(maxsize=None)
def span_family(tag: str, p: int) -> SpanFamily:
    """Generators in deterministic order.

    Differences pair each line with the least line of its parallel class (the
    anchor); cylinder-type generators are ``(p-1) * anchor + line`` for the
    same pairs, i.e. p lines of one direction counted with multiplicity.
    """
    p = check_prime(p)
    if tag == PLANES:
        gens = enumerate_planes(p)
    elif tag == LINES:
        gens = enumerate_lines(p)
    elif tag in (DIFFS, CYLINDER_TYPE):
        gens = []
        for d in enumerate_directions(p):
            anchor, *rest = lines_with_direction(d, p)
            for line in rest:
                if tag == DIFFS:
                    gens.append(("diff", line, anchor))
                else:
                    gens.append(("cyl", (anchor,) * (p - 1) + (line,)))
        gens = tuple(gens)
    else:
        raise ValueError(f"unknown family {tag!r}; expected one of {FAMILIES}")
    return SpanFamily(tag, p, tuple(gens))


@lru_cache(maxsize=None)
def _matrix(tag, p):
    fam = span_family(tag, p)
    m = np.array([generator_vector(g, p) for g in fam.generators], dtype=np.int64)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def _positions(tag, p):
    return {g: i for i, g in enumerate(span_family(tag, p).generators)}


@lru_cache(maxsize=None)
def _solver(tag, p) -> SpanSolver:
    return SpanSolver(_matrix(tag, p), p)


@dataclass(frozen=True)
class FpCombination:
    family: SpanFamily
    terms: tuple
    target: WeightFp

    @property
    def p(self):
        return self.family.p

    def evaluate(self) -> WeightFp:
        p = self.p
        vals = np.zeros(p**3, dtype=np.int64)
        for idx, coef in self.terms:
            vals += coef * generator_vector(self.family.generators[idx], p)
        return WeightFp(p, vals)

    def keyed_terms(self) -> list:
        return [(generator_key(self.family.generators[i]), c) for i, c in self.terms]


@dataclass(frozen=True)
class NotInSpan:
    """``functional`` pairs to zero with every generator and nonzero with ``target``."""

    family: SpanFamily
    target: WeightFp
    functional: WeightFp


def span_dimension(family, p: int | None = None) -> int:
    if isinstance(family, str):
        family = span_family(family, p)
    return _solver(family.tag, family.p).rank


def solve_in_span(w, family):
    """Return an ``FpCombination`` reproducing ``w`` or a ``NotInSpan`` certificate."""
    w = reduce_mod_p(w)
    if isinstance(family, str):
        family = span_family(family, w.p)
    if family.p != w.p:
        raise ModulusMismatch(f"family over p={family.p}, weight over p={w.p}")
    status, vec = _solver(family.tag, family.p).solve(w.values)
    if status == "no":
        return NotInSpan(family, w, WeightFp(w.p, vec))
    terms = tuple((int(i), int(vec[i])) for i in np.flatnonzero(vec))
    return FpCombination(family, terms, w)


def decompose_p_divisible(w) -> FpCombination:
    w = reduce_mod_p(w)
    report = is_p_divisible(w)
    if not report.divisible:
        raise PreconditionViolated(
            f"weight is not {w.p}-divisible: plane {report.witness} sums to {report.witness_sum}",
            (report.witness, report.witness_sum))
    result = solve_in_span(w, span_family(DIFFS, w.p))
    if isinstance(result, NotInSpan):
        raise RuntimeError("divisible weight outside the span of parallel differences")
    return result


def cylinder_type_to_diffs(terms, p: int) -> FpCombination:
    """Rewrite ``sum c(l) 1_l`` over lines of one direction as differences against the anchor.

    ``terms`` is an iterable of ``(Line, coefficient)``; repeated lines are merged.
    Valid only when the coefficients sum to 0 mod p.
    """
    p = check_prime(p)
    merged = {}
    for line, c in terms:
        merged[line] = (merged.get(line, 0) + c) % p
    directions = {line.direction for line in merged}
    if len(directions) > 1:
        raise NotRepresentable("lines of a cylinder-type weight must share one direction")
    if sum(merged.values()) % p:
        raise NotRepresentable(f"coefficients sum to {sum(merged.values()) % p} != 0 mod {p}")
    fam = span_family(DIFFS, p)
    vals = np.zeros(p**3, dtype=np.int64)
    out = []
    for line in sorted(merged):
        vals[line.indices()] += merged[line]
        if merged[line] == 0:
            continue
        anchor = lines_with_direction(line.direction, p)[0]
        if line == anchor:
            continue
        out.append((fam.index(("diff", line, anchor)), merged[line]))
    return FpCombination(fam, tuple(sorted(out)), WeightFp(p, vals))

"""JSON interchange formats.

weight       {"p": P, "values": [int x P^3]}            lexicographic point order
polynomial   {"p": P, "coeffs": [[i, j, k, c], ...]}    nonzero terms only
fp cert      {"p", "family", "target", "terms": [[generator-key, coeff], ...]}
z cert       {"p", "base_plane", "diffs": [[L1, L2, coeff], ...], "target"}
"""
from __future__ import annotations

import json

from .decompose import FAMILIES, FpCombination, NotInSpan, parse_generator_key, span_family
from .geometry import check_prime, parse_line, parse_plane
from .lift import ZCertificate
from .poly import ReducedPoly
from .weights import WeightFp, WeightZ


class SchemaError(ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _get(obj, key, where):
    if not isinstance(obj, dict):
        raise SchemaError(where or "<root>", "expected a JSON object")
    if key not in obj:
        raise SchemaError(f"{where}.{key}" if where else key, "missing")
    return obj[key]


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(field, f"expected an integer, got {value!r}")
    return value


def _modulus(obj, where=""):
    field = f"{where}.p" if where else "p"
    p = _int(_get(obj, "p", where), field)
    try:
        return check_prime(p)
    except ValueError as exc:
        raise SchemaError(field, str(exc)) from None


def weight_to_json(w) -> dict:
    return {"p": w.p, "values": [int(v) for v in w.values]}


def weight_from_json(obj, kind=WeightZ, where=""):
    p = _modulus(obj, where)
    field = f"{where}.values" if where else "values"
    values = _get(obj, "values", where)
    if not isinstance(values, list) or len(values) != p**3:
        raise SchemaError(field, f"expected a list of {p**3} integers")
    for i, v in enumerate(values):
        _int(v, f"{field}[{i}]")
        if kind is WeightFp and not 0 <= v < p:
            raise SchemaError(f"{field}[{i}]", f"residue {v} outside [0, {p})")
    return kind(p, values)


def poly_to_json(q: ReducedPoly) -> dict:
    return {"p": q.p, "coeffs": [list(t) for t in q.terms()]}


def poly_from_json(obj) -> ReducedPoly:
    p = _modulus(obj)
    terms = {}
    for n, entry in enumerate(_get(obj, "coeffs", "")):
        field = f"coeffs[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise SchemaError(field, "expected [i, j, k, c]")
        i, j, k, c = (_int(v, field) for v in entry)
        if not all(0 <= e < p for e in (i, j, k)):
            raise SchemaError(field, f"exponent out of range for p={p}")
        terms[(i, j, k)] = terms.get((i, j, k), 0) + c
    return ReducedPoly.from_terms(p, terms)


def combination_to_json(result) -> dict:
    if isinstance(result, NotInSpan):
        return {"p": result.family.p, "family": result.family.tag, "in_span": False,
                "target": weight_to_json(result.target),
                "functional": weight_to_json(result.functional)}
    return {"p": result.p, "family": result.family.tag, "in_span": True,
            "target": weight_to_json(result.target),
            "terms": [[key, int(c)] for key, c in result.keyed_terms()]}


def combination_from_json(obj) -> FpCombination:
    p = _modulus(obj)
    tag = _get(obj, "family", "")
    if tag not in FAMILIES:
        raise SchemaError("family", f"unknown family {tag!r}")
    fam = span_family(tag, p)
    terms = []
    for n, entry in enumerate(_get(obj, "terms", "")):
        field = f"terms[{n}]"
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], str):
            raise SchemaError(field, "expected [generator-key, coeff]")
        try:
            gen = parse_generator_key(entry[0], tag)
            idx = fam.index(gen)
        except (ValueError, KeyError) as exc:
            raise SchemaError(field, f"unknown generator {entry[0]!r} ({exc})") from None
        terms.append((idx, _int(entry[1], field) % p))
    target = weight_from_json(_get(obj, "target", ""), WeightFp, "target")
    return FpCombination(fam, tuple(terms), target)


def certificate_to_json(cert: ZCertificate) -> dict:
    return {
        "p": cert.p,
        "base_plane": cert.base_plane.to_text() if cert.base_plane else None,
        "diffs": [[l1.to_text(), l2.to_text(), int(c)] for l1, l2, c in cert.diff_terms],
        "target": weight_to_json(cert.declared_target),
    }


def certificate_from_json(obj) -> ZCertificate:
    p = _modulus(obj)
    base = _get(obj, "base_plane", "")
    try:
        plane = None if base is None else parse_plane(base)
    except (ValueError, AttributeError) as exc:
        raise SchemaError("base_plane", str(exc)) from None
    diffs = []
    raw = _get(obj, "diffs", "")
    if not isinstance(raw, list):
        raise SchemaError("diffs", "expected a list")
    for n, entry in enumerate(raw):
        field = f"diffs[{n}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise SchemaError(field, "expected [L1, L2, coeff]")
        try:
            l1, l2 = parse_line(entry[0]), parse_line(entry[1])
        except (ValueError, AttributeError) as exc:
            raise SchemaError(field, str(exc)) from None
        diffs.append((l1, l2, _int(entry[2], field)))
    target = weight_from_json(_get(obj, "target", ""), WeightZ, "target")
    if target.p != p:
        raise SchemaError("target.p", f"does not match p={p}")
    return ZCertificate(p, plane, tuple(diffs), target)


def report_to_json(report, timing=False) -> dict:
    out = {
        "p": report.p,
        "candidates_examined": report.candidates_examined,
        "violations": [weight_to_json(w) for w in report.violations],
        "best": None if report.best is None else {
            "support": report.best[1], "weight": weight_to_json(report.best[0])},
    }
    out.update(report.extra)
    if timing:
        out["elapsed_seconds"] = round(report.elapsed, 3)
    return out


def dumps(obj, pretty=False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))

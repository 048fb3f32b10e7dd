import itertools
import random

import numpy as np
import pytest

from cylinderlab.errors import (
    DegeneratePair, LiftObstruction, NotAMultiset, PreconditionViolated, SizeViolation,
)
from cylinderlab.generate import random_cylinder, random_multiset
from cylinderlab.geometry import (
    enumerate_planes, lines_in_plane, lines_with_direction, make_line,
)
from cylinderlab.lift import (
    ZCertificate, lift_multiset, lift_set, p_zero_sum_certificate, point_difference_certificate,
    repair_negatives, verify_certificate,
)
from cylinderlab.poly import in_S1_perp
from cylinderlab.weights import WeightZ, indicator, is_p_divisible

from . import oracles


def gadget_by_brute_force(gadget, p):
    diffs = [(l1, l2, 1) for l1, l2 in gadget.pairs]
    return oracles.as_vector(p, oracles.evaluate_diffs(p, diffs))


def expected_gadget(a, b, p):
    return [p if pt == tuple(a) else -p if pt == tuple(b) else 0 for pt in oracles.points(p)]


def test_gadget_p2_example():
    p = 2
    g = point_difference_certificate((0, 0, 0), (1, 0, 0), p)
    assert gadget_by_brute_force(g, p) == expected_gadget((0, 0, 0), (1, 0, 0), p)
    assert g.evaluate().values.tolist() == expected_gadget((0, 0, 0), (1, 0, 0), p)


@pytest.mark.parametrize("p", [2, 3])
def test_gadget_exhaustive(p):
    for a, b in itertools.permutations(oracles.points(p), 2):
        g = point_difference_certificate(a, b, p)
        assert g.evaluate().values.tolist() == expected_gadget(a, b, p)
        assert g.host_plane.contains(a) and g.host_plane.contains(b)
        for l1, l2 in g.pairs:
            assert l1.contains(a) and not l1.contains(b)
            assert l2.contains(b) and l1.direction == l2.direction


def test_gadget_brute_force_p3_sample():
    p = 3
    rng = random.Random(0)
    pts = oracles.points(p)
    for _ in range(20):
        a, b = rng.sample(pts, 2)
        g = point_difference_certificate(a, b, p)
        assert gadget_by_brute_force(g, p) == expected_gadget(a, b, p)


@pytest.mark.parametrize("p", [5, 7])
def test_gadget_random_pairs(p):
    rng = random.Random(p)
    pts = oracles.points(p)
    for _ in range(50):
        a, b = rng.sample(pts, 2)
        assert point_difference_certificate(a, b, p).evaluate().values.tolist() == \
            expected_gadget(a, b, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gadget_pair_count(p):
    # p+1 lines through a in the host plane, one of them through b
    g = point_difference_certificate((0, 0, 0), (0, 1, 1), p)
    assert len(g.pairs) == p


def test_gadget_degenerate():
    with pytest.raises(DegeneratePair):
        point_difference_certificate((1, 1, 1), (1, 1, 1), 3)


def _sum_gadgets(gadgets, p):
    total = np.zeros(p**3, dtype=np.int64)
    for g in gadgets:
        total += g.evaluate().values
    return total


def test_zero_sum_pairing():
    p = 3
    assert p_zero_sum_certificate(WeightZ.zeros(p)) == []
    u = indicator((0, 1, 2), p) - indicator((2, 2, 2), p)
    gadgets = p_zero_sum_certificate(u)
    assert len(gadgets) == 1
    assert gadgets[0].a == (0, 1, 2) and gadgets[0].b == (2, 2, 2)
    rng = random.Random(5)
    for _ in range(20):
        vals = [rng.randrange(-3, 4) for _ in range(p**3)]
        vals[0] -= sum(vals)
        u = WeightZ(p, vals)
        assert _sum_gadgets(p_zero_sum_certificate(u), p).tolist() == (p * u.values).tolist()
    with pytest.raises(PreconditionViolated):
        p_zero_sum_certificate(indicator((0, 0, 0), p))


def test_lift_plane_is_trivial():
    for p in (2, 3, 5):
        for h in enumerate_planes(p)[:: 7]:
            cert = lift_set(indicator(h))
            assert cert.base_plane == h and cert.diff_terms == ()
            assert verify_certificate(cert)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lift_cylinders(p):
    rng = random.Random(100 + p)
    for _ in range(8):
        s = random_cylinder(p, rng)
        cert = lift_set(s)
        assert cert.base_plane is not None
        assert cert.evaluate() == s
        assert verify_certificate(cert)
        brute = oracles.evaluate_diffs(p, cert.diff_terms, cert.base_plane)
        assert oracles.as_vector(p, brute) == s.values.tolist()
        for l1, l2, c in cert.diff_terms:
            assert l1.direction == l2.direction and c != 0


def test_lift_set_rejects_non_divisible():
    p = 3
    rng = random.Random(2)
    while True:
        vals = [0] * 27
        for i in rng.sample(range(27), 9):
            vals[i] = 1
        s = WeightZ(p, vals)
        if not is_p_divisible(s).divisible:
            break
    with pytest.raises(PreconditionViolated) as err:
        lift_set(s)
    plane, value = err.value.witness
    assert value % p != 0
    with pytest.raises(PreconditionViolated):
        lift_set(indicator((0, 0, 0), p) * 2)


def test_repair_monotone_trace():
    p = 3
    s = random_cylinder(p, random.Random(0))
    # push p units from an empty point onto a member: one repair must undo it
    g = s.values.copy()
    a = int(np.flatnonzero(g == 1)[0])
    b = int(np.flatnonzero(g == 0)[0])
    g[a] += p
    g[b] -= p
    trace = []
    out, repairs = repair_negatives(g, p, trace)
    assert trace == sorted(trace, reverse=True) and len(set(trace)) == len(trace)
    assert out.tolist() == s.values.tolist()
    assert len(repairs) == 1


def test_repair_obstruction_is_reported():
    p = 3
    g = np.zeros(27, dtype=np.int64)
    g[0] = -3
    g[1:4] = 1
    with pytest.raises(LiftObstruction) as err:
        repair_negatives(g, p)
    assert err.value.state.values.tolist() == g.tolist()


def test_multiset_size_violation():
    for p in (2, 3, 5):
        with pytest.raises(SizeViolation):
            lift_multiset(indicator((0, 0, 0), p) * p)


def test_multiset_negative_and_non_divisible():
    p = 3
    w = indicator(enumerate_planes(p)[0]) * 2 - indicator(enumerate_planes(p)[1])
    with pytest.raises(NotAMultiset):
        lift_multiset(w)
    bad = indicator(enumerate_planes(p)[0]) - indicator((0, 0, 0), p) + indicator((1, 1, 1), p)
    with pytest.raises(PreconditionViolated):
        lift_multiset(bad)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_multiset_doubled_line(p):
    lines = lines_with_direction((0, 1, 0), p)
    w = indicator(lines[0]) * 2
    for line in lines[2:p]:
        w = w + indicator(line)
    assert w.total_weight() == p * p and set(w.values.tolist()) <= {0, 1, 2}
    cert = lift_multiset(w)
    assert verify_certificate(cert)
    assert cert.evaluate() == w


@pytest.mark.parametrize("p", [2, 3, 5])
def test_multiset_random(p):
    rng = random.Random(7 * p)
    for _ in range(5):
        w = random_multiset(p, rng)
        cert = lift_multiset(w)
        assert verify_certificate(cert)
        assert cert.evaluate() == w


def test_multiset_plane_is_trivial():
    p = 3
    h = enumerate_planes(p)[11]
    cert = lift_multiset(indicator(h))
    assert cert.base_plane == h and cert.diff_terms == ()
    assert verify_certificate(cert)


def test_verify_detects_tampering():
    p = 3
    cert = lift_set(random_cylinder(p, random.Random(9)))
    assert cert.diff_terms
    l1, l2, c = cert.diff_terms[0]
    tampered = ZCertificate(p, cert.base_plane, ((l1, l2, c + 1),) + cert.diff_terms[1:],
                            cert.declared_target)
    assert not verify_certificate(tampered)
    crooked = make_line((0, 0, 0), (1, 0, 0), p)
    other = make_line((0, 1, 0), (0, 1, 0), p)
    assert not verify_certificate(
        ZCertificate(p, cert.base_plane, cert.diff_terms + ((crooked, other, 0),),
                     cert.declared_target))


def test_pencil_certificate():
    for p in (2, 3, 5):
        h = enumerate_planes(p)[3]
        anchor = lines_in_plane(h)[0]
        others = [line for line in lines_in_plane(h)
                  if line.direction == anchor.direction and line != anchor]
        assert len(others) == p - 1
        # 1_H - sum (1_li - 1_l0) = p * 1_l0
        cert = ZCertificate(p, h, tuple((line, anchor, -1) for line in others),
                            indicator(anchor) * p)
        assert verify_certificate(cert)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_certificates_reduce_into_perp(p):
    rng = random.Random(p)
    cert = lift_set(random_cylinder(p, rng))
    assert in_S1_perp(cert.evaluate())
    cert = lift_multiset(random_multiset(p, rng))
    assert in_S1_perp(cert.evaluate())

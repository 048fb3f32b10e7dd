import json
import random
import subprocess
import sys

import pytest

from cylinderlab.cli import main
from cylinderlab.decompose import DIFFS, solve_in_span, span_family
from cylinderlab.generate import random_cylinder, random_divisible
from cylinderlab.geometry import make_line
from cylinderlab.poly import ReducedPoly
from cylinderlab.serialize import (
    SchemaError, certificate_from_json, certificate_to_json, combination_from_json,
    combination_to_json, poly_from_json, poly_to_json, weight_from_json, weight_to_json,
)
from cylinderlab.lift import lift_set
from cylinderlab.weights import WeightFp, WeightZ, indicator, reduce_mod_p

from . import oracles


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_arg(obj):
    return json.dumps(obj)


def test_check_weight_p_point(capsys):
    w = indicator((1, 2, 0), 3) * 3
    code, out, _ = run(capsys, "check", as_arg(weight_to_json(w)))
    assert code == 0 and json.loads(out) == {"divisible": True}


def test_check_reports_witness(capsys):
    w = indicator(make_line((0, 0, 0), (0, 0, 1), 3))
    code, out, _ = run(capsys, "check", as_arg(weight_to_json(w)))
    res = json.loads(out)
    assert code == 1 and res["divisible"] is False and res["sum"] % 3
    assert res["witness"].startswith("P 3 ")


def test_lift_then_verify(capsys, tmp_path):
    w = random_cylinder(3, random.Random(1))
    src = tmp_path / "cyl.json"
    src.write_text(json.dumps(weight_to_json(w)))
    cert_path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "lift", "set", str(src), "--output", str(cert_path))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(cert_path))
    assert code == 0 and json.loads(out) is True


def test_tampered_certificate(capsys):
    cert = certificate_to_json(lift_set(random_cylinder(3, random.Random(2))))
    cert["diffs"][0][2] += 1
    code, out, _ = run(capsys, "verify", as_arg(cert))
    assert code == 1 and json.loads(out) is False


def test_malformed_input_names_field(capsys):
    code, _, err = run(capsys, "check", '{"p": 3, "values": [0, 1]}')
    assert code == 2 and "values" in err
    code, _, err = run(capsys, "check", '{"p": 4, "values": []}')
    assert code == 2 and "p" in err
    code, _, err = run(capsys, "check", '{"p": 3, "values": [0, 1')
    assert code == 2 and "malformed JSON" in err
    bad = {"p": 3, "values": [0] * 26 + ["x"]}
    code, _, err = run(capsys, "check", as_arg(bad))
    assert code == 2 and "values[26]" in err


def test_scale_guard(capsys):
    code, _, err = run(capsys, "scc", "--p", "5")
    assert code == 2 and "p <= 3" in err


def test_scc_p2(capsys):
    code, out, _ = run(capsys, "scc", "--p", "2")
    res = json.loads(out)
    assert code == 0 and res["candidates_examined"] == 70 and res["violations"] == []
    assert "elapsed_seconds" not in res


def test_lift_size_violation(capsys):
    w = indicator((0, 0, 0), 3) * 3
    code, out, _ = run(capsys, "lift", "multiset", as_arg(weight_to_json(w)))
    assert code == 1 and json.loads(out)["error"] == "SizeViolation"


def test_decompose_not_in_span(capsys):
    w = reduce_mod_p(indicator((1, 1, 1), 3))
    code, out, _ = run(capsys, "decompose", as_arg(weight_to_json(w)))
    res = json.loads(out)
    assert code == 1 and res["in_span"] is False
    f = WeightFp(3, res["functional"]["values"])
    assert sum(int(a) * int(b) for a, b in zip(f.values, w.values)) % 3


def test_skew_and_analyze(capsys):
    code, out, _ = run(capsys, "skew", "--p", "5", "--bijection", "0,2,1,3,4")
    res = json.loads(out)
    assert code == 0 and res["total_weight"] == 15 and res["full_line"] is None
    assert "p(p-2)" in res["note"]
    code, out, _ = run(capsys, "analyze", as_arg(res["weight"]))
    info = json.loads(out)
    assert info["support"] == 15 and info["full_line"] is None and info["is_set"]
    code, _, _ = run(capsys, "skew", "--p", "5", "--bijection", "0,0,1,2,3")
    assert code == 2


@pytest.mark.parametrize("kind", ["cylinder", "plane", "line", "random-divisible", "multiset"])
def test_generate_kinds(capsys, kind):
    code, out, _ = run(capsys, "generate", kind, "--p", "3", "--seed", "5")
    assert code == 0
    w = weight_from_json(json.loads(out))
    brute = oracles.plane_sums_brute(3, w.values.tolist())
    assert all(s % 3 == 0 for s in brute) == (kind != "line")
    code, out2, _ = run(capsys, "generate", kind, "--p", "3", "--seed", "5")
    assert out2 == out


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CYLINDERLAB_SEED", "11")
    _, a, _ = run(capsys, "generate", "cylinder", "--p", "5")
    _, b, _ = run(capsys, "generate", "cylinder", "--p", "5", "--seed", "11")
    assert a == b
    monkeypatch.setenv("CYLINDERLAB_SEED", "eleven")
    code, _, _ = run(capsys, "generate", "cylinder", "--p", "5")
    assert code == 2


def test_output_bytes_are_deterministic(tmp_path):
    outs = []
    for n in range(2):
        target = tmp_path / f"min{n}.json"
        subprocess.run([sys.executable, "-m", "cylinderlab", "minsearch", "--p", "3",
                        "--budget", "100", "--output", str(target)], check=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_generate_check_decompose_round_trip(capsys, p):
    for seed in range(50):
        code, out, _ = run(capsys, "generate", "random-divisible", "--p", str(p),
                           "--seed", str(seed))
        weight = out.strip()
        code, out, _ = run(capsys, "check", weight)
        assert code == 0
        code, out, _ = run(capsys, "decompose", weight)
        assert code == 0
        comb_ = combination_from_json(json.loads(out))
        assert comb_.evaluate() == weight_from_json(json.loads(weight), WeightFp)


def test_schema_round_trips():
    rng = random.Random(0)
    p = 5
    w = WeightZ(p, [rng.randrange(-4, 5) for _ in range(p**3)])
    assert weight_from_json(json.loads(json.dumps(weight_to_json(w)))) == w
    q = ReducedPoly.from_terms(p, {(1, 2, 3): 4, (0, 0, 0): 1})
    assert poly_from_json(poly_to_json(q)) == q
    d = random_divisible(p, rng)
    comb_ = solve_in_span(d, span_family(DIFFS, p))
    back = combination_from_json(json.loads(json.dumps(combination_to_json(comb_))))
    assert back.terms == comb_.terms and back.evaluate() == d
    cert = lift_set(random_cylinder(3, rng))
    again = certificate_from_json(json.loads(json.dumps(certificate_to_json(cert))))
    assert again.diff_terms == cert.diff_terms and again.base_plane == cert.base_plane


def test_schema_errors_name_fields():
    with pytest.raises(SchemaError) as err:
        poly_from_json({"p": 3, "coeffs": [[3, 0, 0, 1]]})
    assert err.value.field == "coeffs[0]"
    with pytest.raises(SchemaError) as err:
        certificate_from_json({"p": 3, "base_plane": "P 3 2 0 0 0", "diffs": [],
                               "target": weight_to_json(WeightZ.zeros(3))})
    assert err.value.field == "base_plane"
    with pytest.raises(SchemaError) as err:
        weight_from_json({"p": 3, "values": [3] * 27}, WeightFp)
    assert err.value.field == "values[0]"

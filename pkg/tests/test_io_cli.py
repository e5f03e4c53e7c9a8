import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings

from g1min import io
from g1min.cli import main
from g1min.invariants import standard_model
from g1min.models import weierstrass
from g1min.testgen import generate_instance

from corpus import table_instance
from strategies import equations

SCHEMA = json.loads((Path(__file__).parents[1] / "schema" / "model.schema.json").read_text())


def _write(tmp_path, phi, prime=None, name="m.json"):
    path = tmp_path / name
    path.write_text(io.dumps(io.ModelFile(phi, prime)))
    return str(path)


@settings(max_examples=60)
@given(equations(3, -30, 30))
def test_parse_print_round_trip(phi):
    text = io.dumps(phi)
    assert io.loads(text).equation == phi
    assert io.dumps(io.loads(text)) == text
    jsonschema.validate(json.loads(text), SCHEMA)


def test_rational_coefficients_survive():
    mf = io.loads('{"degree": 1, "coeffs": [0, "1/2", 0, "-3/4", 5], "prime": 7}')
    assert io.loads(io.dumps(mf)) == mf
    assert mf.prime == 7


@pytest.mark.parametrize("text", [
    "[1, 2]", '{"degree": 5, "coeffs": []}', '{"degree": 1, "coeffs": [1, 2]}',
    '{"degree": 1, "coeffs": [1, 2, 3, 4, 1.5]}', '{"degree": 1, "coeffs": [1, 2, 3, 4, "x"]}', "{",
])
def test_malformed_files(text):
    with pytest.raises(io.ModelFormatError):
        io.loads(text)


def test_invariants_command(tmp_path, capsys):
    assert main(["invariants", _write(tmp_path, standard_model(2, 0, 1))]) == 0
    assert capsys.readouterr().out.strip() == "c4=0 c6=-864 Δ=-432"


def test_classify_fiber_command(tmp_path, capsys):
    path = _write(tmp_path, table_instance("conic+double line", 5, 0), prime=5)
    assert main(["classify-fiber", path]) == 0
    assert capsys.readouterr().out.strip() == "conic + double line"


def test_global_minimise_command(tmp_path, capsys):
    phi, rec = generate_instance(-1, 1, 3, {5: 2, 7: 1}, seed=5)
    assert main(["minimise", "--global", "--json", _write(tmp_path, phi)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exit"] == 0 and out["result"]["certified"] is True
    assert out["result"]["disc_final"] == out["result"]["disc_min"] == str(rec.delta_min)
    jsonschema.validate(out["result"]["final"], SCHEMA)


def test_json_reports_are_deterministic(tmp_path, capsys):
    phi, _ = generate_instance(2, -3, 4, {5: 1}, seed=9)
    path = _write(tmp_path, phi, prime=5)
    outs = []
    for _ in range(2):
        assert main(["minimise", "--json", path]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["result"]["status"] == "MinimalCertified"


def test_exit_codes(tmp_path, capsys):
    good = _write(tmp_path, weierstrass(a4=-1, a6=1), prime=5)
    assert main([]) == 1
    assert main(["level", good, "--prime", "6"]) == 1
    assert main(["level", _write(tmp_path, weierstrass(a4=-1, a6=1), name="np.json")]) == 1
    assert main(["invariants", str(tmp_path / "missing.json")]) == 1
    assert main(["invariants", _write(tmp_path, weierstrass(a6=0), name="sing.json")]) == 0
    assert main(["jacobian", str(tmp_path / "sing.json")]) == 2
    frac = tmp_path / "frac.json"
    frac.write_text('{"degree": 1, "coeffs": [0, 0, 0, "1/5", 1], "prime": 5}')
    assert main(["level", str(frac)]) == 2
    quad = _write(tmp_path, table_instance("double conic", 5, 1), name="q2.json")
    assert main(["classify-fiber", quad, "--prime", "2"]) == 3
    assert main(["level", good]) == 0
    capsys.readouterr()


def test_gen_instance_command(capsys):
    assert main(["gen-instance", "--A", "0", "--B", "1", "--degree", "2", "--plant", "5:1", "--json"]) == 0
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["planted"] == {"5": 1} and res["disc_min"] == "-432"
    jsonschema.validate(res["model"], SCHEMA)
    assert main(["gen-instance", "--A", "0", "--B", "1", "--degree", "2", "--plant", "5"]) == 1

import json

from affauto.cli import main
from affauto.equilift import descend
from affauto.endo import PolyMap
from affauto.exactpoly import poly_parse
from affauto.quotientring import semigroup_saturate
from affauto.roots import weight_set_quotient


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_weights_example(capsys):
    code, out, _ = run(capsys, "weights", "--d", "4", "--n", "2", "--bound", "9", "--json")
    assert code == 0 and json.loads(out) == [1, 3, 5, 7, 9] == weight_set_quotient(4, 2, 9)


def test_saturate_example(capsys):
    code, out, _ = run(capsys, "semigroup", "saturate", "--gens", "4:2,6:1", "--json")
    assert code == 0 and json.loads(out) == {"d": 2, "s": 3}
    assert semigroup_saturate([(4, 2), (6, 1)]) == (2, 3)


def test_lift_from_images_file(capsys, tmp_path):
    q = descend(PolyMap.parse("x1 + x2^3, x2", 2), 2)
    path = tmp_path / "images.json"
    path.write_text(json.dumps(q.to_json()))
    code, out, _ = run(capsys, "equi", "lift", "--d", "2", "--images", str(path), "--json")
    assert code == 0
    obj = json.loads(out)
    assert PolyMap.from_json(obj["map"]) == PolyMap.parse("x1 + x2^3, x2", 2)
    assert len(obj["ambiguity"]) == 2


def test_lift_from_plain_image_strings(capsys, tmp_path):
    path = tmp_path / "images.json"
    path.write_text(json.dumps({"x1^2": "x1^2", "x1*x2": "x1*x2", "x2^2": "x2^2"}))
    code, out, _ = run(capsys, "equi", "lift", "--d", "2", "--n", "2", "--images", str(path))
    assert code == 0 and "x1" in out


def test_lift_rejects_relation_violation(capsys, tmp_path):
    path = tmp_path / "images.json"
    path.write_text(json.dumps({"x1^2": "x1*x2", "x1*x2": "x1*x2", "x2^2": "x2^2"}))
    code, _, err = run(capsys, "equi", "lift", "--d", "2", "--n", "2", "--images", str(path))
    assert code == 1 and "error" in err


def test_json_output_is_deterministic(capsys):
    argv = ["equi", "descend", "--d", "2", "--n", "2", "--json", "x1 + x2^3, x2"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a) == descend(PolyMap.parse("x1 + x2^3, x2", 2), 2).to_json()


def test_positionals_may_follow_options(capsys):
    code, out, _ = run(capsys, "auto", "compose", "--n", "2", "x1 + x2^2, x2", "x2, x1")
    assert code == 0 and out == "(x1^2 + x2, x1)"


def test_poly_commands(capsys):
    code, out, _ = run(capsys, "poly", "root", "--d", "2", "--n", "2", "x1^2 + 2*x1*x2 + x2^2")
    assert code == 0 and out == "x1 + x2"
    code, out, _ = run(capsys, "poly", "member", "--d", "2", "--n", "2", "x1^2*x2^2", "--s", "2")
    assert code == 0 and out == "true"


def test_auto_and_lnd_commands(capsys):
    code, out, _ = run(capsys, "auto", "jacobian", "--n", "2", "x1 + x2^2, x2")
    assert code == 0 and out == "1"
    code, out, _ = run(capsys, "lnd", "check", "--n", "2", "--json", "x2, 0")
    assert code == 0 and json.loads(out)["verdict"] == "CertifiedYes"
    code, out, _ = run(capsys, "lnd", "exp", "--n", "2", "--t", "1", "x2^2, 0")
    assert code == 0 and out == "(x2^2 + x1, x2)"
    code, out, _ = run(capsys, "lnd", "kernel", "--n", "2", "--bound", "2", "--json", "1, 0")
    assert code == 0
    got = [poly_parse(p, 2) if isinstance(p, str) else p for p in json.loads(out)]
    assert len(got) == 3


def test_surface_commands(capsys):
    code, out, _ = run(capsys, "surface", "quotient", "--matrix", "1,1,0,1", "--json")
    assert code == 0 and json.loads(out) == {"point": ["1", "1", "0"], "symmetric": ["2", "1", "0"]}
    code, out, _ = run(capsys, "surface", "tau", "--alpha", "1", "--P", "z^2")
    assert code == 0 and out == "true"
    code, out, _ = run(capsys, "surface", "weights", "--tau", "--bound", "9", "--json")
    assert json.loads(out) == [1, 3, 5, 7, 9]
    code, out, _ = run(capsys, "surface", "identity", "--P", "z^2 + 1")
    assert code == 0 and out == "true"


def test_exit_codes(capsys):
    assert run(capsys, "poly", "parse", "--n", "2", "x1 +")[0] == 2
    assert run(capsys, "equi", "descend", "--d", "2", "--n", "2", "x1 + x2^2, x2")[0] == 1
    assert run(capsys, "semigroup", "closure", "--gens", "50:1", "--bound", "20")[0] == 3
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "lnd", "check", "--n", "2", "x1, 0", "--bogus")[0] == 2
    assert run(capsys, "auto", "invert", "--n", "2", "x1^2, x2")[0] == 1


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "kernels")
    assert code == 0 and out.startswith("[PASS]")
    code, out, _ = run(capsys, "verify", "nope")
    assert code == 2

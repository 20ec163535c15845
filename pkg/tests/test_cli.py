import importlib
import json

import pytest

from parahall import cli
from parahall.curve import Curve, report_scalar, xi_coeffs
from parahall.ktheory import KClass, basis_s, euler_form
from parahall.lattice import Weights
from parahall.stability import HNType, Window
from parahall.symmetric import sym_generator

W2 = Weights.of(2)
G0 = '{"genus":0,"l":2}'


def call(*argv):
    code, text, _ = cli.run(list(argv))
    return code, json.loads(text)


def js(x):
    return json.dumps(x)


def test_every_verb_names_one_library_operation():
    ops = [op for _, op, _ in cli.VERBS.values()]
    assert len(ops) == len(set(ops))
    for op in ops:
        mod, name = op.rsplit(".", 1)
        assert callable(getattr(importlib.import_module(f"parahall.{mod}"), name))
    assert set(cli.VERBS) == {
        "zeta", "points", "xi", "shuffle-mul", "deconcat", "sym-mul", "span-dim", "euler", "par-degree",
        "hn-enum", "hn-word", "reineke", "hn-identity", "polygon", "hull", "oracle-hall", "oracle-bracket",
        "oracle-hl", "exp-convert", "green-t0", "verify-all",
    }  # fmt: skip


def test_points_example():
    assert cli.run(["points", "--curve", G0, "--k", "1"])[:2] == (0, '{"value":"3"}')


def test_zeta_and_xi():
    code, out = call("zeta", "--curve", G0, "--order", "3")
    assert code == 0 and out["coefficients"] == ["1", "3", "7", "15"]
    code, out = call("xi", "--curve", '{"genus":0}', "--order", "1")
    assert out["coefficients"] == ["1", report_scalar(xi_coeffs(Curve(0), 1)[1], None)]


def test_euler_matches_library():
    a = KClass.make(W2, 1, 0, [[1]])
    b = basis_s(W2, 1, 0)
    code, out = call("euler", "--weights", "[2]", "--a", js(a.to_json()), "--b", js(b.to_json()), "--genus", "1")
    assert code == 0
    assert out == {"value": euler_form(a, b, 1), "reverse": euler_form(b, a, 1), "symmetric": euler_form(a, b, 1) + euler_form(b, a, 1)}


def test_printed_orientation_flag():
    s0, s1 = basis_s(Weights.of(3), 0, 0), basis_s(Weights.of(3), 1, 0)
    args = ["euler", "--weights", "[3]", "--a", js(s0.to_json()), "--b", js(s1.to_json())]
    assert call(*args)[1]["value"] == 0
    assert call(*args, "--orientation", "printed")[1]["value"] == -1


def test_par_degree():
    code, out = call("par-degree", "--weights", "[2]", "--class", js(KClass.make(W2, 1, 0, [[1]]).to_json()))
    assert out == {"par": "1/2", "slope": "1/2"}
    code, out = call("par-degree", "--weights", "[2]", "--cls", js(basis_s(W2, 0, 0).to_json()))
    assert out["slope"] == "inf"


def test_stability_verbs():
    a = KClass.make(W2, 1, 0, [[1]])
    win = js(Window(-1, 1, 2).to_json())
    code, out = call("hn-identity", "--weights", "[2]", "--class", js(a.to_json()), "--window", win)
    assert code == 0 and out["pass"] is True
    code, out = call("hn-enum", "--weights", "[2]", "--class", js(a.to_json()), "--window", win)
    assert code == 0 and out["count"] == len(out["types"]) > 1
    t = HNType((KClass.constant(W2, 1, 0), basis_s(W2, 0, 0)))
    code, out = call("hn-word", "--weights", "[2]", "--type", js(t.to_json()))
    assert code == 0 and len(out["word"]) == 1
    code, out = call("polygon", "--weights", "[2]", "--type", js(t.to_json()))
    assert code == 0 and out["convex"] is True
    code, out = call("reineke", "--weights", "[2]", "--class", js(a.to_json()), "--window", win, "--k-start", "1")
    assert code == 0


def test_hn_identity_failure_exits_one():
    a = KClass.make(W2, 1, 0, [[0]])
    code, out = call("hn-identity", "--weights", "[2]", "--class", js(a.to_json()), "--window", js(Window(-1, 1, 2).to_json()), "--k-start", "1")
    assert code == 1 and out["pass"] is False


def test_hull():
    code, out = call("hull", "--polygons", "[[[0,0],[1,5],[2,2]],[[0,0],[1,0],[2,2]]]")
    assert out["vertices"] == [[[0, 1], [0, 1]], [[1, 1], [0, 1]], [[2, 1], [2, 1]]]


def test_shuffle_verbs():
    base = ["--weights", "[2]", "--curve", '{"genus":0}', "--N", "0"]
    code, out = call("shuffle-mul", *base, "--a", "[[0,[1]]]", "--b", "[[0,[0]]]")
    assert code == 0 and out["r"] == 2 and len(out["terms"]) == 3
    code, out = call("deconcat", *base, "--elem", "[[0,[1]],[0,[0]]]", "--m", "1", "--n", "1")
    assert code == 0 and len(out["terms"]) == 3
    code, out = call("span-dim", "--weights", "[1]", "--curve", '{"genus":0}', "--tuples", "[[[0,[0]],[1,[0]]],[[1,[0]],[0,[0]]]]", "--hmax", "3", "--N", "4", "--compare-sym")
    assert code == 0 and out["dim"] == out["sym_dim"]


def test_sym_mul():
    g = Curve(0)
    a, b = sym_generator(g, 1).to_json(), sym_generator(g, 2).to_json()
    code, out = call("sym-mul", "--curve", '{"genus":0}', "--a", js(a), "--b", js(b))
    assert code == 0 and out["r"] == 2


def test_oracle_verbs():
    assert call("oracle-hall", "--a", "[1]", "--b", "[1]")[1]["product"] == [{"class": [1, 1], "coeff": "3"}, {"class": [2], "coeff": "1"}]
    assert call("oracle-hall", "--action", "number", "--lam", "[1,1]", "--a", "[1]", "--b", "[1]")[1] == {"value": 3}
    assert call("oracle-hall", "--action", "aut", "--lam", "[1]", "--l", "3")[1] == {"value": 2}
    assert call("oracle-hall", "--model", "quiver", "--n", "2", "--action", "submodules", "--lam", "[[0,2]]")[1]["count"] == 3
    assert call("oracle-bracket", "--n", "3", "--j", "2")[0] == 0
    assert call("oracle-bracket", "--n", "2", "--j", "1", "--m", "1")[0] == 0
    assert call("oracle-bracket", "--n", "2", "--j", "2")[0] == 2
    assert call("oracle-bracket", "--n", "2", "--j", "2", "--allow-outside")[0] == 1
    assert call("oracle-bracket", "--n", "2", "--constants", "1")[1]["euler(simple, big)"] == -1
    assert call("oracle-hl", "--degree", "2")[1]["pass"] is True


def test_generator_verbs():
    code, out = call("exp-convert", "--from", "T", "--to", "one", "--N", "2")
    assert code == 0 and out["kind"] == "one" and len(out["coefficients"]) == 2
    back = call("exp-convert", "--from", "one", "--to", "T", "--N", "2", "--coeffs", js(out["coefficients"]))[1]
    assert back["coefficients"] == [[{"coeff": "1", "exps": [1, 0]}], [{"coeff": "1", "exps": [0, 1]}]]
    code, out = call("green-t0", "--curve", G0, "--d", "2")
    assert code == 0 and out["pass"] is True


def test_verify_all_subset():
    code, out = call("verify-all", "--criteria", "2")
    assert code == 0 and out["pass"] and [c["criterion"] for c in out["criteria"]] == [2]
    assert call("verify-all", "--criteria", "11")[0] == 2
    assert call("verify-all", "--level", "full")[0] == 2


# -- errors, input files, determinism -----------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["points", "--curve", "{not json", "--k", "1"],
        ["points", "--curve", G0],
        ["nonsense"],
        [],
        ["euler", "--weights", "[2]", "--a", '{"rank":1,"d0":0,"slots":{"p1":[1,2]}}', "--b", '{"rank":1}'],
        ["zeta", "--curve", G0, "--order", "x"],
    ],
)
def test_input_errors_exit_two(argv):
    code, out = call(*argv)
    assert code == 2
    assert out["error"]["kind"] == "input" and out["error"]["message"]


def test_capacity_exits_three():
    code, out = call("oracle-hall", "--a", "[4]", "--b", "[3]")
    assert code == 3 and out["error"]["kind"] == "capacity"


def test_input_object_and_files(tmp_path):
    spec = tmp_path / "in.json"
    spec.write_text(js({"curve": {"genus": 0, "l": 2}, "k": 2}))
    assert call("points", "--input", f"@{spec}")[1] == {"value": "5"}
    # explicit flags win over --input
    assert call("points", "--input", f"@{spec}", "--k", "1")[1] == {"value": "3"}
    curve = tmp_path / "curve.json"
    curve.write_text(G0)
    assert call("points", "--curve", f"@{curve}", "--k", "3")[1] == {"value": "9"}
    assert call("points", "--input", '{"bogus": 1}')[0] == 2


def test_output_file(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert cli.main(["points", "--curve", G0, "--k", "1", "--output", str(out)]) == 0
    assert out.read_text() == '{"value":"3"}\n'
    assert capsys.readouterr().out == ""


def test_stdin_input(monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(G0))
    assert call("points", "--curve", "-", "--k", "1")[1] == {"value": "3"}


def test_output_is_deterministic():
    argv = ["shuffle-mul", "--weights", "[2,3]", "--curve", '{"genus":1,"numerator":[1,1,2],"l":2}', "--a", "[[0,[1,2]]]", "--b", "[[1,[0,1]]]", "--N", "2", "--threads", "4"]
    assert cli.run(argv) == cli.run(argv[:-2])

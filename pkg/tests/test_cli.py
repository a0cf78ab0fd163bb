import json

import pytest

from qpdom import cli
from qpdom.generators import chain_case12, comb, path, star
from qpdom.oracle import is_k_quasiperfect
from qpdom.tree_core import format_edge_list, format_parent_array, from_edge_list, root_and_renumber


@pytest.fixture
def write_tree(tmp_path):
    def _write(t, fmt="edges", name="tree.txt"):
        p = tmp_path / name
        if fmt == "edges":
            p.write_text(format_edge_list(t))
        else:
            p.write_text(format_parent_array(root_and_renumber(t, 1).rooted))
        return str(p)

    return _write


def run_json(capsys, argv):
    code = cli.main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_compute(capsys, write_tree):
    code, out = run_json(capsys, ["compute", write_tree(path(6)), "--k", "1"])
    assert code == 0 and out["outputs"]["value"] == 2
    k1 = from_edge_list([], n=1)
    code, out = run_json(capsys, ["compute", write_tree(k1, "parent"), "--k", "7"])
    assert out["outputs"]["value"] == 1


def test_compute_emit_code(capsys, write_tree):
    t = comb(4)
    code, out = run_json(capsys, ["compute", write_tree(t), "--k", "1", "--emit-code"])
    o = out["outputs"]
    assert o["value"] == 4 and is_k_quasiperfect(t, o["code"], 1)


def test_compute_human_output(capsys, write_tree):
    assert cli.main(["compute", write_tree(path(6)), "--k", "1"]) == 0
    assert capsys.readouterr().out.strip() == "gamma_11 = 2"


def test_chain(capsys, write_tree):
    _, out = run_json(capsys, ["chain", write_tree(star(8))])
    assert out["outputs"]["values"] == [1] * 7
    _, out = run_json(capsys, ["chain", write_tree(path(9), "parent")])
    assert out["outputs"]["values"] == [3, 3]
    _, out = run_json(capsys, ["chain", write_tree(chain_case12(4))])
    assert out["outputs"]["values"] == [5, 5, 5, 4]
    assert out["outputs"]["flags"] == ["=", "=", ">"]
    assert cli.main(["chain", write_tree(chain_case12(4))]) == 0
    assert "k=3 > k=4  strict drop" in capsys.readouterr().out


def test_verify(capsys, write_tree):
    _, out = run_json(capsys, ["verify", write_tree(path(3)), "--k", "1", "--set", "2"])
    assert out["outputs"]["is_k_quasiperfect"] is True
    _, out = run_json(capsys, ["verify", write_tree(star(4)), "--k", "2", "--set", "2,3,4"])
    assert out["outputs"]["is_k_quasiperfect"] is False
    assert out["outputs"]["over_dominated"] == {"1": 3}
    assert cli.main(["verify", write_tree(star(4)), "--k", "2", "--set", "2,3,4"]) == 0
    assert "vertex 1: 3 neighbors in set > 2" in capsys.readouterr().out


def test_oracle_command(capsys, write_tree):
    _, out = run_json(capsys, ["oracle", write_tree(path(5)), "--k", "1", "--collect-all"])
    assert out["outputs"]["value"] == 2
    assert [1, 4] in out["outputs"]["witnesses"]


def test_crosscheck(capsys, tmp_path):
    dest = tmp_path / "f.json"
    code, out = run_json(capsys, ["crosscheck", "--max-n", "4", "--findings", str(dest)])
    assert code == 0
    assert out["outputs"]["trees"] == 16 + 3 + 1 + 1
    assert out["outputs"]["frontier_oracle_mismatches"] == 0
    assert json.loads(dest.read_text())["summary"]["trees"] == 21


def test_crosscheck_fixed_k(capsys):
    code, out = run_json(capsys, ["crosscheck", "--max-n", "6", "--k-policy", "2", "--workers", "2"])
    assert code == 0 and out["outputs"]["trees"] == 1296 + 125 + 16 + 3 + 1 + 1


def test_gen(capsys, tmp_path):
    assert cli.main(["gen", "comb", "5"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# qpdom ")
    t = cli.parse_tree(text, None)
    assert t.n == 10
    code, out = run_json(capsys, ["gen", "caterpillar-gap", "a=3", "b=5", "n=11"])
    assert code == 0 and out["outputs"]["n"] == 11
    code, out = run_json(capsys, ["gen", "chain-case22", "delta=4", "strict=2"])
    assert code == 0 and out["outputs"]["delta"] == 4
    code, out = run_json(capsys, ["gen", "chain-pattern", "delta=3", "pattern=>>"])
    assert code == 0 and out["outputs"]["delta"] == 3


def test_gen_round_trip_through_file(capsys, tmp_path):
    cli.main(["gen", "random", "30", "--seed", "5", "--format", "parent"])
    src = tmp_path / "r.txt"
    src.write_text(capsys.readouterr().out)
    assert cli.main(["chain", str(src), "--format", "parent"]) == 0


def test_gen_manifest(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"family": "path", "params": {"n": 7}}))
    code, out = run_json(capsys, ["gen", "--manifest", str(m)])
    assert code == 0 and out["outputs"]["n"] == 7


def test_analyze(capsys, write_tree):
    _, out = run_json(capsys, ["analyze", write_tree(path(3))])
    assert out["outputs"]["extremal"]["is_extremal"] is True
    _, out = run_json(capsys, ["analyze", write_tree(comb(3))])
    assert out["outputs"]["extremal"]["is_extremal"] is False
    closure = out["outputs"]["perfect_closure"]
    assert len(closure) == 3 and is_k_quasiperfect(comb(3), closure, 1)


def test_bench(capsys):
    code, out = run_json(capsys, ["bench", "--sizes", "100", "--k", "1", "--repetitions", "3"])
    assert code == 0
    assert out["outputs"]["rows"][0]["median_s"] < 0.01


def test_json_is_deterministic_apart_from_timing(capsys, write_tree):
    f = write_tree(comb(4))
    outs = []
    for _ in range(2):
        _, out = run_json(capsys, ["chain", f])
        out.pop("timing")
        outs.append(out)
    assert outs[0] == outs[1]
    assert list(outs[0]) == sorted(outs[0])


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "MISSING", "--k", "1"],
        ["gen", "nonsense", "n=3"],
        ["gen"],
        ["bench", "--sizes", "200,100"],
    ],
)
def test_error_exit_codes(argv, capsys):
    assert cli.main(argv) == 1
    assert capsys.readouterr().err.startswith("qpdom: ")


def test_usage_error_exits_with_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nope"])
    assert exc.value.code == 1


def test_bad_input_files(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 2\n2 3\n3 1\n")
    assert cli.main(["compute", str(p), "--k", "1"]) == 1
    assert "CycleDetected" in capsys.readouterr().err
    p.write_text("1 2\n")
    assert cli.main(["compute", str(p), "--k", "0"]) == 1

import subprocess
import sys

import pytest

from cuttree.cli import main
from cuttree.construct import parse_tree
from cuttree.graph import parse_graph


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "edge": "2 1\n0 1 5\n",
        "path": "3 2\n0 1 2\n1 2 3\n",
        "star": "4 3\n0 1 1\n0 2 1\n0 3 1\n",
        "thirds": "3 3\n0 1 1/3\n1 2 1/2\n0 2 1/6\n",
        "split": "4 2\n0 1 2\n2 3 3\n",
        "bad_tree": "0 1 1\n0 2 7\n0 3 1\n",
        "table": "0 0\n1 1\n2 1\n3 5\n4 5\n5 1\n6 1\n7 0\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tree_single_edge(capsys, files):
    assert run(capsys, "tree", files["edge"]) == (0, "0 1 5\n", "")


def test_tree_methods_and_oracle(capsys, files):
    code, out, _ = run(capsys, "tree", files["star"], "--method", "classical")
    assert code == 0 and sorted(out.splitlines()) == ["0 1 1", "0 2 1", "0 3 1"]
    code, out, _ = run(capsys, "tree", "pairs:4")
    assert code == 0 and out.splitlines() == ["0 1 3", "0 2 3", "0 3 3"]
    code, _, err = run(capsys, "tree", "pairs:4", "--method", "classical")
    assert code == 2 and "error" in err


def test_tree_decimal(capsys, files):
    code, out, _ = run(capsys, "tree", files["thirds"], "--decimal", "3")
    assert code == 0 and all(len(line.split()[2].split(".")[1]) == 3 for line in out.splitlines())
    _, exact, _ = run(capsys, "tree", files["thirds"])
    assert "/" in exact


def test_per_component(capsys, files):
    code, _, err = run(capsys, "tree", files["split"])
    assert code == 2 and "--per-component" in err
    code, out, _ = run(capsys, "tree", files["split"], "--per-component")
    assert code == 0
    assert sorted(out.splitlines()) == ["0 1 2", "0 2 0", "2 3 3"]


def test_mincut(capsys, files):
    code, out, _ = run(capsys, "mincut", files["path"], "0", "2")
    assert code == 0 and out == "lambda 2\nsmallest {0}\nlargest {0}\n"
    assert run(capsys, "mincut", files["path"], "0", "0")[0] == 2
    assert run(capsys, "mincut", files["path"], "0", "x")[0] == 2


def test_laminar(capsys, files):
    code, out, _ = run(capsys, "laminar", files["path"])
    assert code == 0 and out.splitlines()[0] == "2 0 1 {0}"


def test_verify(capsys, files, tmp_path):
    _, tree_text, _ = run(capsys, "tree", files["star"])
    tree = tmp_path / "t.txt"
    tree.write_text(tree_text)
    code, out, _ = run(capsys, "verify", files["star"], str(tree), "--all-pairs")
    assert code == 0 and out.startswith("PASS gh-tree/all-pairs")
    code, out, _ = run(capsys, "verify", files["star"], files["bad_tree"])
    assert code == 1
    assert out.splitlines()[0].startswith("edge-lambda 0 2")
    assert out.splitlines()[-1].startswith("FAIL")
    assert run(capsys, "verify", files["star"], str(tmp_path / "missing"))[0] == 2


def test_check_properties(capsys, files):
    code, out, _ = run(capsys, "check-properties", f"graph:{files['star']}")
    assert code == 0 and "3-monotone-continuity: vacuous" in out
    code, out, _ = run(capsys, "check-properties", "pairs", "--n", "4")
    assert code == 0 and out.splitlines()[-1] == "PASS pairs n=4 mode=exhaustive"
    code, out, _ = run(capsys, "check-properties", f"table:{files['table']}")
    assert code == 1 and "2-submodularity: fail witness {0} {1}" in out
    code, out, _ = run(capsys, "check-properties", "pairs:6", "--mode", "sampled", "--samples", "50")
    assert code == 0


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "3")
    assert code == 0
    g = parse_graph(out)
    path = [w for a, b, w in g.edges if b == a + 1 and b <= 3]
    assert path == [2, 4, 7]
    assert "# chain of unique optimal prefixes: length 1 V0" in out
    assert run(capsys, "counterexample", "0")[0] == 2
    code, out, _ = run(capsys, "counterexample", "20")
    assert code == 0 and "analysis skipped" in out


def test_spectrum(capsys, files):
    assert run(capsys, "spectrum", files["path"]) == (0, "2\n3\n", "")


def test_usage_errors(capsys, files):
    for argv in (["frobnicate"], ["tree"], ["tree", files["edge"], "--bogus"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()
    assert run(capsys, "tree", "/nonexistent/graph.txt")[0] == 2


def test_deterministic(capsys, files):
    first = [run(capsys, "laminar", files["star"]), run(capsys, "counterexample", "6")]
    second = [run(capsys, "laminar", files["star"]), run(capsys, "counterexample", "6")]
    assert first == second


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "cuttree", "tree", files["edge"]],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "0 1 5\n"
    tree = parse_tree(res.stdout, 2)
    assert tree.tree_edges[0][2] == 5

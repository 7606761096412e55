import json
import subprocess
import sys

import pytest

from symmjoin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_skeleton(capsys):
    code, out = run(capsys, "complex", "skeleton", "--m", "4", "--card", "2")
    assert code == 0
    assert len(json.loads(out.out)["facets"]) == 6


def test_dual_round_trip(tmp_path, capsys):
    src = tmp_path / "k.json"
    src.write_text(json.dumps({"m": 4, "facets": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]]}))
    dst = tmp_path / "d.json"
    assert main(["complex", "dual", str(src), "--out", str(dst)]) == 0
    assert json.loads(dst.read_text())["facets"] == [[1, 2], [3], [4]]


def test_check_balanced(tmp_path, capsys):
    src = tmp_path / "k.json"
    src.write_text(json.dumps({"m": 4, "facets": [[2], [3], [4]]}))
    code, out = run(capsys, "check", "balanced", str(src), "--k", "1")
    assert code == 5 and json.loads(out.out)["balanced"] is False


def test_unavoidable_verdicts(capsys):
    code, out = run(capsys, "check", "unavoidable", "example-3-2-K")
    assert code == 0 and json.loads(out.out) == {"verdict": True, "method": "clique", "witness": None}
    code, out = run(capsys, "check", "unavoidable", "--skeleta", "2,2", "--m", "6", "--method", "brute")
    assert code == 5
    cert = json.loads(out.out)
    assert cert["verdict"] is False and sorted(map(len, cert["witness"])) == [3, 3]


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", "unavoidable", str(bad))[0] == 3
    assert run(capsys, "check", "unavoidable", str(tmp_path / "missing.json"))[0] == 3
    assert run(capsys, "complex", "skeleton", "--m", "3", "--card", "9")[0] == 3


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["join", "bogus"])
    assert exc.value.code == 2


def test_cap_exceeded(capsys):
    assert run(capsys, "join", "symmetric", "example-3-2-L", "--max-cells", "100")[0] == 4


def test_join_output(capsys):
    code, out = run(capsys, "join", "symmetric", "tiny-m2r2")
    obj = json.loads(out.out)
    assert code == 0 and obj["kind"] == "symmetrized-deleted-join"
    assert sum(len(v) for v in obj["cells"].values()) == 6


def test_morse_with_dot(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, out = run(capsys, "morse", "tiny-m2r2", "--emit-dot", str(dot), "--passports")
    obj = json.loads(out.out)
    assert code == 0
    assert obj["certificate"] == -1 and obj["pairs"] == 2 and obj["passports_monotone"]
    text = dot.read_text()
    assert text.count('label="match"') == 2 and text.count("fillcolor") == 2


def test_homology_commands(tmp_path, capsys):
    code, out = run(capsys, "homology", "rp2")
    assert code == 0 and json.loads(out.out) == {"betti": [0, 0, 0], "torsion": [[], [2], []]}
    code, out = run(capsys, "homology", "tiny-m2r2", "--join", "deleted", "--dump-matrices", str(tmp_path / "mx"))
    assert json.loads(out.out)["betti"] == [1, 0]
    assert (tmp_path / "mx" / "boundary_1.txt").read_text().count("\n") == 4


@pytest.mark.parametrize("name", ["tiny-m2r2", "bier-3-1"])
def test_repro(capsys, name):
    code, out = run(capsys, "repro", name)
    assert code == 0 and json.loads(out.out)["pass"]


def test_repeatable_output(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"o{i}.json"
        subprocess.run(
            [sys.executable, "-m", "symmjoin.cli", "morse", "--skeleta", "2,2", "--m", "5", "--out", str(path)],
            check=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_info(capsys):
    code, out = run(capsys, "info")
    assert json.loads(out.out)["backend"] in ("cython", "python")

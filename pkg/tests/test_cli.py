import json

import pytest

from compatorder.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from compatorder.functions import ValueGrid, enumerate_family
from compatorder.serialize import dumps, family_to_json, space_to_json
from compatorder.topology import FiniteSpace


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def two_point_files(tmp_path):
    d2 = FiniteSpace.discrete(2)
    fam = enumerate_family(d2, ValueGrid.parse("0,1"))
    (tmp_path / "d2.json").write_text(dumps(space_to_json(d2)))
    (tmp_path / "fam.json").write_text(dumps(family_to_json(fam)))

    def write_map(name, assignment):
        obj = {"source": "fam.json", "target": "fam.json", "source_space": "d2.json",
               "target_space": "d2.json", "assignment": assignment}
        (tmp_path / name).write_text(json.dumps(obj))
        return str(tmp_path / name)

    return fam, write_map


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "bundled:sierpinski", "--family", "bundled:sierpinski_grid01")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["space"] == {"points": 2, "opens": 3}
    assert data["family"]["contains_zero"]


def test_validate_reports_discontinuous_fiber(capsys):
    code, _, err = run(capsys, "validate", "bundled:sierpinski", "--family", "bundled:sierpinski_bad_family")
    assert code == EXIT_INPUT
    assert "offending fiber" in err and "{1}" in err


def test_lattice_and_spectrum(capsys):
    code, out, _ = run(capsys, "lattice", "bundled:discrete3", "--kind", "theta")
    assert code == EXIT_OK and len(json.loads(out)["elements"]) == 8
    code, out, _ = run(capsys, "lattice", "bundled:sierpinski", "--kind", "ro", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph ro")
    code, out, _ = run(capsys, "spectrum", "bundled:discrete3", "--ult")
    data = json.loads(out)
    assert code == EXIT_OK and data["points"] == 3 and data["base_identity_violations"] == []
    code, out, _ = run(capsys, "spectrum", "bundled:two_sierpinski", "--kind", "rc", "--format", "dot")
    assert code == EXIT_OK and "digraph" in out


def test_reconstruct(capsys):
    code, out, _ = run(capsys, "reconstruct", "bundled:discrete4")
    data = json.loads(out)
    assert code == EXIT_OK and data["verified"] and data["ultrafilters"] == 4
    code, out, _ = run(capsys, "reconstruct", "bundled:two_sierpinski", "--grid=-1,0,1")
    assert code == EXIT_OK and json.loads(out)["ultrafilters"] == 2


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "reconstruct", "bundled:discrete4", "--cap", "10")
    assert code == EXIT_CAP and "error" in err


def test_check_iso(capsys, two_point_files):
    fam, write_map = two_point_files
    code, out, _ = run(capsys, "check-iso", "bundled:phi_map")
    assert code == EXIT_OK and json.loads(out)["is_compat_iso"]
    collapse = write_map("collapse.json", [fam.zero_index] * len(fam))
    code, out, _ = run(capsys, "check-iso", collapse)
    data = json.loads(out)
    assert code == EXIT_FAIL and not data["is_compat_iso"] and "witness" in data


def test_induce(capsys, tmp_path, two_point_files):
    code, out, _ = run(capsys, "induce", "bundled:phi_map", "--expect", "bundled:phi")
    data = json.loads(out)
    assert code == EXIT_OK and data["matches_expected"] and data["homeomorphism"] == [1, 2, 0]
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"assignment": [0, 1, 2]}))
    code, _, err = run(capsys, "induce", "bundled:phi_map", "--expect", str(wrong))
    assert code == EXIT_FAIL and "expected" in err
    fam, write_map = two_point_files
    code, _, err = run(capsys, "induce", write_map("bad.json", [fam.zero_index] * len(fam)))
    assert code == EXIT_FAIL and "pipeline failed" in err


def test_suite_subset(capsys):
    code, out, _ = run(capsys, "suite", "--only", "1", "7", "--max-points", "3")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and len(lines) == 2
    assert all(line.startswith("[PASS]") for line in lines)
    code, out, _ = run(capsys, "suite", "--only", "5", "--format", "json", "--max-points", "3")
    assert code == EXIT_OK and json.loads(out)[0]["passed"]


@pytest.mark.parametrize("instance", ["discont_d3", "discont_sierpinski_point", "bundled:discont_d2_sign"])
def test_demo(capsys, instance):
    code, out, _ = run(capsys, "demo", instance)
    data = json.loads(out)
    assert code == EXIT_OK and data["is_compat_iso"] and data["differs_from_identity"]


def test_export_dot_to_file(capsys, tmp_path):
    target = tmp_path / "space.dot"
    code, out, _ = run(capsys, "export-dot", "bundled:sierpinski", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert "p1 -> p0;" in target.read_text()
    code, out, _ = run(capsys, "export-dot", "bundled:discrete3", "--what", "theta")
    assert code == EXIT_OK and out.count("->") == 12


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT and "no such file" in err
    code, _, _ = run(capsys, "reconstruct", "bundled:sierpinski", "--grid", "1,2")
    assert code == EXIT_INPUT
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2

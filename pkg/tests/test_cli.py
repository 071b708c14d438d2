import json

import pytest

from moebius_dual import RationalMatrix
from moebius_dual.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_partitions_moebius(capsys):
    code, out, _ = run(["lattice", "partitions", "--n", "3", "--emit", "moebius"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == 5
    # bottom (all singletons) to top (one block) entry is 2
    assert doc["entries"][0][-1] == "2"
    assert doc["labels"][0] == "{1}{2}{3}"


def test_lattice_subsets_csv(capsys):
    code, out, _ = run(
        ["lattice", "subsets", "--n", "2", "--emit", "zeta", "--format", "csv"], capsys
    )
    assert code == 0
    m = RationalMatrix.from_csv(out, has_labels=True)
    assert m == RationalMatrix([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]])


def test_duality_certificate(tmp_path, capsys):
    kernel = tmp_path / "p.json"
    kernel.write_text(
        json.dumps({"rows": 4, "cols": 4, "entries": [["1/4"] * 4] * 4})
    )
    code, out, _ = run(
        ["duality", "--poset", "subsets", "--n", "2", "--variant", "zeta",
         "--kernel", str(kernel)],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["condition_i"] is True and doc["Q_nonnegative"] is True
    # emitted Q round-trips through the shared JSON format
    q = RationalMatrix.from_json(json.dumps(doc["Q"]))
    assert q.rows == 4


def test_duality_rejects_float_kernel(tmp_path, capsys):
    kernel = tmp_path / "p.json"
    kernel.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [[0.5]]}))
    code, _, err = run(
        ["duality", "--n", "0", "--kernel", str(kernel)], capsys
    )
    assert code == 2
    assert "invalid-config" in err


def test_coarsen_sets_and_partitions(capsys):
    code, out, _ = run(["coarsen", "sets", "--n", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["enumeration_agrees"] is True
    assert doc["zeta"]["entries"][0] == ["1", "4", "6", "4", "1"]
    code, out, _ = run(["coarsen", "partitions", "--n", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["classes"] == ["1+1+1", "2+1", "3"]


def test_cannings_haploid_report(capsys):
    code, out, _ = run(["cannings", "--model", "wf", "--N", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["transpose_zeta_duality"] is True
    assert doc["coarse_backward"]["entries"][2] == ["0", "1/2", "1/2"]


def test_cannings_multiallelic_report(capsys):
    code, out, _ = run(["cannings", "--model", "wf", "--N", "2", "--T", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["backward_substochastic"] is True
    assert doc["max_defect"] == "1/2"


def test_simulate_deterministic_output(capsys):
    argv = ["simulate", "--model", "wf", "--N", "3", "--steps", "1", "--reps",
            "500", "--seed", "5", "--start", "2", "--dual-start", "1"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # identical flags and seed give identical bytes
    doc = json.loads(out1)
    assert doc["exact"] == "2/3"


def test_verify_all_passes(capsys):
    code, out, _ = run(["verify-all", "--max-n", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert all(c["ok"] for c in doc["checks"])


def test_exit_codes(capsys, monkeypatch, tmp_path):
    # size cap
    code, _, err = run(["lattice", "subsets", "--n", "25"], capsys)
    assert code == 3 and "size-cap" in err
    # invalid config
    code, _, _ = run(["lattice", "subsets"], capsys)
    assert code == 2
    # environment override of the cap
    monkeypatch.setenv("MOEBIUS_DUAL_MAX_STATES", "4")
    code, _, err = run(["lattice", "subsets", "--n", "3"], capsys)
    assert code == 3
    monkeypatch.setenv("MOEBIUS_DUAL_MAX_STATES", "not-a-number")
    code, _, _ = run(["lattice", "subsets", "--n", "2"], capsys)
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(
        ["lattice", "subsets", "--n", "2", "--output", str(target)], capsys
    )
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["rows"] == 4

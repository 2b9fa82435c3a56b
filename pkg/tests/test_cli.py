"""Tests for the command-line surface."""

import json
import math

import numpy as np
import pytest

from ncpmaps.channels import map_to_document
from ncpmaps.cli import main, parse_angle
from ncpmaps.families import bncp_example


@pytest.fixture
def bncp_file(tmp_path):
    path = tmp_path / "bncp.json"
    path.write_text(json.dumps(map_to_document(bncp_example(), "choi")))
    return str(path)


@pytest.fixture
def identity_file(tmp_path):
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(map_to_document(np.eye(4, dtype=complex), "superop")))
    return str(path)


def run(argv, out_path):
    code = main(argv + ["--out", str(out_path), "--no-timestamp"])
    return code, json.loads(out_path.read_text()) if code == 0 else None


class TestParseAngle:
    @pytest.mark.parametrize("text,expected", [
        ("pi", math.pi),
        ("pi/4", math.pi / 4),
        ("-pi/6", -math.pi / 6),
        ("2pi/3", 2 * math.pi / 3),
        ("pi/4-1e-7", math.pi / 4 - 1e-7),
        ("pi/4+0.001", math.pi / 4 + 0.001),
        ("0.5", 0.5),
        ("-1e-3", -1e-3),
        ("1.5pi", 1.5 * math.pi),
    ])
    def test_values(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected, abs=0)

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_angle("pifourths")


class TestClassify:
    def test_reference_ncp(self, bncp_file, tmp_path):
        code, doc = run(["classify", bncp_file], tmp_path / "v.json")
        assert code == 0
        assert doc["classification"] == "NCP"
        assert doc["choi_eigenvalues"] == pytest.approx(
            [2.32409, 0.669258, 0.130742, -1.12409], abs=1e-4)

    def test_identity_cp(self, identity_file, tmp_path):
        code, doc = run(["classify", identity_file], tmp_path / "v.json")
        assert code == 0
        assert doc["classification"] == "CP"

    def test_malformed_json_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["classify", str(bad), "--no-timestamp"]) == 2

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["classify", str(tmp_path / "nope.json"), "--no-timestamp"]) == 2

    def test_wrong_shape_exit_2(self, tmp_path):
        bad = tmp_path / "shape.json"
        bad.write_text(json.dumps({"rep": "choi", "matrix": [[{"re": 1.0, "im": 0.0}]]}))
        assert main(["classify", str(bad), "--no-timestamp"]) == 2

    def test_cp_tol_override_echoed(self, bncp_file, tmp_path):
        code, doc = run(["classify", bncp_file, "--cp-tol", "-2.0"], tmp_path / "v.json")
        assert code == 0
        assert doc["config"]["cp_tol"] == -2.0
        # a threshold below the most negative eigenvalue flips the verdict
        assert doc["classification"] == "CP"


class TestDomain:
    def test_identity_full(self, identity_file, tmp_path):
        csv = tmp_path / "d.csv"
        code, doc = run(["domain", identity_file, "--mode", "montecarlo", "--n", "400",
                         "--csv-out", str(csv)], tmp_path / "d.json")
        assert code == 0
        assert doc["summary"]["fraction"] == 1.0
        assert csv.exists()

    def test_bncp_grid(self, bncp_file, tmp_path):
        csv = tmp_path / "d.csv"
        code, doc = run(["domain", bncp_file, "--mode", "grid", "--resolution", "12",
                         "--csv-out", str(csv)], tmp_path / "d.json")
        assert code == 0
        assert 0.0 < doc["summary"]["fraction"] < 1.0

    def test_cnot_singular_family(self, tmp_path):
        csv = tmp_path / "d.csv"
        code, doc = run(["domain", "--family", "cnot", "--theta", "pi/4",
                         "--mode", "montecarlo", "--n", "300",
                         "--csv-out", str(csv)], tmp_path / "d.json")
        assert code == 0
        assert doc["map"]["singular"] is True
        assert doc["map"]["invariant_set"]["direction"] == [1.0, 0.0, 0.0]
        assert doc["summary"]["fraction"] == 0.0
        assert doc["line_witnesses"]

    def test_dephasing_family(self, tmp_path):
        csv = tmp_path / "d.csv"
        code, doc = run(["domain", "--family", "dephasing", "--nu", "1.0",
                         "--q1", "0.35", "--q2", "0.4", "--mode", "montecarlo",
                         "--n", "500", "--csv-out", str(csv)], tmp_path / "d.json")
        assert code == 0
        assert doc["map"]["singular"] is False
        assert 0.0 < doc["summary"]["fraction"] < 1.0


class TestMeasure:
    def test_pauli_small(self, tmp_path):
        code, doc = run(["measure", "--family", "pauli", "--n", "2000", "--seed", "3"],
                        tmp_path / "m.json")
        assert code == 0
        assert doc["n"] == 2000
        assert doc["cp_fraction"] + doc["ncp_fraction"] == pytest.approx(1.0)
        assert doc["workers"] == 1

    def test_rotated_default_unitary_matches_pauli(self, tmp_path):
        _, pauli = run(["measure", "--family", "pauli", "--n", "2000", "--seed", "3"],
                       tmp_path / "p.json")
        _, rot = run(["measure", "--family", "rotated", "--n", "2000", "--seed", "3"],
                     tmp_path / "r.json")
        assert rot["cp_fraction"] == pauli["cp_fraction"]

    def test_unrestricted_rejected_exit_3(self, tmp_path, capsys):
        code = main(["measure", "--family", "unrestricted", "--n", "1000",
                     "--no-timestamp"])
        assert code == 3
        err = capsys.readouterr().err
        assert "unbounded" in err

    def test_bad_n_exit_2(self, tmp_path):
        assert main(["measure", "--family", "pauli", "--n", "10", "--no-timestamp"]) == 2


class TestScan:
    def test_cnot_grid(self, tmp_path):
        code, doc = run(["scan", "--family", "cnot",
                         "--grid", "pi/4-1e-1,pi/4-1e-2,pi/4-1e-3", "--bound", "100"],
                        tmp_path / "s.json")
        assert code == 0
        assert len(doc["values"]) == 3
        assert doc["exceeded"] is True  # 1/(2e-3) ~ 500 > 100
        assert doc["flags"] == [False, False, True]

    def test_singular_grid_point_exit_2(self, tmp_path):
        assert main(["scan", "--family", "cnot", "--grid", "pi/4",
                     "--no-timestamp"]) == 2

    def test_controlled_q(self, tmp_path):
        code, doc = run(["scan", "--family", "controlled-q", "--grid", "0.3,0.6",
                         "--q-theta", "pi", "--q-xi", "pi", "--bound", "1e6"],
                        tmp_path / "s.json")
        assert code == 0
        assert len(doc["values"]) == 2


class TestValidate:
    def test_bncp_partial(self, bncp_file, tmp_path):
        code, doc = run(["validate", bncp_file, "--probes", "800"], tmp_path / "v.json")
        assert code == 0
        assert doc["status"] == "PartialDomain"
        assert 0 < doc["sampled_fraction"] < 1
        assert doc["witnesses"]

    def test_identity_full(self, identity_file, tmp_path):
        code, doc = run(["validate", identity_file, "--probes", "400"], tmp_path / "v.json")
        assert code == 0
        assert doc["status"] == "FullDomain"

    def test_cnot_singular_family(self, tmp_path):
        code, doc = run(["validate", "--family", "cnot", "--theta", "pi/4",
                         "--probes", "400"], tmp_path / "v.json")
        assert code == 0
        assert doc["status"] == "MeasureZeroDomain"


class TestDeterminism:
    def test_byte_identical_reruns(self, bncp_file, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["validate", bncp_file, "--probes", "500",
                     "--out", str(out1), "--no-timestamp"]) == 0
        assert main(["validate", bncp_file, "--probes", "500",
                     "--out", str(out2), "--no-timestamp"]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_timestamp_present_by_default(self, identity_file, tmp_path, capsys):
        assert main(["classify", identity_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "timestamp" in doc

    def test_measure_workers_identical_output(self, tmp_path):
        outs = []
        for w, name in [(1, "w1.json"), (2, "w2.json")]:
            path = tmp_path / name
            assert main(["measure", "--family", "pauli", "--n", "6000", "--seed", "1",
                         "--workers", str(w), "--out", str(path), "--no-timestamp"]) == 0
            doc = json.loads(path.read_text())
            outs.append((doc["cp_fraction"], doc["ratio"]))
        assert outs[0] == outs[1]

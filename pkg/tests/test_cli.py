"""
Tests for the pauli-cycles command line.
"""

import json

import pytest

from cli import main
from configs.fixtures import C4_TWO_QUBITS, C5_THREE_QUBITS, CONJOINED_PENTAGONS, UNFAITHFUL_C4
from pauli_cycles.contextuality import CycleInequality, tsirelson_state
from pauli_cycles.realizations import Realization

pytestmark = pytest.mark.usefixtures("config")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestConstruct:
    def test_c2(self, capsys, tmp_path):
        out = tmp_path / "c5.json"
        code, report, _ = run(capsys, "construct", "c2", "--m", "3", "--out", str(out))
        assert code == 0
        assert report["command"] == "construct"
        assert report["results"]["shape"] == "cycle"
        assert report["results"]["size"] == 5
        assert report["results"]["realization"]["paulis"] == ["XII", "IXI", "ZIX", "ZZI", "IZZ"]
        assert Realization.from_json(json.loads(out.read_text())).n == 5
        assert set(report["versions"]) == {"pauli_cycles", "numpy", "scipy", "networkx"}

    @pytest.mark.parametrize("kind, m, shape, size", [("acc", 4, "cycle", 4), ("big", 4, "cycle", 8), ("path-concat", 3, "path", 8)])
    def test_other_kinds(self, capsys, kind, m, shape, size):
        code, report, _ = run(capsys, "construct", kind, "--m", str(m))
        assert code == 0
        assert (report["results"]["shape"], report["results"]["size"]) == (shape, size)

    def test_out_of_range_is_a_usage_error(self, capsys):
        code, report, err = run(capsys, "construct", "acc", "--m", "2")
        assert code == 2
        assert report is None
        assert err.startswith("error:")

    def test_unknown_kind(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["construct", "nope", "--m", "3"])
        assert exc.value.code == 2


class TestSearch:
    def test_table(self, capsys):
        code, report, _ = run(capsys, "table", "--m", "2")
        assert code == 0
        assert report["results"]["table"] == {
            "3": "found",
            "4": "found",
            "5": "found",
            "6": "found",
            "7": "impossible",
        }
        assert report["results"]["largest_found"] == 6

    def test_found(self, capsys, tmp_path):
        out = tmp_path / "c6.json"
        code, report, _ = run(capsys, "search", "--m", "2", "--cycle", "6", "--out", str(out))
        assert code == 0
        assert report["results"]["verdict"] == "found"
        assert Realization.from_json(json.loads(out.read_text())).is_faithful()

    def test_impossible(self, capsys):
        code, report, _ = run(capsys, "search", "--m", "2", "--cycle", "7")
        assert code == 1
        assert report["results"]["verdict"] == "impossible"

    def test_budget(self, capsys):
        code, report, _ = run(
            capsys, "search", "--m", "3", "--cycle", "8", "--no-bound", "--budget", "1e1"
        )
        assert code == 2
        assert report["results"]["verdict"] == "budget"
        assert report["inputs"]["budget"] == 10

    def test_path(self, capsys):
        code, report, _ = run(capsys, "search", "--m", "2", "--path", "5")
        assert code == 0
        assert report["results"]["kind"] == "path"

    @pytest.mark.parametrize("budget", ["1.5", "0", "many"])
    def test_bad_budget(self, budget):
        with pytest.raises(SystemExit):
            main(["search", "--m", "2", "--cycle", "5", "--budget", budget])


class TestBoundAndWitness:
    def test_bound_all(self, capsys, tmp_path):
        path = write(tmp_path, "c4.json", C4_TWO_QUBITS)
        code, report, _ = run(capsys, "bound", "--realization", path, "--all")
        assert code == 0
        rows = report["results"]["rows"]
        assert len(rows) == 8
        assert all(row["verdict"] == "violated" for row in rows)

    def test_bound_single(self, capsys, tmp_path):
        path = write(tmp_path, "c5.json", C5_THREE_QUBITS)
        code, report, _ = run(capsys, "bound", "--realization", path, "--gamma", "++++-")
        assert code == 0
        [row] = report["results"]["rows"]
        assert row["verdict"] == "satisfied"
        assert row["quantum_value"] == pytest.approx(5**0.5)

    @pytest.mark.parametrize("doc", [UNFAITHFUL_C4, CONJOINED_PENTAGONS])
    def test_bound_rejects_non_cycle_input(self, capsys, tmp_path, doc):
        path = write(tmp_path, "r.json", doc)
        code, _, err = run(capsys, "bound", "--realization", path, "--all")
        assert code == 2
        assert "error:" in err

    def test_witness(self, capsys, tmp_path):
        path = write(tmp_path, "c4.json", C4_TWO_QUBITS)
        code, report, _ = run(capsys, "witness", "--realization", path, "--gamma", "+++-")
        assert code == 0
        results = report["results"]
        assert results["quantum_value"] == 2.828427125
        assert results["independence_witness"] == ["XI", "XX"]
        assert results["membership"]["verdict"] == "contextual"
        assert len(results["witness_state"]) == 4

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "bound", "--realization", str(tmp_path / "absent.json"))
        assert code == 2
        assert "error:" in err


class TestCounterexample:
    def test_report(self, capsys):
        code, report, _ = run(capsys, "counterexample")
        assert code == 0
        results = report["results"]
        assert results["lambda_max"] == pytest.approx(4.2716, abs=1e-3)
        assert results["exceeds_operator_threshold"] is True
        assert results["paulis"] == ["IX", "ZX", "YY", "IY", "XI", "ZY", "YX"]
        assert (results["verdict"] == "contextual") == ("certificate" in results)


class TestBehaviourAndMembership:
    def test_seeded_pentagon_is_noncontextual(self, capsys, tmp_path):
        realization = write(tmp_path, "c5.json", C5_THREE_QUBITS)
        model = tmp_path / "model.json"
        code, report, _ = run(
            capsys, "behavior", "--realization", realization, "--seed", "3", "--out", str(model)
        )
        assert code == 0
        assert report["results"]["state_source"] == "random(seed=3)"
        assert report["results"]["disturbance"] < 1e-9

        distribution = tmp_path / "jpd.json"
        code, report, _ = run(capsys, "membership", "--model", str(model), "--out", str(distribution))
        assert code == 0
        assert report["results"]["verdict"] == "noncontextual"
        assert report["results"]["max_deviation"] <= 1e-8
        assert json.loads(distribution.read_text())["n"] == 5

    def test_tsirelson_state_is_contextual(self, capsys, tmp_path):
        c4 = Realization.from_json(C4_TWO_QUBITS)
        state = tsirelson_state(c4, CycleInequality.from_label("+++-"))
        realization = write(tmp_path, "c4.json", C4_TWO_QUBITS)
        state_file = write(tmp_path, "state.json", state.to_json())
        model = tmp_path / "model.json"
        code, _, _ = run(
            capsys, "behavior", "--realization", realization, "--state", state_file, "--out", str(model)
        )
        assert code == 0

        certificate = tmp_path / "cert.json"
        code, report, _ = run(capsys, "membership", "--model", str(model), "--out", str(certificate))
        assert code == 0
        assert report["results"]["verdict"] == "contextual"
        assert report["results"]["violation"] > 0
        assert "bound" in json.loads(certificate.read_text())

    def test_malformed_model(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", {"graph": {"n": 2, "edges": [[0, 1]]}})
        code, _, err = run(capsys, "membership", "--model", path)
        assert code == 2
        assert "error:" in err

    def test_invalid_json_text(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, _ = run(capsys, "behavior", "--realization", str(path))
        assert code == 2

import csv
import io
import json
import math
from importlib import resources

import jsonschema
import pytest

from hyperzeta.cli import SUITE_COLUMNS, TOL_ENV, main, parse_complex, parse_floats


@pytest.fixture(scope="module")
def schema():
    text = resources.files("hyperzeta").joinpath("schemas/output.schema.json").read_text()
    return json.loads(text)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv, schema):
    code, out, err = run(argv)
    payload = json.loads(out)
    jsonschema.validate(payload, schema)
    return code, payload


class TestParsers:
    def test_complex(self):
        assert parse_complex("2") == 2
        assert parse_complex("3,-1.5") == complex(3, -1.5)

    def test_floats(self):
        assert parse_floats("0,0.5,1e-3") == [0.0, 0.5, 1e-3]


class TestScalarCommands:
    def test_zeta_json(self, schema):
        code, payload = run_json(["zeta", "--s", "2", "--a", "1"], schema)
        assert code == 0
        assert payload["re"] == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
        assert payload["command"] == "zeta"

    def test_float_round_trip(self, schema):
        from hyperzeta.zeta import hurwitz_zeta

        _, payload = run_json(["zeta", "--s", "3,2", "--a", "0.7"], schema)
        value = hurwitz_zeta(3 + 2j, 0.7)
        assert payload["re"] == value.real and payload["im"] == value.imag

    def test_plain(self):
        code, out, _ = run(["zeta", "--s", "2", "--format", "plain"])
        assert code == 0
        assert out.strip().endswith("i")
        assert float(out.split()[0]) == pytest.approx(math.pi ** 2 / 6)

    def test_csv(self):
        _, out, _ = run(["bernoulli", "--s", "2", "--a", "1", "--format", "csv"])
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][-2:] == ["re", "im"]
        assert float(rows[1][-2]) == pytest.approx(1 / 6, abs=1e-14)

    @pytest.mark.parametrize("route", ["direct", "functional", "u2"])
    def test_bernoulli_routes(self, route, schema):
        _, payload = run_json(["bernoulli", "--s", "4", "--a", "1", "--route", route], schema)
        assert payload["re"] == pytest.approx(-1 / 30, abs=1e-9)

    def test_moment_kind(self, schema):
        _, payload = run_json(["moment", "--kind", "S2", "--s", "4", "--a", "2", "--method", "series"], schema)
        assert payload["re"] == pytest.approx(0.037410435737317902368, rel=1e-12)

    def test_moment_family(self, schema):
        _, payload = run_json(["moment", "--family", "normal", "--s", "2", "--a", "1"], schema)
        assert payload["re"] == pytest.approx(0.34432045758120152846, abs=1e-12)


class TestArrayCommands:
    def test_pdf(self, schema):
        _, payload = run_json(["pdf", "--family", "cosh", "--scale", "half", "--x", "0,0.5"], schema)
        assert payload["x"] == [0.0, 0.5]
        assert payload["values"][0] == pytest.approx(1.0)

    def test_cf(self, schema):
        _, payload = run_json(["cf", "--family", "sinh", "--scale", "half", "--theta", "1"], schema)
        assert payload["values"][0] == pytest.approx(0.95951737566747, abs=1e-13)

    def test_cdf_csv(self):
        _, out, _ = run(["cdf", "--family", "logistic", "--x", "0,1", "--format", "csv"])
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 3

    def test_sample_deterministic(self, schema):
        argv = ["sample", "--family", "sinh", "--scale", "half", "--n", "50", "--seed", "3"]
        assert run_json(argv, schema) == run_json(argv, schema)


class TestExitCodes:
    def test_singularity(self):
        code, out, err = run(["pdf", "--family", "tanh", "--alpha", "1", "--scale", "half", "--x", "0"])
        assert code == 1 and out == ""
        assert "SingularityError" in err

    def test_pole(self):
        code, _, err = run(["zeta", "--s", "1"])
        assert code == 1 and "PoleError" in err

    def test_domain(self):
        code, _, err = run(["zeta", "--s", "2", "--a", "-1"])
        assert code == 2 and "error" in err

    def test_bad_flag(self, capsys):
        assert run(["zeta"])[0] == 2
        assert run(["nonsense"])[0] == 2
        assert run(["zeta", "--s", "2", "--tol", "2"])[0] == 2

    def test_mutually_exclusive(self, capsys):
        assert run(["suite", "--all", "--ids", "mellin-h"])[0] == 2
        assert run(["moment", "--kind", "S1", "--family", "sinh", "--s", "2", "--a", "1"])[0] == 2

    def test_unknown_suite_id(self):
        code, _, err = run(["suite", "--ids", "mellin-h,bogus"])
        assert code == 2 and "bogus" in err

    def test_bad_sample_count(self):
        assert run(["sample", "--family", "logistic", "--n", "0", "--seed", "1"])[0] == 2

    def test_failed_identity(self):
        code, out, _ = run(["identity", "bernoulli-numbers", "--tol", "1e-30"])
        assert code == 1
        assert json.loads(out)["summary"]["passed"] is False


class TestReports:
    def test_identity_json(self, schema):
        code, payload = run_json(["identity", "logistic-abs-moment"], schema)
        assert code == 0
        check = payload["checks"][0]
        assert check["id"] == "logistic-abs-moment" and check["passed"]
        assert payload["summary"]["n_points"] == check["n_points"]

    def test_suite_csv_columns(self):
        code, out, _ = run(["suite", "--ids", "bernoulli-numbers,logistic-abs-moment", "--format", "csv"])
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert tuple(rows[0]) == SUITE_COLUMNS
        assert rows[-1][0] == "SUMMARY"
        assert all(len(r) == len(SUITE_COLUMNS) for r in rows)
        assert {r[0] for r in rows[1:-1]} == {"bernoulli-numbers", "logistic-abs-moment"}

    def test_plain(self):
        _, out, _ = run(["identity", "mellin-h", "--format", "plain"])
        assert out.startswith("PASS mellin-h")

    def test_list(self, schema):
        _, payload = run_json(["list"], schema)
        assert len(payload["identities"]) == 30

    def test_env_tolerance(self, monkeypatch):
        monkeypatch.setenv(TOL_ENV, "1e-30")
        code, out, _ = run(["identity", "bernoulli-numbers"])
        assert code == 1
        assert json.loads(out)["checks"][0]["tolerance"] == 1e-30

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv(TOL_ENV, "1e-30")
        assert run(["identity", "bernoulli-numbers", "--tol", "1e-6"])[0] == 0

    def test_bad_env(self, monkeypatch):
        monkeypatch.setenv(TOL_ENV, "lots")
        assert run(["zeta", "--s", "2"])[0] == 2


class TestEntryPoint:
    def test_module_invocation(self):
        import subprocess
        import sys

        proc = subprocess.run([sys.executable, "-m", "hyperzeta", "zeta", "--s", "2", "--format", "plain"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert float(proc.stdout.split()[0]) == pytest.approx(math.pi ** 2 / 6)

    def test_module_exit_code(self):
        import subprocess
        import sys

        proc = subprocess.run([sys.executable, "-m", "hyperzeta", "zeta", "--s", "1"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 1

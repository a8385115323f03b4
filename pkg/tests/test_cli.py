import json

import pytest

import cli
from reports import VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTable:
    def test_symbolic_json(self, capsys):
        code, out, _ = run(capsys, "table", "s2", "--n", "3")
        assert code == cli.EXIT_OK
        assert json.loads(out)["rows"][3][2] == [[1, "2"], [2, "1"]]

    def test_fermionic(self, capsys):
        code, out, _ = run(capsys, "table", "sf2", "--n", "5")
        assert code == 0
        assert json.loads(out)["rows"][5][3] == -3

    def test_evaluated(self, capsys):
        code, out, _ = run(capsys, "table", "s2", "--n", "3", "--q", "1")
        assert code == 0
        assert json.loads(out)["rows"][3] == [0, 1, 3, 1]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "table", "s2", "--n", "3", "--format", "csv")
        assert code == 0
        assert out.startswith("n,k,value\n")

    @pytest.mark.parametrize(
        "argv",
        [
            ("table", "s1", "--n", "3", "--q", "0"),
            ("table", "s2", "--n", "0"),
            ("table", "s2", "--n", "3", "--q", "abc"),
            ("table", "sf1", "--n", "3", "--q", "1"),
        ],
    )
    def test_domain_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == cli.EXIT_USAGE
        assert out == ""
        assert err.startswith("[ERROR] ")

    def test_cache_round_trip(self, capsys, data_dir):
        code, first, _ = run(capsys, "table", "s2", "--n", "5", "--cache")
        assert code == 0
        assert (data_dir / "tables.db").exists()
        code, again, _ = run(capsys, "table", "s2", "--n", "5", "--cache")
        assert code == 0 and again == first
        code, out, _ = run(capsys, "table", "s2", "--n", "3", "--cache", "--q", "1")
        assert code == 0
        assert json.loads(out)["rows"][3] == [0, 1, 3, 1]

    def test_cache_from_environment(self, capsys, data_dir, monkeypatch):
        monkeypatch.setenv("QSTIRLING_CACHE", "1")
        assert run(capsys, "table", "eulerian", "--n", "4")[0] == 0
        assert (data_dir / "tables.db").exists()
        assert run(capsys, "table", "eulerian", "--n", "4", "--no-cache")[0] == 0


class TestVerify:
    def test_orthogonality(self, capsys):
        code, out, _ = run(capsys, "verify", "orthogonality", "--n", "20")
        doc = json.loads(out)
        assert code == cli.EXIT_OK
        assert doc["passed"] and doc["failures"] == []
        assert doc["checks_run"] == 2 * 20 * 21 // 2

    def test_eulerian_bernoulli_records_errata(self, capsys):
        code, out, _ = run(capsys, "verify", "eulerian-bernoulli", "--n", "8")
        doc = json.loads(out)
        assert code == 0
        assert doc["notes"][0]["kind"] == "errata"

    def test_arith(self, capsys):
        code, out, _ = run(capsys, "verify", "arith", "--n", "1", "--seed", "7", "--samples", "20")
        assert code == 0
        assert json.loads(out)["params"] == {"samples": 20, "seed": 7}

    def test_all(self, capsys):
        code, out, _ = run(capsys, "verify", "all", "--n", "4")
        doc = json.loads(out)
        assert code == 0
        assert doc["suite"] == "all" and doc["passed"]

    def test_failing_suite_exits_one(self, capsys, monkeypatch):
        def broken(args):
            report = VerificationReport("orthogonality", {"n": args.n})
            report.check(False, "n=1 m=1", 1, 0)
            return report

        monkeypatch.setitem(cli.SUITES, "orthogonality", broken)
        code, out, _ = run(capsys, "verify", "orthogonality", "--n", "3")
        assert code == cli.EXIT_FAIL
        assert json.loads(out)["failures"][0]["location"] == "n=1 m=1"

    @pytest.mark.parametrize(
        "argv",
        [
            ("verify", "closed-form", "--n", "0"),
            ("verify", "bogus", "--n", "3"),
            ("verify", "arith", "--n", "2", "--samples", "0"),
            ("verify", "orthogonality"),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == cli.EXIT_USAGE


class TestNumeric:
    def test_interp(self, capsys):
        code, out, _ = run(capsys, "interp", "--z", "-3", "--k", "2", "--q", "0.5")
        doc = json.loads(out)
        assert code == 0
        assert doc["value"]["re"] == pytest.approx(1.25, rel=1e-9)
        assert doc["z"] == {"re": -3.0, "im": 0.0}

    def test_interp_bad_q(self, capsys):
        code, _, err = run(capsys, "interp", "--z", "-3", "--k", "2", "--q", "-1")
        assert code == 2
        assert "[ERROR]" in err

    def test_zeta(self, capsys):
        code, out, _ = run(capsys, "zeta", "--k", "1", "--terms", "10000")
        doc = json.loads(out)
        assert code == 0
        assert doc["abs_error"] < 2e-4
        assert doc["terms_used"] == 10000

    def test_zeta_exact(self, capsys):
        code, out, _ = run(capsys, "zeta", "--k", "1", "--terms", "10", "--exact")
        assert code == 0
        assert json.loads(out)["exact_sum"] == "1968329/1270080"

    def test_bernoulli(self, capsys):
        code, out, _ = run(capsys, "bernoulli", "--order", "-2", "--index", "1")
        assert code == 0
        assert json.loads(out) == {"order": -2, "index": 1, "value": "1"}

    def test_bernoulli_past_truncation(self, capsys):
        assert run(capsys, "bernoulli", "--order", "1", "--index", "30")[0] == 2

    def test_bad_truncation_warns_once(self, monkeypatch, capsys):
        monkeypatch.setenv("QSTIRLING_TRUNCATION", "abc")
        code, out, err = run(capsys, "bernoulli", "--order", "1", "--index", "2")
        assert code == 0
        assert json.loads(out)["value"] == "1/6"
        assert err.count("[CONFIG] QSTIRLING_TRUNCATION") == 1


def test_no_command(capsys):
    assert run(capsys)[0] == cli.EXIT_USAGE


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == cli.EXIT_OK
    assert "qstirling" in out

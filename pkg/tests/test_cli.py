import json
import subprocess
import sys

import pytest

from cyclolab.cli import main, _parse_minpoly, _parse_arcs


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestCommands:
    def test_sn_survey_n1(self, capsys):
        code, rec = run_json(capsys, "sn-survey", "--N", "1", "--dmax", "10", "--no-timing")
        assert code == 0
        members = [r["d"] for r in rec["results"] if r["status"] == "member"]
        assert members == [1]

    def test_weyl(self, capsys):
        code, rec = run_json(capsys, "weyl", "--m", "12", "--k", "2,3", "--n", "3,2")
        assert code == 0 and rec["results"]["value"] == "1"

    def test_height_radical(self, capsys):
        code, rec = run_json(capsys, "height", "--radical", "2", "--n", "3")
        assert code == 0
        assert abs(rec["results"]["height"] - 0.23104906018664842) < 1e-12

    def test_height_minpoly(self, capsys):
        code, rec = run_json(capsys, "height", "--minpoly", "x^2-x-1")
        assert code == 0 and rec["results"]["degree"] == 2

    def test_flat_verify(self, capsys):
        code, rec = run_json(
            capsys, "flat-verify", "--d", "2", "--exponents", "0,1",
            "--coeffs", "1/2*z^1 + 1/2*z^7 @ 8;1/2*z^1 + 1/2*z^3 @ 8",
        )
        assert code == 0
        assert rec["status"] == "flat"
        assert rec["results"]["validity"]["subset_sums_nonzero"]

    def test_flat_verify_numeric(self, capsys):
        code, rec = run_json(
            capsys, "flat-verify", "--numeric", "--d", "2", "--exponents", "0,1",
            "--coeffs", "0.7071067811865476+0j;0.7071067811865476j",
        )
        assert code == 0 and rec["status"] == "flat"
        assert rec["results"]["max_deviation"] < 1e-9

    def test_flat_search(self, capsys):
        code, rec = run_json(
            capsys, "flat-search", "--d", "2", "--exponents", "0,1",
            "--restarts", "6", "--seed", "1",
        )
        assert code == 0 and rec["status"] == "numeric_member"

    def test_reduce(self, capsys):
        code, rec = run_json(
            capsys, "reduce", "--d", "2", "--exponents", "0,1",
            "--coeffs", "1/2*z^1 + 1/2*z^7 @ 8;1/2*z^1 + 1/2*z^3 @ 8",
        )
        assert code == 0
        assert rec["results"]["d_prime"] == 1 and rec["results"]["c"] == [0]

    def test_arc_count(self, capsys):
        code, rec = run_json(
            capsys, "arc-count", "--m", "4", "--k", "1", "--arcs", "0:0.785398163",
        )
        assert code == 0 and rec["results"]["count"] == 1

    def test_strict_check(self, capsys):
        code, rec = run_json(
            capsys, "strict-check", "--seq", "7:1,1;11:1,1;13:1,1",
        )
        assert code == 0 and rec["status"] == "obstructed"

    def test_orbit_dgamma_sigma_factor(self, capsys, tmp_path):
        code, rec = run_json(capsys, "orbit", "--sum", "1 * 2^(1/3)", "--bins", "4",
                             "--hist-out", str(tmp_path / "h.csv"))
        assert code == 0 and rec["results"]["orbit_size"] == 3
        assert (tmp_path / "h.csv").read_text().startswith("lo,hi,count")
        code, rec = run_json(capsys, "dgamma", "--sum", "(1/2) + (1/2) * 2^(1/2)",
                             "--eps", "0.5")
        assert code == 0 and rec["results"]["fraction"] == "1/2"
        code, rec = run_json(capsys, "sigma-search", "--sum", "(1/2) + (1/2) * 2^(1/2)",
                             "--eps", "3.0", "--arcs", "0/1t:1/2t")
        assert code == 0 and rec["results"]["count"] == 2
        code, rec = run_json(capsys, "factor-out", "--sum", "1 * 2^(3/6) + 1 * 2^(5/6)")
        assert code == 0 and rec["results"]["monomial"] == "2^(1/2)"

    def test_kummer(self, capsys):
        code, rec = run_json(capsys, "kummer", "--a", "2", "--d", "2", "--m", "8",
                             "--oracle")
        assert code == 0
        assert rec["results"]["c"] == 2 and rec["results"]["degree"] == 1
        assert rec["results"]["oracle"]["status"] == "true"


class TestPlumbing:
    def test_unknown_command_exit_2(self, capsys):
        assert main(["no-such-command"]) == 2

    def test_input_error_exit_2(self, capsys):
        assert main(["weyl", "--m", "12", "--k", "2,3", "--n", "0,0"]) == 2

    def test_determinism(self, capsys):
        _, out1 = run_cli(capsys, "flat-search", "--d", "5", "--exponents", "0,1",
                          "--seed", "3", "--restarts", "4", "--no-timing")
        _, out2 = run_cli(capsys, "flat-search", "--d", "5", "--exponents", "0,1",
                          "--seed", "3", "--restarts", "4", "--no-timing")
        assert out1 == out2  # byte-identical with timing suppressed

    def test_cache_round_trip(self, capsys, tmp_path):
        cache = str(tmp_path / "cache")
        args = ["weyl", "--m", "12", "--k", "2,3", "--n", "3,2", "--cache", cache,
                "--no-timing"]
        code1, rec1 = run_json(capsys, *args)
        code2, rec2 = run_json(capsys, *args)
        assert code1 == code2 == 0
        assert rec1["results"] == rec2["results"]
        assert rec2.get("cached") is True and "cached" not in rec1

    def test_cache_seed_separates(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        base = ["flat-search", "--d", "2", "--exponents", "0,1", "--restarts", "2",
                "--cache", str(cache), "--no-timing"]
        run_json(capsys, *base, "--seed", "1")
        run_json(capsys, *base, "--seed", "2")
        assert len(list(cache.glob("*.json"))) == 2

    def test_cache_corruption_recovers(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        args = ["weyl", "--m", "6", "--k", "1", "--n", "2", "--cache", str(cache),
                "--no-timing"]
        run_json(capsys, *args)
        victim = next(cache.glob("*.json"))
        victim.write_text("{ not json")
        code, rec = run_json(capsys, *args)
        assert code == 0 and rec["results"]["value"] == "0"

    def test_csv_format(self, capsys):
        code, out = run_cli(capsys, "weyl", "--m", "12", "--k", "2,3", "--n", "3,2",
                            "--format", "csv")
        assert code == 0 and out.startswith("key,value")

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "rec.json"
        code, out = run_cli(capsys, "weyl", "--m", "12", "--k", "2,3", "--n", "3,2",
                            "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["command"] == "weyl"

    def test_schema_validates(self, capsys):
        jsonschema = pytest.importorskip("jsonschema")
        import importlib.resources as res

        schema = json.loads(
            res.files("cyclolab").joinpath("schema/record.schema.json").read_text()
        )
        for argv in (
            ["weyl", "--m", "12", "--k", "2,3", "--n", "3,2"],
            ["height", "--radical", "2", "--n", "3"],
            ["sn-survey", "--N", "1", "--dmax", "5"],
            ["kummer", "--a", "2", "--d", "2", "--m", "8"],
        ):
            _, rec = run_json(capsys, *argv)
            jsonschema.validate(rec, schema)

    def test_inconclusive_exit_3(self, capsys, monkeypatch):
        from cyclolab import cli as cli_mod
        from cyclolab.kummer import OracleReport

        def fake_oracle(a, e, m, scales=(1,)):
            return OracleReport("inconclusive", None, {})

        monkeypatch.setattr(cli_mod.kummer, "root_membership_oracle", fake_oracle)
        code, rec = run_json(capsys, "kummer", "--a", "2", "--d", "2", "--m", "8",
                             "--oracle")
        assert code == 3 and rec["status"] == "inconclusive"

    def test_cache_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CYCLOLAB_CACHE", str(tmp_path / "envcache"))
        run_json(capsys, "weyl", "--m", "6", "--k", "1", "--n", "3", "--no-timing")
        assert len(list((tmp_path / "envcache").glob("*.json"))) == 1

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "cyclolab.cli", "weyl", "--m", "12", "--k", "2,3",
             "--n", "3,2", "--no-timing"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["results"]["value"] == "1"


class TestParsers:
    def test_minpoly(self):
        assert _parse_minpoly("x^3-2") == (-2, 0, 0, 1)
        assert _parse_minpoly("3x - 1") == (-1, 3)
        assert _parse_minpoly("x^2 - x - 1") == (-1, -1, 1)
        assert _parse_minpoly("-x^2+2x+5") == (5, 2, -1)

    def test_arcs(self):
        box = _parse_arcs("0:0.5,1/4t:1/8t")
        assert not box.arcs[0].exact and box.arcs[1].exact

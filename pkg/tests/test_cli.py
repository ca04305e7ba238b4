import csv
import io
import json
from fractions import Fraction

import pytest

from yamabe_bifurcation import cli, spectra
from yamabe_bifurcation.cli import EXIT_CONFIG, EXIT_DEGENERATE, EXIT_FAILURE, EXIT_OK

SPHERE_HEMI = ["--sphere", "2", "--hemisphere", "2"]


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_custom(tmp_path, name="deg.spec", levels="eig 0 1\neig 5/2 2\n",
                 dim=3, curv=10, lam=10):
    path = tmp_path / name
    path.write_text(
        f"dim = {dim}\nscalar_curvature = {curv}\nhas_boundary = false\n"
        f"boundary_minimal = false\nlambda_max = {lam}\n{levels}"
    )
    return str(path)


class TestSpectrum:
    def test_text(self, capsys):
        code, out, _ = run(capsys, ["spectrum", "--sphere", "2", "--below", "7"])
        assert code == EXIT_OK
        assert "0  x1" in out and "2  x3" in out and "6  x5" in out
        assert "12" not in out

    def test_json_matches_text_values(self, capsys):
        code, out, _ = run(
            capsys, ["spectrum", "--hemisphere", "2", "--r2", "1", "--below", "13", "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["mode"] == "exact"
        assert [(e["value"], e["multiplicity"]) for e in payload["eigenvalues"]] == [
            ("0", 1), ("2", 2), ("6", 3), ("12", 4),
        ]

    def test_torus_and_interval(self, capsys):
        code, out, _ = run(capsys, ["spectrum", "--torus", "1,1", "--below", "3", "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert [(e["value"], e["multiplicity"]) for e in payload["eigenvalues"]] == [
            ("0", 1), ("1", 4), ("2", 4),
        ]
        code, out, _ = run(capsys, ["spectrum", "--interval", "2", "--below", "1", "--format", "json"])
        assert json.loads(out)["eigenvalues"][1]["value"] == "1/4"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "spec.json"
        code, out, _ = run(
            capsys, ["spectrum", "--sphere", "2", "--below", "3", "--format", "json", "--out", str(target)]
        )
        assert code == EXIT_OK and out == ""
        assert json.loads(target.read_text())["dim"] == 2

    def test_two_factors_rejected(self, capsys):
        code, _, err = run(capsys, ["spectrum", *SPHERE_HEMI, "--below", "3"])
        assert code == EXIT_CONFIG
        assert "one factor" in err


class TestScan:
    def test_json_schema_and_instants(self, capsys):
        code, out, _ = run(
            capsys, ["scan", *SPHERE_HEMI, "--window", "0.01:20", "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert set(payload) == {
            "family", "classification", "accumulation", "window",
            "instants", "lambda_max", "mode",
        }
        assert payload["classification"] == "BothPositive"
        assert payload["mode"] == "exact"
        assert [inst["s"] for inst in payload["instants"]] == [
            "1/83", "1/62", "1/44", "1/29", "1/17", "1/8", "1/2", "2", "8", "17",
        ]
        assert all(inst["certified"] for inst in payload["instants"])
        at_half = payload["instants"][6]
        assert at_half["branches"] == [[1, 0]]
        assert (at_half["n_minus"], at_half["n_plus"]) == (3, 0)
        at_two = payload["instants"][7]
        assert (at_two["n_minus"], at_two["n_plus"]) == (0, 2)

    def test_text_and_json_agree(self, capsys):
        code, text_out, _ = run(capsys, ["scan", *SPHERE_HEMI, "--window", "0.4:3"])
        assert code == EXIT_OK
        code, json_out, _ = run(
            capsys, ["scan", *SPHERE_HEMI, "--window", "0.4:3", "--format", "json"]
        )
        payload = json.loads(json_out)
        for inst in payload["instants"]:
            assert f"s = {inst['s']}" in text_out
            assert f"n- = {inst['n_minus']}" in text_out

    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, ["scan", *SPHERE_HEMI, "--window", "0.4:3", "--format", "csv"]
        )
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [row["s"] for row in rows] == ["1/2", "2"]
        assert rows[0]["certified"] == "True"

    def test_rigid_family_empty(self, capsys):
        code, out, _ = run(
            capsys,
            ["scan", "--torus", "1,1", "--interval", "1", "--window", "0.01:100", "--format", "json"],
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["classification"] == "RigidNonPositive"
        assert payload["instants"] == []

    def test_degenerate_pair_exit_2(self, capsys, tmp_path):
        f1 = write_custom(tmp_path, "f1.spec")
        f2 = tmp_path / "f2.spec"
        f2.write_text(
            "dim = 2\nscalar_curvature = 5\nhas_boundary = true\n"
            "boundary_minimal = true\nlambda_max = 10\neig 0 1\neig 5/4 2\n"
        )
        code, _, err = run(
            capsys, ["scan", "--custom", f1, "--custom", str(f2), "--window", "0.1:10"]
        )
        assert code == EXIT_DEGENERATE
        assert "degenerate pair" in err

    def test_bad_custom_file_exit_3(self, capsys, tmp_path):
        bad = tmp_path / "bad.spec"
        bad.write_text("dim = 2\neig nope\n")
        code, _, err = run(
            capsys, ["scan", "--custom", str(bad), "--hemisphere", "2", "--window", "0.1:10"]
        )
        assert code == EXIT_CONFIG

    def test_insufficient_lambda_exit_1(self, capsys):
        code, _, err = run(
            capsys, ["scan", *SPHERE_HEMI, "--window", "0.01:20", "--lambda-max", "5"]
        )
        assert code == EXIT_FAILURE
        assert "lambda" in err

    def test_bad_window_exit_3(self, capsys):
        for window in ["5:1", "0:2", "abc", "1"]:
            code, _, _ = run(capsys, ["scan", *SPHERE_HEMI, "--window", window])
            assert code == EXIT_CONFIG

    def test_unknown_flag_exit_3(self, capsys):
        code, _, _ = run(capsys, ["scan", *SPHERE_HEMI, "--window", "1:2", "--bogus"])
        assert code == EXIT_CONFIG


class TestConfigFile:
    def test_config_supplies_everything(self, capsys, tmp_path):
        cfg = tmp_path / "family.cfg"
        cfg.write_text(
            "# sphere times hemisphere\n"
            "factor1 = sphere 2 r2 1\n"
            "factor2 = hemisphere 2\n"
            "window = 0.4:3\n"
            "format = json\n"
        )
        code, out, _ = run(capsys, ["scan", "--config", str(cfg)])
        assert code == EXIT_OK
        assert [i["s"] for i in json.loads(out)["instants"]] == ["1/2", "2"]

    def test_flags_win_over_config(self, capsys, tmp_path):
        cfg = tmp_path / "family.cfg"
        cfg.write_text("factor1 = sphere 2\nfactor2 = hemisphere 2\nwindow = 0.4:3\n")
        code, out, _ = run(
            capsys, ["scan", "--config", str(cfg), "--window", "1.5:3", "--format", "json"]
        )
        assert code == EXIT_OK
        assert [i["s"] for i in json.loads(out)["instants"]] == ["2"]

    def test_factor_flags_replace_config_factors(self, capsys, tmp_path):
        cfg = tmp_path / "family.cfg"
        cfg.write_text("factor1 = torus 1,1\nfactor2 = interval 1\nwindow = 0.4:3\n")
        code, out, _ = run(
            capsys, ["scan", "--config", str(cfg), *SPHERE_HEMI, "--format", "json"]
        )
        assert code == EXIT_OK
        assert json.loads(out)["classification"] == "BothPositive"

    def test_bad_config_line_exit_3(self, capsys, tmp_path):
        cfg = tmp_path / "family.cfg"
        cfg.write_text("nonsense line\n")
        code, _, err = run(capsys, ["scan", "--config", str(cfg), "--window", "1:2"])
        assert code == EXIT_CONFIG
        assert "family.cfg:1" in err

    def test_missing_config_exit_3(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["scan", "--config", str(tmp_path / "absent.cfg")])
        assert code == EXIT_CONFIG


class TestBranches:
    def test_csv_shape_and_sign_change(self, capsys):
        code, out, _ = run(
            capsys, ["branches", *SPHERE_HEMI, "--window", "1.5:2.5", "--samples", "11"]
        )
        assert code == EXIT_OK
        comments = [line for line in out.splitlines() if line.startswith("#")]
        assert any("mult=2 monotonicity=decreasing" in c for c in comments)
        data = [line for line in out.splitlines() if not line.startswith("#")]
        rows = list(csv.DictReader(io.StringIO("\n".join(data))))
        assert len(rows) == 11
        # sigma_{0,1} vanishes at s = 2: negative after, positive before
        values = [(float(r["s"]), float(r["sigma_0_1"])) for r in rows]
        assert all(v > 0 for s, v in values if s < 1.99)
        assert all(v < 0 for s, v in values if s > 2.01)

    def test_includes_zeroless_context_branches(self, capsys):
        code, out, _ = run(
            capsys, ["branches", *SPHERE_HEMI, "--window", "1.5:2.5", "--samples", "3", "--limit", "3"]
        )
        header = next(line for line in out.splitlines() if line.startswith("s,"))
        assert "sigma_1_1" in header  # no zero, kept for context


class TestVerify:
    def test_passes_on_catalog_family(self, capsys):
        code, out, _ = run(
            capsys, ["verify", *SPHERE_HEMI, "--window", "0.1:10", "--samples", "5000"]
        )
        assert code == EXIT_OK
        assert "all checks passed" in out
        assert "FAIL" not in out
        assert "hemisphere multiplicities" in out
        assert "sphere multiplicities" in out
        assert "dense scan" in out
        assert "brute force" in out

    def test_interval_factor_checked_against_fd(self, capsys):
        code, out, _ = run(
            capsys, ["verify", "--sphere", "2", "--interval", "1", "--window", "0.5:10", "--samples", "2000"]
        )
        assert code == EXIT_OK
        assert "FD Neumann spectrum" in out

    def test_fault_injection_fails(self, capsys, monkeypatch):
        """Corrupting the catalog hemisphere multiplicity table must be caught
        by the independent even-harmonic kernel-rank oracle."""
        real = spectra.even_harmonic_multiplicity

        def corrupted(n, k):
            return real(n, k) + (1 if k == 3 else 0)

        monkeypatch.setattr(spectra, "even_harmonic_multiplicity", corrupted)
        code, out, _ = run(
            capsys, ["verify", *SPHERE_HEMI, "--window", "0.5:5", "--samples", "2000"]
        )
        assert code == EXIT_FAILURE
        assert "FAIL" in out
        assert "hemisphere multiplicities" in out.split("FAIL", 1)[1]

# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
import json

from cli import cli_homology
from cli.cliexec_homology import CliExecHomology, load_results
from cohomology.abgroup import FgAbelian, GradedGroups

TEST_DATA_DIR = "./test/test_data"
CONFIGURATION = "./config/config.yml"


class TestRun:

    def test_text(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/n7c.yml"
        ])
        lines = out.splitlines()
        assert lines[0] == "diagram 1 (line 2): N7C p=1 q=3 n=2"
        assert "    H4 = Z/9" in lines
        assert "    H3 = Z/9" in lines
        assert "  classification: type-2 alpha=1 beta=1 gamma=9" in lines
        assert "diagram 2 (line 6): N7C p=1 q=1 n=1" in lines
        assert lines[-1] == "ok: True"

    def test_exit_code(self):
        assert cli_homology.main([
            "run", "--input", f"{TEST_DATA_DIR}/n7c.yml"]) == 0
        assert cli_homology.main([
            "run", "--input", f"{TEST_DATA_DIR}/invalid.yml"]) == 1

    def test_invalid_diagram(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/invalid.yml"
        ])
        assert "  invalid:" in out
        assert "    gcd(q, n) = 3, not 1" in out
        # the valid diagram is still computed
        assert "    H4 = Z/9" in out
        assert out.splitlines()[-1] == "ok: False"

    def test_parse_errors(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/bad_field.yml"
        ])
        assert f"{TEST_DATA_DIR}/bad_field.yml: line 1: diagram 1: " \
               f"field nn:" in out
        assert cli_homology.main([
            "run", "--input", f"{TEST_DATA_DIR}/bad_field.yml"]) == 1

    def test_missing_file(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/nothing.yml"
        ])
        assert out == f"{TEST_DATA_DIR}/nothing.yml: file not found"

    def test_homology_only(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/n7b.yml",
            "--homology"
        ])
        assert "  homology:" in out
        assert "  cohomology:" not in out
        assert "    H2 = Z + Z/2" in out
        assert "    H3: 0 -> Z/5 -> H3 -> Z/5 -> 0 (open)" in out
        assert "  extension: beta=5 gamma=5 (open)" in out

    def test_cohomology_only(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/brieskorn.yml",
            "--cohomology"
        ])
        assert "  homology:" not in out
        assert "    H4 = Z/7" in out
        assert "  classification: type-1 gamma=7" in out

    def test_json(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/n7a.yml",
            "--format", "json"
        ])
        document = json.loads(out)
        assert document["schema"] == 1
        assert document["ok"] is True
        first, second = document["results"]
        assert first["extension"] == {"beta": 2, "gamma": 2,
                                      "state": "open"}
        assert second["extension"]["beta"] == 0
        assert first["diagnostics"]["det"] == 4

    def test_load_results(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/n7c.yml",
            "--format", "json"
        ])
        results = load_results(out)
        cohomology = results[0]["cohomology"]
        assert isinstance(cohomology, GradedGroups)
        assert cohomology.group(4) == FgAbelian.cyclic(9)

    def test_check(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/n7a.yml",
            "--check"
        ])
        assert "  check: N7A |H4|" in out
        assert "status=mismatch" not in out
        assert out.splitlines()[-1] == "ok: True"

    def test_all_families(self):
        assert cli_homology.main([
            "run",
            "--input", f"{TEST_DATA_DIR}/all_families.json",
            "--check"
        ]) == 0

    def test_derived_beta_command(self):
        out = cli_homology.execute([
            "run",
            "--input", f"{TEST_DATA_DIR}/derived.yml",
            "--check"
        ])
        lines = out.splitlines()
        # beta = |H4| / gamma, see derived_beta.yml
        assert any(line.startswith("  check: N7E beta gamma [") and
                   line.endswith("formula=2 oracle=2 status=ok")
                   for line in lines)
        assert any(line.startswith("  check: N7E gamma [") and
                   line.endswith("formula=1 oracle=1 status=ok")
                   for line in lines)
        assert lines[-1] == "ok: True"


class TestSweep:

    def test_text(self):
        out = cli_homology.execute([
            "sweep",
            "--family", "N7C",
            "--max-q", "2",
            "--max-slope", "1",
            "--max-n", "1"
        ])
        assert out.splitlines()[0].split()[:3] == ["p", "q", "n"]
        assert "Z/4" in out

    def test_json_with_check(self):
        out = cli_homology.execute([
            "sweep",
            "--family", "N7H",
            "--max-slope", "1",
            "--max-order", "1",
            "--check",
            "--format", "json"
        ])
        rows = json.loads(out)
        assert rows
        assert all(r["check"] == "ok" for r in rows)


class TestCatalog:

    def test_product(self):
        out = cli_homology.execute([
            "catalog",
            "--name", "S2xS5"
        ])
        assert "H2 = Z" in out.splitlines()
        assert "classification: symmetric-profile as S5xS2" in out

    def test_p_family(self):
        out = cli_homology.execute([
            "catalog",
            "--p-family", "A",
            "--r", "3",
            "--variant", "Z2"
        ])
        assert "H2 = Z + Z/2" in out.splitlines()
        assert "H3 = Z/3" in out.splitlines()

    def test_p_family_needs_r(self):
        out = cli_homology.execute([
            "catalog",
            "--p-family", "C"
        ])
        assert out == "Error: P-family C needs an explicit r"
        assert cli_homology.main(["catalog", "--p-family", "C"]) == 1

    def test_p_family_r_zero(self):
        out = cli_homology.execute([
            "catalog",
            "--p-family", "C",
            "--r", "0"
        ])
        assert "H3 = Z" in out.splitlines()

    def test_error(self):
        out = cli_homology.execute([
            "catalog",
            "--brieskorn", "0"
        ])
        assert out == "Error: Brieskorn degree must be positive, got 0"
        assert cli_homology.main(["catalog", "--brieskorn", "0"]) == 1

    def test_atoms(self):
        out = cli_homology.execute(["catalog"])
        assert any(line.startswith("S2 (dim 2): Hatcher")
                   for line in out.splitlines())

    def test_atoms_json(self):
        out = cli_homology.execute(["catalog", "--format", "json"])
        names = [a["name"] for a in json.loads(out)]
        assert "SU3/SO3" in names


class TestCliExec:

    def test_settings(self):
        cliexec = CliExecHomology({"configuration": CONFIGURATION})
        assert cliexec.settings.sweep.max_order == 4

    def test_sweep_bounds_from_config(self):
        cliexec = CliExecHomology({"configuration": CONFIGURATION})
        df = cliexec.sweep("N7C", {"max_q": 1, "max_slope": 1,
                                   "max_n": None})
        # max_n falls back to the configured 4
        assert sorted(df["n"].unique()) == [1, 2, 3, 4]

    def test_no_command(self):
        assert cli_homology.main([]) == 1

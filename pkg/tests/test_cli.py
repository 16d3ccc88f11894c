import json
import subprocess
import sys
from pathlib import Path

import pytest

from cantor_spectra.cli import CliConfig, default_raices_instances, main

from conftest import DRAWN_CHILD_SETS

GOLDEN = Path(__file__).parent / "golden"
S8 = ["-p", "2", "-a", "3", "-D", "0,2,4,6"]
S4 = ["-p", "2", "-a", "2", "-D", "0,2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


class TestAnalyze:
    def test_reference(self, capsys):
        code, out, _ = run(capsys, "analyze", *S8)
        assert code == 0
        data = json.loads(out)
        assert data["T"] == [2, 3] and data["is_cyclotomic_product"] and data["hadamard_sets"] == 16
        assert out == golden("analyze_8_0246.json")

    def test_small(self, capsys):
        code, out, _ = run(capsys, "analyze", *S4)
        data = json.loads(out)
        assert code == 0 and data["T"] == [2]
        assert data["is_cyclotomic_product"] and data["circle_hypothesis"]

    def test_text(self, capsys):
        code, out, _ = run(capsys, "analyze", *S8, "--format", "text")
        assert code == 0 and "P_D == Phi_4 * Phi_8: True" in out

    def test_residue_collision(self, capsys):
        code, _, err = run(capsys, "analyze", "-p", "2", "-a", "2", "-D", "0,4")
        assert code == 2 and "congruent" in err

    def test_missing_system(self, capsys):
        code, _, err = run(capsys, "analyze")
        assert code == 2

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p": 2, "alpha": 3, "D": [0, 2, 4, 6]}))
        code, out, _ = run(capsys, "analyze", "--config", str(cfg))
        assert code == 0 and out == golden("analyze_8_0246.json")

    def test_config_unknown_field(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 1}))
        assert run(capsys, "analyze", "--config", str(cfg))[0] == 2


class TestTree:
    def test_dot(self, capsys):
        code, out, _ = run(capsys, "tree", *S8, "--depth", "2", "--format", "dot")
        assert code == 0 and out == golden("tree_8_0246_depth2.dot")
        assert out.count("n0 -> ") == 4

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "tree", *S8, "--depth", "3")
        data = json.loads(out)
        assert code == 0
        assert set(data) == {"system", "depth", "default_rule", "root"}
        assert data["depth"] == 3 and len(data["root"]["children"]) == 4

    def test_index(self, capsys):
        code, out, _ = run(capsys, "tree", *S4, "--depth", "1", "--index", "1")
        assert code == 0
        assert [c["label"] for c in json.loads(out)["root"]["children"]] == [0, 3]
        assert run(capsys, "tree", *S4, "--depth", "1", "--index", "2")[0] == 2

    def test_depth_zero(self, capsys):
        assert run(capsys, "tree", *S8, "--depth", "0")[0] == 2

    def test_unsupported(self, capsys):
        code, _, err = run(capsys, "tree", "-p", "2", "-a", "3", "-D", "0,2,4,5")
        assert code == 3 and "unsupported" in err

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "t.dot"
        code, out, _ = run(capsys, "tree", *S8, "--depth", "2", "--format", "dot", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8") == golden("tree_8_0246_depth2.dot")


class TestSpectrum:
    def test_canonical(self, capsys):
        code, out, _ = run(capsys, "spectrum", *S4, "--depth", "3")
        assert code == 0 and out == golden("spectrum_4_02_depth3.json")
        values = [r["value"] for r in json.loads(out)]
        assert {0, 1, 4, 5} <= set(values)

    def test_drawn_tree_file(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--tree", str(GOLDEN / "drawn_labeling.json"), "--format", "text")
        assert code == 0
        assert "405 5.2.6|0\n" in out and "296 0.5.4|0\n" in out and out.startswith("0 |0\n")

    def test_not_spectral(self, capsys, tmp_path, s4):
        from cantor_spectra.trees import labeling_from_child_sets

        bad = labeling_from_child_sets(s4, 2, {(0,): (1, 2)})
        path = tmp_path / "bad.json"
        path.write_text(bad.to_json())
        assert run(capsys, "spectrum", "--tree", str(path))[0] == 1

    def test_unreadable_tree(self, capsys, tmp_path):
        path = tmp_path / "x.json"
        path.write_text("{")
        assert run(capsys, "spectrum", "--tree", str(path))[0] == 2


class TestVerify:
    def test_orthogonal(self, capsys):
        code, out, _ = run(capsys, "verify", *S4, "--freqs", "0,1,4,5")
        assert code == 0 and json.loads(out)["orthogonal"]

    def test_pair(self, capsys):
        code, out, _ = run(capsys, "verify", *S4, "--freqs", "0,2")
        assert code == 1 and json.loads(out)["violating_pair"] == [0, 2]

    def test_singleton(self, capsys):
        assert run(capsys, "verify", *S4, "--freqs", "0")[0] == 0

    def test_negative(self, capsys):
        code, out, _ = run(capsys, "verify", *S4, "--freqs=-1,0", "--format", "text")
        assert code == 0 and "orthogonal: True" in out

    def test_missing_freqs(self, capsys):
        assert run(capsys, "verify", *S4)[0] == 2


class TestMuhat:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "muhat", *S4, "--grid", "0:4:0.5", "-J", "40")
        assert code == 0 and out == golden("muhat_4_02.csv")
        assert out.splitlines()[0] == "xi,re,im,abs,tail_bound"
        assert len(out.splitlines()) == 1 + 9

    def test_single_point(self, capsys):
        code, out, _ = run(capsys, "muhat", *S8, "--grid", "0:0:1")
        assert code == 0 and out.splitlines()[1] == "0,1,0,1,0"

    @pytest.mark.parametrize("grid", ["1:0:1", "0:1:0"])
    def test_bad_range(self, capsys, grid):
        assert run(capsys, "muhat", *S4, "--grid", grid)[0] == 2

    @pytest.mark.parametrize("grid", ["0:1", "a:b:c"])
    def test_malformed_grid(self, capsys, grid):
        with pytest.raises(SystemExit) as info:
            main(["muhat", *S4, "--grid", grid])
        assert info.value.code == 2

    def test_missing_grid(self, capsys):
        assert run(capsys, "muhat", *S4)[0] == 2


class TestOracle:
    def test_default(self, capsys):
        code, out, _ = run(capsys, "oracle", "--bound", "512")
        assert code == 0
        assert out.count("PASS") == 1 + len(default_raices_instances())
        assert "FAIL" not in out

    def test_parallel(self, capsys):
        code, out, _ = run(capsys, "oracle", "--bound", "256", "--no-raices", "--jobs", "2", *S8)
        assert code == 0 and out.startswith("PASS exact/numeric sweep |k| <= 256 on 1 system(s)")

    def test_guard(self, capsys):
        code, _, err = run(capsys, "oracle", "--bound", "0", "--betas", "7", "--raices-p", "2")
        assert code == 2 and "too large" in err

    def test_empty_sweep(self, capsys):
        assert run(capsys, "oracle", "--bound", "0", "--no-raices")[0] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_defaults():
    cfg = CliConfig("tree")
    assert (cfg.depth, cfg.J, cfg.limit, cfg.format) == (4, 40, 100, "json")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cantor_spectra", "analyze", *S4],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["T"] == [2]

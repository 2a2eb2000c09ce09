import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from monotoric.cli import run
from monotoric.io import OUTPUT_ENV

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def fan(name):
    return DATA / f"{name}.fan"


class TestFan:
    def test_validate(self):
        code, out, _ = call("fan", "validate", fan("p2"))
        assert code == 0 and out.strip() == "complete smooth simplicial"

    def test_validate_singular(self):
        code, out, _ = call("fan", "validate", fan("p113"))
        assert code == 0 and out.strip() == "complete singular simplicial"

    def test_star(self):
        code, out, _ = call("fan", "star", fan("p2"), "--ray", "1,0", "--point", "1,0")
        assert code == 0
        assert "3 cones" in out and "(1,0): interior" in out

    def test_missing_file(self, tmp_path):
        code, _, err = call("fan", "validate", tmp_path / "nope.fan")
        assert code == 1 and "error" in err

    def test_bad_fan(self, tmp_path):
        p = tmp_path / "bad.fan"
        p.write_text(json.dumps({"rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
                                 "max_cones": [[0, 1], [1, 2], [0, 2]]}))
        code, _, err = call("fan", "validate", p)
        assert code == 1


class TestDivisor:
    def test_polytope(self):
        code, out, _ = call("divisor", "polytope", fan("p2"), "--divisor", "H")
        assert code == 0 and "lattice points: 3" in out

    def test_ample(self):
        assert "ample: yes" in call("divisor", "ample", fan("p2"), "--divisor", "H")[1]
        assert "ample: no" in call("divisor", "ample", fan("p2"), "--divisor", "zero")[1]

    def test_class(self):
        code, out, _ = call("divisor", "class", fan("p2"), "--divisor", "H", "--other", "H2")
        assert code == 0 and "same class: yes" in out and "Picard rank: 1" in out

    def test_inline_divisor(self):
        code, out, _ = call("divisor", "polytope", fan("p2"), "--divisor", "2,0,0")
        assert code == 0 and "lattice points: 6" in out

    def test_unknown_name(self):
        assert call("divisor", "polytope", fan("p2"), "--divisor", "nosuch")[0] == 1


class TestDivision:
    def test_check_adapted(self):
        code, out, _ = call("division", "check", "--fan", fan("p2"), "trop")
        assert code == 0 and out.strip() == "ADAPTED"

    def test_check_not_adapted(self):
        code, out, _ = call("division", "check", "--fan", fan("bl1p2"), DATA / "trop_bl1p2.div")
        assert code == 0
        assert "NOT ADAPTED: witness α=(1,1) σ=<(1,0),(-1,-1)>" in out

    def test_check_shifted(self):
        assert call("division", "check", "--fan", fan("bl1p2"), "shifted")[1].strip() == "ADAPTED"

    def test_build_round_trip(self, tmp_path):
        code, out, _ = call("--output-dir", tmp_path, "division", "build", fan("f3"),
                            "--mode", "from-ample", "--divisor", "1,0,4,3", "--out", "f3.div")
        assert code == 0 and out.rstrip().endswith("adapted: yes")
        code, out, _ = call("division", "check", "--fan", fan("f3"), tmp_path / "f3.div")
        assert code == 0 and out.strip() == "ADAPTED"

    def test_build_norm2d(self):
        code, out, _ = call("division", "build", fan("bl1p2"), "--mode", "norm2d")
        assert code == 0 and "adapted: yes" in out

    def test_from_ample_needs_divisor(self):
        assert call("division", "build", fan("f3"), "--mode", "from-ample")[0] == 1


class TestCohomology:
    def test_minus3h(self):
        code, out, _ = call("cohomology", "--fan", fan("p2"), "--divisor", "minus3H", "--model", "all")
        assert code == 0
        assert "models agree" in out
        total = [l for l in out.splitlines() if l.startswith("total")][0].split()[1:]
        assert total == ["0", "0", "1"]

    def test_json(self):
        code, out, _ = call("--json", "cohomology", "--fan", fan("p2"), "--divisor", "threeH")
        rep = json.loads(out)
        assert rep["command"] == "cohomology"
        assert rep["derived"]["totals"] == [10, 0, 0]
        assert json.dumps(rep, sort_keys=True, indent=2) + "\n" == out

    def test_experimental_gate(self):
        assert call("cohomology", "--fan", fan("p113"), "--divisor", "anticanonical",
                    "--model", "polytope")[0] == 1
        assert call("cohomology", "--fan", fan("p113"), "--divisor", "anticanonical",
                    "--model", "polytope", "--experimental")[0] == 0

    def test_points_unsupported(self):
        assert call("cohomology", "--fan", fan("p1p1"), "--divisor", "O1m2",
                    "--model", "points")[0] == 1

    def test_hom(self):
        code, out, _ = call("--json", "hom", "--fan", fan("p1p1"), "--from", "0,0,0,0",
                            "--to=-1,0,0,2")
        assert code == 0 and json.loads(out)["derived"]["totals"] == [0, 2, 0]

    def test_ring(self):
        code, out, _ = call("ring", "--fan", fan("p2"), "--divisor", "H", "--kmax", "3")
        assert code == 0 and "dims: 1 3 6 10" in out

    def test_ring_not_ample(self):
        assert call("ring", "--fan", fan("p2"), "--divisor", "zero")[0] == 1

    def test_monodromy(self):
        code, out, _ = call("monodromy", "twist", "--fan", fan("p1"), "--divisor", "Dplus",
                            "--section", "0,0", "--times", "3")
        assert code == 0 and "section: (-3,0)" in out

    def test_localize(self):
        code, out, _ = call("localize", "--fan", fan("p1"), "--cut", "Dplus", "--bundle", "zero",
                            "--box", "3")
        assert code == 0 and "agrees" in out


class TestTrack:
    def test_p2(self, tmp_path):
        code, out, _ = call("--output-dir", tmp_path, "track", "--fan", fan("p2"), "--twist", "H3",
                            "--steps", "64", "--out", "trace.txt")
        assert code == 0
        assert "cycle type: [3]" in out
        rows = (tmp_path / "trace.txt").read_text().splitlines()
        assert len(rows) == 66

    def test_too_few_steps(self):
        assert call("track", "--fan", fan("p2"), "--twist", "H3", "--steps", "4")[0] == 1


class TestPlot:
    def test_deterministic(self, tmp_path):
        for name in ("a.svg", "b.svg"):
            assert call("--output-dir", tmp_path, "plot", "--fan", fan("f3"), "--division", "trop",
                        "--out", name)[0] == 0
        a, b = (tmp_path / "a.svg").read_bytes(), (tmp_path / "b.svg").read_bytes()
        assert a == b and a.startswith(b"<?xml")

    def test_fan_only(self, tmp_path):
        assert call("--output-dir", tmp_path, "plot", "--fan", fan("p2"), "--out", "f.svg")[0] == 0
        assert (tmp_path / "f.svg").exists()

    def test_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTPUT_ENV, str(tmp_path))
        assert call("plot", "--fan", fan("p2"), "--division", "trop", "--out", "env.svg")[0] == 0
        assert (tmp_path / "env.svg").exists()

    def test_3d_unsupported(self, tmp_path):
        assert call("--output-dir", tmp_path, "plot", "--fan", fan("p3"), "--out", "x.svg")[0] == 1


class TestUsage:
    def test_unknown_command(self):
        code, _, err = call("frobnicate")
        assert code == 1 and "usage" in err

    def test_no_command(self):
        assert call()[0] == 1

    def test_json_reports_are_deterministic(self):
        a = call("--json", "divisor", "ample", fan("f3"), "--divisor", "anticanonical")[1]
        b = call("--json", "divisor", "ample", fan("f3"), "--divisor", "anticanonical")[1]
        assert a == b
        assert json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n" == a

    def test_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "monotoric", "fan", "validate", str(fan("p1"))],
                             capture_output=True, text=True)
        assert res.returncode == 0 and res.stdout.strip() == "complete smooth simplicial"

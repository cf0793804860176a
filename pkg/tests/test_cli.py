import json

import numpy as np
import pytest

import fracdual as fd
from fracdual.cli import main

from conftest import REFERENCE_MU, REFERENCE_P0, make_gap_case, make_reference


@pytest.fixture
def reference_file(tmp_path):
    path = tmp_path / "reference.json"
    path.write_text(fd.serialize_instance(make_reference()))
    return path


@pytest.fixture
def gap_file(tmp_path):
    path = tmp_path / "gap.json"
    path.write_text(fd.serialize_instance(make_gap_case()))
    return path


class TestSolve:
    def test_certified_solve_exits_zero(self, reference_file, capsys):
        code = main(["solve", str(reference_file)])
        assert code == 0
        out = capsys.readouterr().out
        assert "certificate=Perfect" in out
        result_path = reference_file.with_suffix(".result.json")
        assert result_path.exists()
        data = json.loads(result_path.read_text())
        assert data["primal_value"] == pytest.approx(REFERENCE_P0, abs=1e-6)
        assert data["certificate_kind"] == "Perfect"

    def test_explicit_output_path(self, reference_file, tmp_path):
        out = tmp_path / "custom.json"
        assert main(["solve", str(reference_file), "--output", str(out)]) == 0
        assert out.exists()

    def test_uncertified_solve_exits_one(self, gap_file, capsys):
        code = main(["solve", str(gap_file)])
        assert code == 1
        assert "certificate=None" in capsys.readouterr().out

    def test_missing_file_exits_two(self, tmp_path, capsys):
        assert main(["solve", str(tmp_path / "nope.json")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_file_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["solve", str(bad)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_instance_exits_two(self, tmp_path, capsys):
        path = tmp_path / "invalid.json"
        payload = fd.instance_payload(make_reference())
        payload["delta"] = 5.0
        path.write_text(fd.canonical_text(payload))
        assert main(["solve", str(path)]) == 2
        assert "error:" in capsys.readouterr().err


class TestVerify:
    def test_agreement_exits_zero(self, reference_file, capsys):
        code = main(["verify", str(reference_file)])
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_disagreement_exits_one(self, reference_file, capsys, monkeypatch):
        # bias the solver result past the tolerance so the comparison
        # branch and exit code are exercised deterministically
        import dataclasses

        import fracdual.cli as cli

        real_solve = cli.solve

        def biased(prog, opts=None):
            res = real_solve(prog, opts)
            return dataclasses.replace(res, P0_value=res.P0_value + 0.05)

        monkeypatch.setattr(cli, "solve", biased)
        code = main(["verify", str(reference_file)])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_dimension_too_large_exits_two(self, tmp_path, capsys):
        path = tmp_path / "big.json"
        assert main(["gen", "--n", "4", "--seed", "7", "--output", str(path)]) == 0
        assert main(["verify", str(path)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_generated_instance_verifies(self, tmp_path):
        path = tmp_path / "n2.json"
        assert main(["gen", "--n", "2", "--m", "0", "--seed", "1",
                     "--output", str(path)]) == 0
        assert main(["verify", str(path), "--resolution", "2e-3"]) == 0


class TestGen:
    def test_stdout_output_parses(self, capsys):
        assert main(["gen", "--n", "3", "--seed", "5"]) == 0
        prog = fd.parse_instance(capsys.readouterr().out)
        assert prog.n == 3

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["gen", "--n", "2", "--seed", "42", "--output", str(a)])
        main(["gen", "--n", "2", "--seed", "42", "--output", str(b)])
        assert a.read_text() == b.read_text()

    def test_bad_arguments_exit_two(self, capsys):
        assert main(["gen", "--n", "0"]) == 2
        assert "error:" in capsys.readouterr().err


class TestSweep:
    def test_profile_rows(self, reference_file, capsys):
        code = main(["sweep", str(reference_file), "--grid", "32"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "mu,dual_value,certificate"
        assert len(lines) == 33
        rows = [line.split(",") for line in lines[1:]]
        mus = [float(r[0]) for r in rows]
        vals = [float(r[1]) for r in rows]
        assert mus[0] == pytest.approx(1.0)
        assert mus[-1] == pytest.approx(2.0)
        # the profile dips near the true best parameter, far from the edges
        best = mus[int(np.argmin(vals))]
        assert best == pytest.approx(REFERENCE_MU, abs=0.05)
        assert all(r[2] in {"Perfect", "WeakOnly", "None"} for r in rows)

    def test_profile_to_file(self, reference_file, tmp_path):
        out = tmp_path / "profile.csv"
        assert main(["sweep", str(reference_file), "--grid", "8",
                     "--output", str(out)]) == 0
        assert out.read_text().startswith("mu,dual_value,certificate\n")

    def test_landscape_grid(self, reference_file, capsys):
        code = main(["sweep", str(reference_file), "--at-mu", "2.0",
                     "--landscape", "6x5"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "varsigma,sigma,dual_value"
        assert len(lines) == 31
        for line in lines[1:]:
            vs, sg, val = line.split(",")
            float(vs), float(sg)
            assert val == "nonPD" or np.isfinite(float(val))

    def test_landscape_marks_nonpd_cells(self, gap_file, capsys):
        code = main(["sweep", str(gap_file), "--at-mu", "3.0",
                     "--landscape", "8x8"])
        assert code == 0
        out = capsys.readouterr().out
        assert "nonPD" in out

    def test_degenerate_interval_single_row(self, tmp_path, capsys):
        path = tmp_path / "point.json"
        path.write_text(fd.serialize_instance(make_reference(delta=1.0)))
        assert main(["sweep", str(path)]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["solve"])  # missing instance argument
    assert exc.value.code == 2

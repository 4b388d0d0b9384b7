"""命令行：输出行与退出码"""

import pytest
from typer.testing import CliRunner

from conftest import write_text
from trioid_lab.algebra.trioid_format import parse_trioid
from trioid_lab.cli import app
from trioid_lab.tools.derived import parse_threerack

runner = CliRunner()


@pytest.fixture
def fixture_file(tmp_path, registry):
    def make(name: str):
        return write_text(tmp_path / f"{name}.trioid", registry.get_fixture(name))
    return make


class TestCheck:
    def test_t6_trigroup(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("T6")), "--structure", "trigroup"])
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines
        assert all(line.startswith("PASS ") for line in lines)

    def test_p4_is_not_a_trigroup(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("P4")), "-s", "trigroup"])
        assert result.exit_code == 1
        assert any(line.startswith("FAIL inverse-missing witness=(1)") for line in result.output.splitlines())

    def test_p4_trisemigroup(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("P4")), "-s", "trisemigroup"])
        assert result.exit_code == 0
        assert "PASS T4 checked=64" in result.output

    def test_digroup(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("T6")), "-s", "digroup", "--unit", "0"])
        assert result.exit_code == 0

    def test_digroup_needs_unit(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("P4")), "-s", "digroup"])
        assert result.exit_code == 2
        assert "error:" in result.output

    def test_spot(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("T6")), "-s", "trisemigroup",
                                     "--spot", "50", "--seed", "1"])
        assert result.exit_code == 0
        assert "NOTE spot-check samples=50 seed=1" in result.output

    def test_spot_needs_trisemigroup(self, fixture_file):
        result = runner.invoke(app, ["check", str(fixture_file("T6")), "--spot", "50"])
        assert result.exit_code == 2
        assert "error:" in result.output

    def test_malformed_file(self, tmp_path):
        path = write_text(tmp_path / "bad.trioid", "trioid v1\norder 2\nop left\n0 1\n1\n")
        result = runner.invoke(app, ["check", str(path)])
        assert result.exit_code == 2
        assert "error: 第 5 行" in result.output

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["check", str(tmp_path / "missing.trioid")])
        assert result.exit_code == 2


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ["check", "-s", "trigroup"],
        ["check", "-s", "trisemigroup"],
        ["laws"],
    ])
    @pytest.mark.parametrize("name", ["T6", "P4"])
    def test_repeated_runs_are_identical(self, fixture_file, args, name):
        path = str(fixture_file(name))
        command = [args[0], path, *args[1:]]
        first = runner.invoke(app, command)
        second = runner.invoke(app, command)
        assert first.exit_code == second.exit_code
        assert first.stdout_bytes == second.stdout_bytes
        assert first.stdout_bytes


class TestLaws:
    def test_t6(self, fixture_file):
        result = runner.invoke(app, ["laws", str(fixture_file("T6"))])
        assert result.exit_code == 0
        assert "PASS inv.6" in result.output
        assert "PASS xyz.3 checked=7776" in result.output

    def test_p4_cannot_be_certified(self, fixture_file):
        result = runner.invoke(app, ["laws", str(fixture_file("P4"))])
        assert result.exit_code == 1
        assert "FAIL inverse-missing" in result.output


class TestRack:
    def test_derive(self, fixture_file, tmp_path):
        out = tmp_path / "racks" / "t6.threerack"
        result = runner.invoke(app, ["derive-rack", str(fixture_file("T6")), "-o", str(out)])
        assert result.exit_code == 0
        assert "PASS 3r1" in result.output
        assert "PASS rack-solve" in result.output
        assert parse_threerack(out.read_text(encoding="utf-8")).order == 6

    def test_solve(self, fixture_file):
        result = runner.invoke(app, ["solve", str(fixture_file("T6")), "--x", "1", "--y", "0", "--b", "2"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["z=4", "verified=true"]

    def test_solve_out_of_range(self, fixture_file):
        result = runner.invoke(app, ["solve", str(fixture_file("T6")), "--x", "9", "--y", "0", "--b", "2"])
        assert result.exit_code == 2
        assert "error:" in result.output


class TestConstruct:
    def test_pair(self, tmp_path, p4):
        out = tmp_path / "p4.trioid"
        result = runner.invoke(app, ["construct", "pair", "--left", "0 1; 1 0", "--right", "0 1; 1 0", "-o", str(out)])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["order=4"]
        assert parse_trioid(out.read_text(encoding="utf-8")) == p4

    def test_action(self, tmp_path, t6):
        out = tmp_path / "t6.trioid"
        result = runner.invoke(app, ["construct", "action", "--m", "3", "--e", "0", "--h", "0 1; 1 0",
                                     "--action", "0 1 2; 0 2 1", "-o", str(out)])
        assert result.exit_code == 0
        assert "unit=0" in result.output
        assert parse_trioid(out.read_text(encoding="utf-8")) == t6

    def test_action_not_transitive(self, tmp_path):
        out = tmp_path / "a.trioid"
        result = runner.invoke(app, ["construct", "action", "--m", "3", "--e", "0", "--h", "0",
                                     "--action", "0 1 2", "-o", str(out)])
        assert result.exit_code == 0
        assert "NOTE action not transitive on M-{e}" in result.output

    def test_action_fixed_point_moved(self, tmp_path):
        result = runner.invoke(app, ["construct", "action", "--m", "2", "--e", "0", "--h", "0 1; 1 0",
                                     "--action", "0 1; 1 0", "-o", str(tmp_path / "a.trioid")])
        assert result.exit_code == 2
        assert "h·e = e" in result.output

    def test_matrix(self, tmp_path):
        out = tmp_path / "m.trioid"
        result = runner.invoke(app, ["construct", "matrix", "--p", "3", "--n", "2", "-o", str(out)])
        assert result.exit_code == 0
        assert result.output.splitlines()[:2] == ["order=18", "unit=0"]

    def test_matrix_non_prime(self, tmp_path):
        result = runner.invoke(app, ["construct", "matrix", "--p", "4", "-o", str(tmp_path / "m.trioid")])
        assert result.exit_code == 2
        assert "error: p:" in result.output

    def test_group(self, tmp_path):
        out = tmp_path / "z3.trioid"
        result = runner.invoke(app, ["construct", "group", "--table", "0 1 2; 1 2 0; 2 0 1", "-o", str(out)])
        assert result.exit_code == 0
        assert parse_trioid(out.read_text(encoding="utf-8")).unit == 0


class TestEnumerate:
    def test_oracle(self, tmp_path):
        result = runner.invoke(app, ["enumerate", "-n", "2", "-c", "trigroup", "--up-to-iso",
                                     "--oracle", "-o", str(tmp_path / "census")])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0].startswith("order=2 class=trigroup count=")
        assert lines[1].startswith("PASS census-oracle")
        assert (tmp_path / "census" / "census.txt").exists()

    def test_guard(self, tmp_path):
        result = runner.invoke(app, ["enumerate", "-n", "5", "-o", str(tmp_path)])
        assert result.exit_code == 2
        assert "error:" in result.output


class TestLeibniz:
    def test_residuals(self):
        result = runner.invoke(app, ["leibniz", "--dim", "2", "--samples", "5"])
        assert result.exit_code == 0
        ids = [line.split()[1] for line in result.output.splitlines()]
        assert ids == ["leibniz.identity", "leibniz.trilinear.1", "leibniz.trilinear.2",
                       "leibniz.trilinear.3", "leibniz.closed-form"]

    def test_bad_dim(self):
        result = runner.invoke(app, ["leibniz", "--dim", "7"])
        assert result.exit_code == 2

    def test_bad_step(self):
        result = runner.invoke(app, ["leibniz", "--step", "0"])
        assert result.exit_code == 2
        assert "error: step:" in result.output

import io
import json
import subprocess
import sys

from inducibility.cli import run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err, env or {})
    return code, out.getvalue(), err.getvalue()


class TestExamples:
    def test_count(self):
        code, out, _ = call("count", "--pattern", "(*,(*,*))", "--tree", "(*,*,(*,*,*))")
        assert code == 0
        assert json.loads(out) == {"copies": "6", "total": "10", "density": "3/5"}

    def test_star_formula(self):
        code, out, _ = call("formulas", "stars", "--d", "3", "--k", "3")
        assert (code, out) == (0, "1/4\n")

    def test_induce(self):
        code, out, _ = call("induce", "--tree", "((*,*),*,((*,*),*,*))", "--leaves", "1,2,4,5")
        assert (code, out) == (0, "(*,*,(*,*))\n")


class TestCommands:
    def test_count_per_leaf_and_oracle(self):
        code, out, _ = call("count", "--pattern", "(*,(*,*))", "--tree", "(*,*,(*,*,*))", "--per-leaf", "--oracle")
        assert code == 0
        assert json.loads(out)["per_leaf"] == ["3", "3", "4", "4", "4"]

    def test_enumerate(self):
        code, out, _ = call("enumerate", "--d", "3", "--leaves", "7", "--strict")
        assert out.split() == ["(*,(*,*,*),(*,*,*))", "(*,*,(*,*,(*,*,*)))"]

    def test_enumerate_count_with_cache(self, tmp_path):
        code, out, _ = call("--cache-dir", str(tmp_path), "enumerate", "--d", "2", "--leaves", "10", "--count-only")
        assert (code, out) == (0, "98\n")
        assert (tmp_path / "count-d2-n10-free.json").exists()

    def test_enumerate_json(self):
        code, out, _ = call("--format", "json", "enumerate", "--d", "2", "--leaves", "4")
        assert json.loads(out) == [{"code": "((*,*),(*,*))"}, {"code": "(*,(*,(*,*)))"}]

    def test_maximize(self):
        code, out, _ = call("maximize", "--pattern", "(*,*,*)", "--d", "3", "--leaves", "9", "--strict")
        data = json.loads(out)
        assert data["max_density"] == "5/14" and data["strict"] is True
        assert data["maximizers"] == ["((*,*,*),(*,*,*),(*,*,*))"]

    def test_maximize_parallel_output_identical(self):
        argv = ["maximize", "--pattern", "((*,*),(*,*))", "--d", "2", "--leaves", "10"]
        assert call(*argv) == call(*argv, "--workers", "2")

    def test_bounds_csv(self):
        code, out, _ = call("--format", "csv", "bounds", "--pattern", "((*,*),(*,*))", "--d", "2", "--max-leaves", "6")
        lines = out.splitlines()
        assert lines[0] == "n,max_density,lower,upper"
        assert lines[1:] == ["4,1/1,0/1,1/1", "5,3/5,0/1,3/5", "6,3/5,0/1,3/5"]

    def test_bounds_json(self):
        code, out, _ = call("bounds", "--pattern", "(*,(*,*))", "--d", "2", "--min-leaves", "10", "--max-leaves", "10")
        assert json.loads(out) == [{"n": "10", "max_density": "1/1", "lower": "2/5", "upper": "1/1"}]

    def test_construct(self):
        assert call("construct", "gmap", "--tree", "(*,*,*)", "--d", "3")[1] == "((*,*),*)\n"
        assert call("construct", "gmap", "--tree", "(*,(*,*))", "--d", "2")[1] == "(*,(*,*))\n"
        assert call("construct", "compose", "--s1", "(*,*)", "--s2", "(*,*)")[1] == "((*,*),(*,*))\n"
        assert call("construct", "iterate", "--pattern", "(*,*,*)", "--steps", "2")[1] == "(*,*,*)\n"

    def test_construct_tstar(self):
        code, out, _ = call("construct", "tstar", "--tree", "(*,*,*)", "--d", "3", "--n", "13")
        data = json.loads(out)
        assert data["sizes"] == {"t_prime": "3", "s": "1", "t_double_prime": "3", "s_p": "11", "result": "13"}

    def test_verify_suite(self):
        code, out, _ = call("verify", "caterpillars", "--param", "max_n=9")
        assert code == 0 and json.loads(out)["pass"] is True

    def test_verify_failure_exits_one(self):
        code, out, _ = call("verify", "iterate", "--param", "target=1/2")
        assert code == 1 and json.loads(out)["pass"] is False

    def test_verify_tree_param(self):
        code, out, _ = call("verify", "monotone", "--param", "pattern=(*,(*,*))", "--param", "ns=[5,6]")
        assert code == 0 and json.loads(out)["params"]["pattern"] == "(*,(*,*))"

    def test_verify_all_lines(self):
        code, out, _ = call("--format", "lines", "verify", "all")
        assert code == 0
        assert len(out.splitlines()) == 10
        assert all(line.split()[1] == "true" for line in out.splitlines())

    def test_formulas(self):
        assert call("formulas", "caterpillars", "--d", "3", "--k", "3", "--n", "5")[1] == "6\n"
        assert call("formulas", "lower-bound", "--k", "4")[1] == "2/21\n"
        assert call("--format", "json", "formulas", "lower-bound", "--k", "3")[1] == '"1/4"\n'

    def test_explore(self):
        code, out, _ = call("explore", "strict-gap", "--pattern", "(*,*,*)", "--d", "3", "--leaves", "9")
        data = json.loads(out)
        assert data["strict"] == "5/14"
        code, out, _ = call("explore", "across-d", "--pattern", "(*,*,*)", "--ds", "3,4", "--leaves", "7")
        assert [row["d"] for row in json.loads(out)] == ["3", "4"]


class TestErrors:
    def test_domain_error(self):
        code, out, err = call("count", "--pattern", "(*,*", "--tree", "(*,*)")
        assert code == 1 and out == "" and err.startswith("error: ")

    def test_domain_error_message_verbatim(self):
        code, _, err = call("construct", "tstar", "--tree", "(*,*,*)", "--d", "3", "--n", "12")
        assert code == 1 and "n=12 is not 1 mod 2" in err

    def test_usage_error_names_flag(self, capsys):
        code, _, _ = call("count", "--pattern", "(*,*)")
        assert code == 2
        assert "--tree" in capsys.readouterr().err

    def test_unknown_param(self, capsys):
        code, _, _ = call("verify", "stars", "--param", "bogus=1")
        assert code == 2 and "bogus" in capsys.readouterr().err

    def test_bad_budget(self):
        code, _, err = call("--subset-budget", "0", "count", "--pattern", "(*,*)", "--tree", "(*,*)")
        assert code == 2 and "budget" in err

    def test_subset_budget_exceeded(self):
        code, _, err = call("--subset-budget", "5", "count", "--oracle", "--pattern", "(*,*)", "--tree", "((*,*),(*,*))")
        assert code == 1 and "budget" in err


class TestEnvironment:
    def test_format_from_env(self):
        code, out, _ = call("formulas", "stars", "--d", "4", "--k", "3", env={"INDUCIBILITY_FORMAT": "json"})
        assert out == '"2/5"\n'

    def test_flag_beats_env(self):
        code, out, _ = call("--format", "lines", "formulas", "stars", "--d", "4", "--k", "3",
                            env={"INDUCIBILITY_FORMAT": "json"})
        assert out == "2/5\n"

    def test_leaf_budget_from_env(self):
        code, _, err = call("construct", "iterate", "--pattern", "(*,*,*)", "--steps", "5",
                            env={"INDUCIBILITY_LEAF_BUDGET": "10"})
        assert code == 1 and "budget" in err

    def test_bad_env_format(self):
        code, _, _ = call("formulas", "stars", "--d", "3", "--k", "3", env={"INDUCIBILITY_FORMAT": "xml"})
        assert code == 2


def test_module_entry_point():
    entry = [sys.executable, "-m", "inducibility"]
    proc = subprocess.run([*entry, "formulas", "stars", "--d", "3", "--k", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1/4\n"
    proc = subprocess.run([*entry, "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2

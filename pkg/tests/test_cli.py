import subprocess
import sys

import pytest

from dfvskit.cli import CliConfig, UsageError, main
from dfvskit.instances import read_instance

TRIANGLE = "3 3 0\n2\n3\n1\n"


def run(args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "dfvskit", *args], input=stdin,
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def test_reduce_triangle_k1(tmp_path):
    forced = tmp_path / "forced.sol"
    trace = tmp_path / "trace.txt"
    code, out, _ = run(["reduce", "--k", "1", "--forced", str(forced), "--trace", str(trace)], TRIANGLE)
    assert code == 0
    g, meta = read_instance(out)
    assert g.n == 0 and len(meta.forced) == 1 and meta.budget == 0
    assert len(forced.read_text().split()) == 1
    assert trace.read_text().strip()


def test_reduce_triangle_k0_is_no():
    assert run(["reduce", "--k", "0"], TRIANGLE)[0] == 20


def test_malformed_input_exit_2():
    assert run(["reduce", "--k", "1"], "3 3 0\n2\n")[0] == 2


def test_missing_budget_exit_2():
    assert run(["reduce"], TRIANGLE)[0] == 2


def test_unknown_rule_exit_2():
    assert run(["reduce", "--k", "1", "--rules", "loops,bogus"], TRIANGLE)[0] == 2


def test_gen_tight_solve():
    code, inst, _ = run(["gen", "tight", "--d", "3", "--k", "2"])
    assert code == 0
    code, out, _ = run(["solve"], inst)
    assert code == 0 and len(out.split()) == 2


def test_solve_infeasible_budget():
    assert run(["solve", "--k", "0"], TRIANGLE)[0] == 20


def test_lowerbound_two_disjoint_two_cycles(tmp_path):
    dump = tmp_path / "m.lp"
    code, out, _ = run(["lowerbound", "--value", "--dump-lp", str(dump)], "4 4 0\n2\n1\n4\n3\n")
    assert code == 0
    assert out.splitlines()[0] == "1"
    assert out.splitlines()[1] == "% lp 1"
    assert dump.read_text().startswith("Minimize")


def test_lowerbound_cap_refusal():
    assert run(["lowerbound", "--cap", "1"], TRIANGLE)[0] == 3


def test_verify(tmp_path):
    bad = tmp_path / "bad.sol"
    bad.write_text("")
    good = tmp_path / "good.sol"
    good.write_text("2\n")
    unknown = tmp_path / "unknown.sol"
    unknown.write_text("9\n")
    assert run(["verify", "--solution", str(bad)], TRIANGLE)[0] != 0
    assert run(["verify", "--solution", str(good)], TRIANGLE)[0] == 0
    assert run(["verify", "--solution", str(unknown)], TRIANGLE)[0] != 0
    assert run(["verify", "--solution", str(good), "--k", "0"], TRIANGLE)[0] != 0


def test_kernelize_promise_violation():
    square = "4 4 0\n2\n3\n4\n1\n"
    assert run(["kernelize", "--k", "2", "--d", "3", "--rules", "loops,flower"], square)[0] == 4


def test_gen_grid_with_legend(tmp_path):
    legend = tmp_path / "legend.txt"
    code, out, _ = run(["gen", "grid", "--k", "2", "--n", "2", "--seed", "4", "--legend", str(legend)])
    assert code == 0
    assert out.startswith("% gadget s ")
    assert legend.read_text().strip()


@pytest.mark.parametrize("gen", [
    ["gen", "tight", "--d", "3", "--k", "3"],
    ["gen", "planted", "--n", "14", "--k", "3", "--d", "4", "--seed", "5"],
    ["gen", "planted", "--n", "10", "--k", "2", "--d", "3", "--seed", "9"],
])
def test_pipeline(tmp_path, gen):
    d = gen[gen.index("--d") + 1]
    code, inst, _ = run(gen)
    assert code == 0
    code, reduced, _ = run(["reduce"], inst)
    assert code == 0
    code, kernel, _ = run(["kernelize", "--d", d], reduced)
    assert code == 0
    code, sol, _ = run(["solve"], kernel)
    assert code == 0
    (tmp_path / "g.gr").write_text(inst)
    (tmp_path / "s.sol").write_text(sol)
    code, out, _ = run(["verify", "--input", str(tmp_path / "g.gr"), "--solution", str(tmp_path / "s.sol")])
    assert code == 0 and out.startswith("valid")


def test_in_process_main(tmp_path, capsys):
    path = tmp_path / "tri.gr"
    path.write_text(TRIANGLE)
    assert main(["lowerbound", "--input", str(path)]) == 0
    assert capsys.readouterr().out == "1\n"


def test_config_validation():
    with pytest.raises(UsageError):
        CliConfig("solve", cap=0)
    with pytest.raises(UsageError):
        CliConfig("solve", threads=0)

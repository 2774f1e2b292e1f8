"""CLI surface: exit codes, output formats, determinism."""

import json
import subprocess
import sys

import pytest

from jointcert.behaviors import pr_box, uniform_behavior, write_behavior
from jointcert.cli import main


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "jointcert.cli", *args],
        capture_output=True,
        text=False,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture(scope="module")
def pr_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("behaviors") / "prbox.behavior"
    write_behavior(pr_box(), path)
    return str(path)


@pytest.fixture(scope="module")
def uniform_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("behaviors") / "uniform.behavior"
    write_behavior(uniform_behavior(pr_box().scenario), path)
    return str(path)


def test_check_joint_pr_box_exits_3(pr_file):
    code, out, _ = run_cli(["check-joint", pr_file])
    assert code == 3
    assert b"INFEASIBLE" in out


def test_check_ld_uniform_exits_0(uniform_file):
    code, out, _ = run_cli(["check-ld", uniform_file])
    assert code == 0
    assert b"feasible" in out


def test_validate_exit_codes(pr_file, tmp_path):
    code, _, _ = run_cli(["validate", pr_file])
    assert code == 0
    bad = tmp_path / "bad.behavior"
    bad.write_text('{"nonsense": 1}')
    code, _, err = run_cli(["validate", str(bad)])
    assert code == 2
    assert b"error" in err


def test_validate_detects_failures(tmp_path):
    doc = json.loads(
        subprocess.run(
            [sys.executable, "-c",
             "import json; from jointcert.behaviors import pr_box, behavior_to_dict;"
             "print(json.dumps(behavior_to_dict(pr_box())))"],
            capture_output=True, text=True, check=True,
        ).stdout
    )
    doc["table"]["1,1"][0][0] = "3/4"  # break normalization
    path = tmp_path / "broken.behavior"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(["validate", str(path)])
    assert code == 3
    assert b"FAILED" in out


def test_chsh_value_output(pr_file):
    code, out, _ = run_cli(["chsh", pr_file, "--format", "json"])
    assert code == 0
    assert json.loads(out)["chsh"] == "4/1"


def test_vertices_count():
    code, out, _ = run_cli(["vertices", "--settings-a", "2", "--settings-b", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out)["count"] == 16


def test_check_sw_pr_box(pr_file):
    code, out, _ = run_cli(["check-sw", pr_file])
    assert code == 3


def test_extract_ineq_pr_box(pr_file):
    code, out, _ = run_cli(["extract-ineq", pr_file, "--context", "ld", "--format", "json"])
    assert code == 3
    doc = json.loads(out)
    assert doc["bound"] == "2/1" and doc["value"] == "4/1"


def test_extract_ineq_feasible_is_usage_error(uniform_file):
    code, _, err = run_cli(["extract-ineq", uniform_file, "--context", "ld"])
    assert code == 2


def test_dup_binomial_example():
    code, out, _ = run_cli(["dup", "binomial", "--N", "5", "--M", "2"])
    assert code == 0
    assert b"P(T) = 1/3" in out


def test_dup_cp_check_flags_divergence():
    code, out, _ = run_cli(
        ["dup", "cp-check", "--M", "2", "--rule-f", "elga", "--rule-w", "elga"]
    )
    assert code == 3
    assert b"1/3 vs 1/2" in out


def test_dup_cp_check_reflection_consistent():
    code, out, _ = run_cli(
        ["dup", "cp-check", "--M", "7", "--rule-f", "reflection", "--rule-w", "reflection"]
    )
    assert code == 0
    assert b"consistent" in out


def test_dup_credence_roles():
    code, out, _ = run_cli(
        ["dup", "credence", "--M", "9", "--role", "duplicated", "--format", "json"]
    )
    assert code == 0
    assert json.loads(out)["tails"] == "1/10"


def test_dup_simulate_summary(tmp_path):
    summary = tmp_path / "summary.csv"
    detail = tmp_path / "detail.csv"
    code, out, _ = run_cli(
        [
            "dup", "simulate", "--N", "10", "--M", "2", "--eps", "1/20",
            "--runs", "50", "--seed", "3",
            "--summary-out", str(summary), "--detail-out", str(detail),
        ]
    )
    assert code == 0
    lines = summary.read_text().splitlines()
    assert lines[0] == "role,quantity,exact,empirical,stderr"
    assert len(lines) == 5
    detail_lines = detail.read_text().splitlines()
    assert detail_lines[0] == "run,role,lab,outcome,copies,bought,profit"
    assert len(detail_lines) == 1 + 50 * 10 * 2


def test_seed_required_for_stochastic_commands():
    code, _, err = run_cli(["dup", "simulate", "--N", "5", "--M", "2", "--runs", "10"])
    assert code == 2
    code, _, _ = run_cli(["quantum", "optimize"])
    assert code == 2
    code, _, _ = run_cli(["ld-sw-test"])
    assert code == 2


def test_quantum_optimize_smoke():
    code, out, _ = run_cli(
        ["quantum", "optimize", "--seed", "5", "--iterations", "2000", "--format", "json"]
    )
    assert code == 0
    assert float(json.loads(out)["value"]) > 2.7


def test_quantum_behavior_writes_file(tmp_path):
    path = tmp_path / "born.behavior"
    code, _, _ = run_cli(
        ["quantum", "behavior", "--behavior-out", str(path), "--format", "json"]
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert "protocol" in doc and doc["friend_on_a"] is True
    # the emitted file is consumable by the membership checks unchanged
    code, _, _ = run_cli(["check-lf", str(path)])
    assert code in (0, 3)


def test_quantum_lf_search_exit_code(tmp_path):
    path = tmp_path / "violation.behavior"
    code, out, _ = run_cli(
        [
            "quantum", "lf-search", "--seed", "0", "--budget", "5",
            "--behavior-out", str(path), "--format", "json",
        ]
    )
    assert code == 3
    doc = json.loads(out)
    assert doc["certificate"]["verdict"] == "infeasible"
    code, _, _ = run_cli(["check-lf", str(path)])
    assert code == 3


def test_induct_m_csv_format():
    code, out, _ = run_cli(
        ["induct", "m", "--x", "0101", "--max-len", "10", "--steps", "64", "--format", "csv"]
    )
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "string,L,T,mass_numerator,mass_denominator,programs_counted,truncated"
    assert lines[1].startswith("0101,10,64,")


def test_induct_cond_and_bb():
    code, out, _ = run_cli(
        ["induct", "cond", "--x", "0101", "--y", "01", "--max-len", "12", "--format", "json"]
    )
    assert code == 0
    code, out, _ = run_cli(
        [
            "induct", "bb", "--x", "0101010101010101", "--y-oo", "01010101",
            "--y-bb-seed", "2026", "--y-bb-len", "8", "--n-oo", "1", "--n-bb", "1000",
            "--rule", "indifference", "--format", "json",
        ]
    )
    assert code == 0
    assert json.loads(out)["p_thermal"] == "1000/1001"


def test_ld_sw_test_cli():
    code, out, _ = run_cli(
        ["ld-sw-test", "--settings-a", "2", "--samples", "10", "--seed", "7", "--format", "json"]
    )
    assert code == 0
    assert json.loads(out)["disagreements"] == []


def test_main_callable_directly(uniform_file, capsys):
    assert main(["check-joint", uniform_file]) == 0
    capsys.readouterr()


STOCHASTIC = [
    ["dup", "simulate", "--N", "20", "--M", "2", "--eps", "1/20", "--runs", "60", "--seed", "12"],
    ["quantum", "optimize", "--seed", "12", "--iterations", "1500"],
    ["quantum", "lf-search", "--seed", "12", "--budget", "5"],
    ["ld-sw-test", "--settings-a", "2", "--samples", "8", "--seed", "12"],
]


@pytest.mark.parametrize("argv", STOCHASTIC, ids=lambda a: a[0] + "-" + a[1])
def test_stochastic_commands_byte_identical(argv):
    first = run_cli([*argv, "--format", "json"])
    second = run_cli([*argv, "--format", "json"])
    assert first[0] == second[0]
    assert first[1] == second[1]

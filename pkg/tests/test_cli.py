import io
import json
import shutil
import subprocess
import sys

import pytest

from invforge import cli, goldens
from invforge import invariants as inv


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_compute_lambda_n2():
    code, out, _ = run("compute", "lambda", "--n", "2")
    assert (code, out) == (0, "xi1^5+xi2^3+xi1^2*xi3\n")


def test_verify_omega_cube_n2():
    code, out, _ = run("verify", "identity", "--name", "omega-cube", "--n", "2")
    assert (code, out) == (0, "PASS omega-cube n=2\n")


def test_hilbert_o_odd_n2_json():
    code, out, _ = run("hilbert", "--group", "o-odd", "--n", "2", "--expand", "12")
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == 1
    assert (report["order"], report["reflections"]) == (720, 15)
    assert report["series"] == {"num": [], "den": [2, 3, 4, 5, 6]}
    assert len(report["coefficients"]) == 13 and report["coefficients"][:3] == [1, 0, 1]


@pytest.mark.parametrize("argv", [
    ("compute", "omega-pm", "--n", "2", "--sign", "-", "--json"),
    ("compute", "relations", "--n", "2", "--group", "sp", "--json"),
    ("verify", "identity", "--name", "squarexi", "--n", "1", "--json"),
    ("enumerate", "group", "--group", "o-minus", "--n", "2"),
])
def test_json_carries_schema_version(argv):
    code, out, _ = run(*argv)
    assert code == 0
    assert json.loads(out)["schema"] == 1


def test_compute_omega_pm_json_matches_golden():
    _, out, _ = run("compute", "omega-pm", "--n", "2", "--sign", "+", "--json")
    payload = json.loads(out)
    assert payload["result"] + "\n" == goldens.read_golden("omega/omega4_plus.txt")
    assert payload["target"] == "omega-pm" and payload["n"] == 2


def test_compute_relations_reports_determinants():
    code, out, _ = run("compute", "relations", "--n", "2", "--group", "sp")
    assert code == 0
    assert "det LK+R = xi1^5+xi2^3+xi1^2*xi3" in out.splitlines()


def test_enumerate_with_transvections():
    _, out, _ = run("enumerate", "group", "--group", "o-plus", "--n", "2", "--transvections")
    report = json.loads(out)
    assert report["order"] == report["order_formula"] == 72
    assert report["transvections"] == report["transvection_formula"] == 6
    assert sum(report["per_hyperplane"].values()) == 6


def test_verify_list_contains_every_identity():
    code, out, _ = run("verify", "--list")
    listed = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0
    assert listed == inv.identity_names()
    assert {"omega-cube", "p-squared", "nice-formulae", "caroline", "carolinex", "omega-vanishing",
            "lambda-sq-in-s", "omega-c0sq-q", "mis1-restriction", "middle-of-omega", "squarexi",
            "wu-dickson"} <= {name.lower() for name in listed}


@pytest.mark.parametrize("name", inv.identity_names())
def test_every_listed_identity_runs(name):
    n = inv.IDENTITIES[name].low
    code, out, _ = run("verify", "identity", "--name", name, "--n", str(n))
    assert code == 0, out
    assert out == f"PASS {name} n={n}\n"


@pytest.mark.parametrize("argv", [
    (),
    ("compute",),
    ("compute", "lambda"),
    ("compute", "lambda", "--n", "0"),
    ("compute", "lambda", "--n", "two"),
    ("compute", "nonsense", "--n", "2"),
    ("compute", "omega-pm", "--n", "2"),
    ("compute", "lambda-i", "--n", "2"),
    ("compute", "relations", "--n", "2"),
    ("verify", "identity"),
    ("verify", "identity", "--name", "omega-cube"),
    ("verify", "identity", "--name", "no-such-identity", "--n", "1"),
    ("verify", "identity", "--name", "omega-cube", "--all"),
    ("hilbert", "--group", "so", "--n", "2"),
    ("goldens", "check", "--dir", "/nonexistent/golden"),
])
def test_usage_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err.strip()


def test_slow_target_is_gated():
    code, _, err = run("compute", "omega-pm", "--n", "3", "--sign", "-")
    assert code == 1
    assert "--allow-slow" in err


def test_verify_all_reports_skips_for_gated_levels():
    code, out, _ = run("verify", "identity", "--all", "--n", "3")
    lines = out.splitlines()
    assert code == 0
    assert any(line.startswith("SKIP ") for line in lines)
    assert all(line.startswith(("PASS ", "SKIP ")) for line in lines)


def test_identity_failure_exits_2_with_diff(monkeypatch):
    def broken(name, n, allow_slow=False):
        return inv.IdentityReport(name, n, checks=1, failures=["lhs - rhs = xi1"])

    monkeypatch.setattr(inv, "verify_identity", broken)
    code, out, err = run("verify", "identity", "--name", "omega-cube", "--n", "2")
    assert code == 2
    assert out.splitlines() == ["FAIL omega-cube n=2", "  lhs - rhs = xi1"]
    assert "lhs - rhs = xi1" in err


def test_goldens_check_and_mismatch(tmp_path):
    code, out, _ = run("goldens", "check")
    assert code == 0 and out == f"{len(goldens.GOLDENS)} golden files match\n"
    tree = tmp_path / "g"
    shutil.copytree(goldens.GOLDEN_DIR, tree)
    target = tree / "lambda" / "L6.txt"
    target.write_bytes(b"#" + target.read_bytes()[1:])
    code, _, err = run("goldens", "check", "--dir", str(tree))
    assert code == 2
    assert err == "MISMATCH lambda/L6.txt\n"
    code, out, _ = run("goldens", "regenerate", "--dir", str(tree))
    assert code == 0 and "changed   lambda/L6.txt" in out
    assert run("goldens", "check", "--dir", str(tree))[0] == 0


@pytest.mark.parametrize("argv", [
    ("compute", "chern", "--n", "2", "--json"),
    ("compute", "ke", "--n", "2"),
    ("enumerate", "group", "--group", "sp", "--n", "1", "--transvections"),
    ("hilbert", "--group", "sp", "--n", "2", "--expand", "20"),
])
def test_output_is_deterministic(argv):
    first = run(*argv)
    assert first[0] == 0
    assert run(*argv) == first


def test_console_entry_point_runs_in_fresh_process():
    argv = [sys.executable, "-m", "invforge", "compute", "lambda-i", "--n", "2", "--i", "3"]
    runs = [subprocess.run(argv, capture_output=True, text=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] == goldens.read_golden("lambda_i/L4_3.txt")

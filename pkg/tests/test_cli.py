import json
import os
import subprocess
import sys

import pytest

from hofib.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_comma_then_validate(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _ = run(capsys, "comma", "--pair", "0", "-o", str(out))
    assert code == 0
    code, cap = run(capsys, "validate", str(out))
    assert code == 0 and "valid" in cap.out


def test_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "bicategory.v7"}')
    code, cap = run(capsys, "validate", str(bad))
    assert code == 2
    assert "unknown schema version" in cap.err


def test_unknown_name_is_a_usage_error(capsys):
    code, cap = run(capsys, "xmod", "validate", "nope")
    assert code == 2 and "corpus names" in cap.err


@pytest.mark.parametrize("argv", [
    ("fibre", "--pair", "4", "--object", '"*"'),
    ("bprop", "--pair", "4"),
    ("translate", "--pair", "0", "--cell", "1"),
    ("comma2", "--bicategory", "SZ2"),
    ("nerve", "SZ2", "--dim", "3"),
    ("gnerve", "SZ2[w]", "--dim", "2"),
    ("adjunction", "[2]", "--dim", "2"),
    ("kan", "(Z2,Z2,id)", "--dim", "2"),
    ("xmod", "beta", "(Z3,Z3,id)"),
    ("xmod", "compare-nerves", "(Z2,Z2,0)", "--dim", "3"),
    ("xmod", "endo", "(S3,S3,id)"),
    ("xmod", "hpb", "--pair", "example-ii"),
    ("xmod", "weq", "--pair", "mod2-mod2"),
    ("xmod", "mv", "--pair", "example-i"),
    ("xmod", "fib", "--pair", "example-i"),
    ("monoidal", "fibre", "--pair", "3"),
    ("monoidal", "sigma", "--pair", "1"),
    ("monoidal", "translate", "--pair", "0", "--object", "1"),
    ("monoidal", "regularity", "Z4"),
], ids=lambda a: "-".join(a[:2]))
def test_verbs_pass(argv, capsys):
    code, cap = run(capsys, *argv)
    assert code == 0, cap.out + cap.err


def test_weq_failure_exits_one(capsys):
    code, _ = run(capsys, "xmod", "weq", "--pair", "incl-incl")
    assert code == 1


def test_json_output(capsys):
    code, cap = run(capsys, "xmod", "pi", "(Z2,indiscrete2,0)", "--json")
    doc = json.loads(cap.out)
    assert code == 0 and doc["details"]["pi2"] == {"0": 2, "1": 2}


def test_pentagon_fault_names_the_quadruple(capsys):
    code, cap = run(capsys, "run", "axioms", "--inject-fault", "pentagon")
    assert code == 1
    assert "first failure" in cap.out and "pentagon at [" in cap.out


def test_max_cells_gives_resource_exit(capsys):
    before = os.environ.get("HOFIB_MAX_CELLS")
    code, cap = run(capsys, "xmod", "nerve", "(S3,S3,id)", "--dim", "4", "--max-cells", "50")
    assert code == 2 and "resource limit" in cap.err
    assert os.environ.get("HOFIB_MAX_CELLS") == before


def test_run_with_jobs_matches_serial(capsys):
    _, a = run(capsys, "run", "mv", "--json")
    _, b = run(capsys, "run", "mv", "--json", "--jobs", "2")
    assert a.out == b.out


def test_console_script_module_entry():
    r = subprocess.run([sys.executable, "-m", "hofib.cli", "monoidal", "validate", "Z2[w]"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "valid" in r.stdout

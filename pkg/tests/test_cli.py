import json
import subprocess
import sys

import pytest

from zerohopf.cli import main

from conftest import JERK_CELLS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_average_without_constraints_reports_survivors(capsys):
    code, out, err = run(capsys, "average", "catalog:jerk")
    assert code == 2
    assert "does not vanish" in err
    assert "f[1][1] = " in err


def test_average_with_constraints(capsys, tmp_path):
    cons = tmp_path / "jerk.cons"
    cons.write_text("a1 = 0\nb1 = 0\n")
    code, out, _ = run(capsys, "average", "catalog:jerk", "--constraints", str(cons))
    assert code == 0
    assert "f[2][1]" in out and "f[2][3]" in out
    code2, out2, _ = run(capsys, "average", "catalog:jerk", "-D", "a1=0", "-D", "b1=0", "--route", "tuples")
    assert code2 == 0 and out2 == out


def test_average_first_order_only(capsys):
    code, out, _ = run(capsys, "average", "catalog:jerk", "--order", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["eta"] == ["R", "X3"]
    assert data["f"]["1"]["3"] == "-2*X3*pi*b1*beta^-3"


def test_standard_form_text(capsys):
    code, out, _ = run(capsys, "standard", "catalog:jerk", "--order", "1")
    assert code == 0 and "F[1][1]" in out


@pytest.fixture
def cells_file(tmp_path):
    p = tmp_path / "cells.txt"
    p.write_text("".join(f"{k}: {v}\n" for k, v in JERK_CELLS.items()))
    return str(p)


def test_analyze_counts_and_bkk(capsys, cells_file):
    code, out, _ = run(capsys, "analyze", "catalog:jerk", "-D", "a1=0", "-D", "b1=0", "--bkk",
                       "--subst", "rho=R^2", "--conditions", cells_file,
                       "--at", "beta=2, a2=1, b2=5", "--at", "beta=2, a2=-1, b2=0")
    assert code == 0
    assert "bkk = 3" in out
    assert out.count("count = 3") == 1 and out.count("count = 1") == 1
    assert "cells = C1" in out and "cells = -" in out


def test_analyze_count_exit_and_json(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([{"beta": 1, "a2": -1, "b2": -3}, {"beta": 2, "a2": -1, "b2": 0}]))
    code, out, _ = run(capsys, "analyze", "catalog:jerk", "-D", "a1=0", "-D", "b1=0", "--point", str(pts),
                       "--format", "json", "--count-exit")
    assert code == 13
    data = json.loads(out)
    assert [r["count"] for r in data["reports"]] == [3, 1]


def test_analyze_parallel_matches_serial(capsys):
    args = ["analyze", "catalog:jerk", "-D", "a1=0", "-D", "b1=0",
            "--at", "beta=2, a2=1, b2=5", "--at", "beta=1, a2=-1, b2=-3"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "-j", "2")
    assert serial == parallel


def test_analyze_degenerate_first_order(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:jerk", "--order", "1", "--at", "beta=1, a1=1, b1=1")
    assert code == 2
    assert "flag: no isolated positive-R zeros" in out


def test_analyze_unbound_parameter(capsys):
    code, _, err = run(capsys, "analyze", "catalog:jerk", "-D", "a1=0", "-D", "b1=0", "--at", "beta=2")
    assert code == 1
    assert "unbound" in err


@pytest.mark.parametrize("argv", [
    ["average", "catalog:nosuch"],
    ["average", "catalog:jerk", "-D", "zz=1"],
    ["formula", "--order", "0", "--dim", "2"],
    ["analyze"],
])
def test_input_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as err:
        code = main(argv)
        raise SystemExit(code)
    assert err.value.code == 1


def test_formula(capsys):
    code, out, err = run(capsys, "formula", "--order", "2", "--dim", "2")
    assert code == 0
    assert out.startswith("y[1][1](t)")
    assert "# terms y[2]: 6 (3 per component)" in out
    assert "formula k=2 n=2" in err


def test_manifest_replay(capsys, tmp_path):
    sysfile = tmp_path / "j.sys"
    from conftest import catalog_text
    sysfile.write_text(catalog_text("jerk"))
    out_path = tmp_path / "out.txt"
    code, _, _ = run(capsys, "analyze", str(sysfile), "-D", "a1=0", "-D", "b1=0",
                     "--at", "beta=2, a2=1, b2=5", "-o", str(out_path))
    assert code == 0
    manifest = str(out_path) + ".manifest.json"
    code, out, err = run(capsys, "replay", manifest)
    assert code == 0 and "identical" in err
    assert out == out_path.read_text()
    # a changed input is detected
    sysfile.write_text(catalog_text("jerk") + "\n# edited\n")
    code, _, err = run(capsys, "replay", manifest)
    assert code == 4 and "changed" in err
    # as is a doctored output
    sysfile.write_text(catalog_text("jerk"))
    man = json.loads(open(manifest).read())
    man["output"] = man["output"].replace("count = 3", "count = 2")
    with open(manifest, "w") as fh:
        json.dump(man, fh)
    code, _, err = run(capsys, "replay", manifest)
    assert code == 4 and "differs" in err


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "zerohopf.cli", "formula", "-k", "1", "-n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("int_0^t") == 3

import io
import json
import shutil
import subprocess
import sys

import pytest

from freecircle.cli import main
from freecircle.tables import data_dir


def run(*argv):
    out = io.StringIO()
    rc = main(list(argv), out)
    return rc, out.getvalue()


def test_invariants_plumbing():
    rc, text = run("invariants", "plumbing", "--alpha", "19,13,-4", "--euler", "1,-7", "--show-chardata")
    assert rc == 0
    assert "A=-5304 B=781 C=-115 D=17 u=868 v=0 spin=true det=-1" in text
    assert "class = (1,0,0)" in text


def test_invariants_cp2_and_direct():
    rc, text = run("invariants", "cp2", "--alpha", "333", "--euler", "73,-4")
    assert rc == 0 and "class = (2,0,0)" in text
    rc, text = run("invariants", "direct", "--A", "2", "--B", "1", "--C", "0", "--D", "1",
                   "--u", "1", "--v", "0", "--nonspin")
    assert rc == 0 and "spin=false" in text


def test_invariants_bad_input_is_usage_error(capsys):
    rc, _ = run("invariants", "plumbing", "--alpha", "1,2,3", "--euler", "1,1")
    assert rc == 2 and "error" in capsys.readouterr().err
    rc, _ = run("invariants", "plumbing", "--alpha", "1,2", "--euler", "1,1")
    assert rc == 2


def test_search_csv():
    rc, text = run("search", "--family", "plumbing", "--alpha-bound", "1", "--euler-bound", "1",
                   "--emit", "csv")
    lines = text.splitlines()
    assert rc == 0 and lines[0] == "alpha1,alpha2,alpha3,lambda,mu,s1_28,s2_12,s3t_2"
    assert "0,-1,-1,0,-1,0,0,0" in lines


def test_search_targets_deterministic(tmp_path):
    targets = tmp_path / "t.csv"
    targets.write_text("s1_28,s2_12,s3t_2\n0,0,0\n1,0,0\n1,1,1\n")
    base = ["search", "--family", "plumbing", "--alpha-bound", "6", "--euler-bound", "6",
            "--targets", str(targets), "--emit", "csv"]
    rc1, one = run(*base, "--jobs", "1")
    rc2, many = run(*base, "--jobs", "4")
    assert rc1 == rc2 == 0 and one == many and one.startswith("s1_28,s2_12,s3t_2,alpha1")


def test_realize():
    rc, text = run("realize", "--target", "4,2,0")
    assert rc == 0 and "family = direct-nonspin" in text and "class = (4,2,0)" in text
    rc, text = run("realize", "--target", "0,1,0")
    assert rc == 1 and "provably no free action" in text
    rc, text = run("realize", "--target", "1,1,1", "--budget", "10")
    assert rc == 1 and "budget exhausted" in text


def test_family():
    rc, text = run("family", "--family", "cp2", "--base", "333,73,-4", "--modulus", "24", "--count", "2")
    assert rc == 0 and text.splitlines()[2] == "1,13053,457,-4"
    rc, text = run("family", "--family", "plumbing", "--base", "19,13,-4,1,-7", "--count", "3",
                   "--certify", "--format", "json")
    doc = json.loads(text)
    assert rc == 0 and doc["certified"] and doc["branch"] == "generic"
    rc, _ = run("family", "--family", "plumbing", "--base", "19,13,-4", "--count", "3")
    assert rc == 2


def test_classify():
    rc, text = run("classify", "--report", "--json")
    assert rc == 0 and json.loads(text)["counts"]["admitting"] == 462
    rc, text = run("classify", "--class", "0,2,0")
    assert rc == 0 and "ricci: open" in text


def test_verify_tables(tmp_path):
    rc, text = run("verify-tables")
    assert rc == 0
    assert "plumbing-det-minus-1: 252/252" in text and "cp2: 63/63" in text
    for p in data_dir().glob("*.csv"):
        shutil.copy(p, tmp_path / p.name)
    t1 = tmp_path / "table1.csv"
    lines = t1.read_text().splitlines()
    # swap the expected triples of the first two rows
    a, b = lines[1].split(","), lines[2].split(",")
    a[-3:], b[-3:] = b[-3:], a[-3:]
    lines[1:3] = [",".join(a), ",".join(b)]
    t1.write_text("\n".join(lines) + "\n")
    rc, text = run("verify-tables", "--data", str(tmp_path))
    assert rc == 1 and "FAIL (0, -1, -1, 0, -1)" in text


def test_usage_errors():
    assert run()[0] == 2
    assert run("search", "--family", "plumbing")[0] == 2
    assert run("search", "--family", "plumbing", "--alpha-bound", "0", "--euler-bound", "2")[0] == 2


@pytest.mark.slow
def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freecircle", "classify", "--class", "1,1,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "reversed: [27, 11, 0]" in proc.stdout

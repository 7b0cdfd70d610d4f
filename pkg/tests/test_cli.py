import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from valdiff.cli import RunConfig, example_checks, main, run

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def invoke(command, path=None, fmt="human", seed=0, jobs=1):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(command, str(path) if path else None, fmt, seed, jobs), out, err)
    return code, out.getvalue(), err.getvalue()


def test_examples_all_pass():
    assert all(ok for _, ok, _ in example_checks())
    code, out, _ = invoke("examples")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("command,name,expected", [
    ("classify", "classify.toml", 0),
    ("classify-tower", "tower.toml", 0),
    ("oracle-verify", "relations.toml", 0),
    # F_3((t)) is not deeply ramified
    ("check-dr", "fields.toml", 1),
])
def test_shipped_inputs(command, name, expected):
    code, out, err = invoke(command, EXAMPLES / name)
    assert code == expected, err
    assert out


def test_json_lines(tmp_path):
    code, out, _ = invoke("classify", EXAMPLES / "classify.toml", "json-lines")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all("paper_theorem" in r and "is_zero" in r for r in recs)


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[[extension]\nkind = 1\n")
    code, _, err = invoke("classify", bad)
    assert code == 3 and "line" in err


def test_missing_group(tmp_path):
    f = tmp_path / "nogroup.toml"
    f.write_text('[[extension]]\nkind = "kummer"\ndegree = 2\nchar_K = 3\nresidue_char = 3\ne = 1\nf = 2\n')
    code, _, err = invoke("classify", f)
    assert code == 4 and "group" in err


def test_inconsistent_descriptor(tmp_path):
    f = tmp_path / "bad.toml"
    f.write_text('[[extension]]\nkind = "artin-schreier"\ndegree = 3\nchar_K = 3\nresidue_char = 3\n'
                 'e = 3\nf = 3\ngroup = { levels = [{ kind = "cyclic", g = "1" }] }\n')
    code, _, err = invoke("classify", f)
    assert code == 4 and "e*f*d" in err


def test_seed_and_jobs_deterministic():
    runs = {invoke("oracle-verify", EXAMPLES / "relations.toml", "json-lines", seed=5, jobs=j)[1]
            for j in (1, 4)}
    assert len(runs) == 1
    other = invoke("oracle-verify", EXAMPLES / "relations.toml", "json-lines", seed=6)[1]
    assert other not in runs


def test_main_requires_input():
    with pytest.raises(SystemExit):
        main(["classify"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "valdiff", "examples", "--format", "json-lines"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert all(json.loads(line)["pass"] for line in proc.stdout.splitlines())

import json
import subprocess
import sys

import pytest

from utcount.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_example(capsys):
    code, out, _ = run(capsys, "count", "--partition", "1,3,5/2,4,6", "--q", "2")
    assert code == 0 and json.loads(out) == {"2": 2}
    code, out, _ = run(capsys, "count", "--partition", "1,3,5/2,4,6", "--q", "2", "--e", "3")
    assert json.loads(out) == {"3": 0}


def test_table1_example(capsys):
    code, out, _ = run(capsys, "table1", "--max-n", "6", "--check")
    assert code == 0
    assert out.strip().splitlines()[-1] == "6 203 92 21 5"


def test_assemble_example(capsys):
    code, out, _ = run(capsys, "assemble", "--n", "3", "--e", "1")
    assert code == 0 and out.splitlines()[0] == "q - 1"
    code, out, _ = run(capsys, "assemble", "--n", "5", "--e", "2", "--q", "2")
    _, orb, _ = run(capsys, "orbits", "--un", "5", "--q", "2")
    assert code == 0 and int(out) == json.loads(orb)["degrees"]["2"] == 18
    code, out, _ = run(capsys, "--json", "assemble", "--n", "3", "--e", "1")
    assert json.loads(out)["q"]["coeffs"] == [-1, 1]


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "1,3,4/2,5")
    d = json.loads(out)
    assert code == 0 and d["cr"] == [[1, 2]] and d["d"] == 3
    assert d["flags"]["crossing_connected"] is False


def test_dump_format(capsys):
    code, out, _ = run(capsys, "dump-algebra", "--un", "3", "--q", "2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "3 2"
    assert len(lines) == 2 and "->" in lines[1]
    code, out, _ = run(capsys, "dump-algebra", "--partition", "1,3,5/2,4", "--extended", "--q", "3")
    assert out.splitlines()[0] == "3 3"


def test_orbits_command(capsys):
    code, out, _ = run(capsys, "orbits", "--un", "3", "--q", "2")
    d = json.loads(out)
    assert code == 0 and d["degrees"] == {"0": 4, "1": 1}


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "classify", "1,1")[0] == 2
    assert run(capsys, "count", "--partition", "1,2", "--q", "6")[0] == 2
    code, _, err = run(capsys, "assemble", "--n", "20", "--e", "9")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_cap_exceeded_exit_1(capsys, monkeypatch):
    monkeypatch.setenv("UTCOUNT_MAX_POINTS", "16")
    code, _, err = run(capsys, "orbits", "--un", "4", "--q", "2")
    assert code == 1 and "needs about" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "maxcross", "--param", "max_n=5")
    assert code == 0 and out.strip().splitlines()[-1].startswith("maxcross: PASS")
    code, out, _ = run(capsys, "--json", "verify", "congruence", "--param", "max_n=8")
    d = json.loads(out)
    assert code == 0 and d["ok"] is True


def test_verify_is_deterministic(capsys):
    _, a, _ = run(capsys, "--json", "verify", "structure")
    _, b, _ = run(capsys, "--json", "verify", "structure")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "wall_time"}  # noqa: E731
    assert strip(a) == strip(b)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "utcount", "assemble", "--n", "3", "--e", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "q - 1"

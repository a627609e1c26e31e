import io
import json
import subprocess
import sys

import pytest

from bpdrsk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schubert_methods_agree(capsys):
    for perm in ["1", "21", "31524", "1432", "2413"]:
        _, bpd, _ = run(capsys, "schubert", perm)
        _, ddiff, _ = run(capsys, "schubert", perm, "--method", "ddiff")
        assert bpd == ddiff
    code, out, _ = run(capsys, "schubert", "31524")
    assert code == 0 and out == "x1^2 x3^2 + x1^2 x2 x3 + x1^2 x2^2 + x1^3 x3 + x1^3 x2\n"


def test_schubert_size_cap(capsys, monkeypatch):
    monkeypatch.setenv("SCHUBERT_MAX_N", "4")
    code, _, err = run(capsys, "schubert", "31524")
    assert code == 1 and "SCHUBERT_MAX_N=4" in err
    monkeypatch.setenv("SCHUBERT_MAX_N", "many")
    assert run(capsys, "schubert", "21")[0] == 1


def test_bad_permutation(capsys):
    code, _, err = run(capsys, "schubert", "1123")
    assert code == 1 and err.startswith("error:")


def test_rsk(capsys):
    code, out, _ = run(capsys, "rsk", "--left", "1_1 2_3 1_2 2_4")
    assert code == 0
    assert out.splitlines()[-1] == "12345 <4 12354 <2 13254 <3 14253 <1 24153"
    code, out, _ = run(capsys, "rsk", "--right", "1_1 2_3 1_2 2_4")
    assert out.splitlines()[-1] == "12345 <1 21345 <3 21435 <2 31425 <4 31524"
    assert run(capsys, "rsk", "--left", "3_2")[0] == 1


def test_lr(capsys):
    code, out, _ = run(capsys, "lr", "13542", "1432")
    assert code == 0
    assert out.split() == ["156324", "1", "164325", "1", "246315", "1", "25431", "1", "263415", "1", "34521", "1", "35412", "1"]
    code, out, _ = run(capsys, "lr", "13542", "1432", "--json", "--no-verify")
    data = json.loads(out)
    assert len(data["constants"]) == 7 and data["verified_against_oracle"] is False
    code, _, err = run(capsys, "lr", "1432", "13542")
    assert code == 1 and "d1(w) ≥ d2(v) violated" in err


def test_check(capsys):
    code, out, _ = run(capsys, "check", "oracle", "--group", "S3", "--seed", "7")
    assert code == 0 and out.startswith("OK oracle")
    assert run(capsys, "check", "comm", "--group", "Sx")[0] == 1


def test_bpds(capsys):
    code, out, _ = run(capsys, "bpds", "1432", "--count")
    assert (code, out) == (0, "5\n")
    _, out, _ = run(capsys, "bpds", "21")
    assert out == ".r\nr+\n"


def test_insert_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "g.txt"
    path.write_text(".r\nr+\n")
    code, out, _ = run(capsys, "insert", "--left", str(path), "1_2")
    assert code == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(".r\nr+\n"))
    code, out2, _ = run(capsys, "insert", "--left", "-", "1_2", "--trace")
    assert code == 0 and out2.startswith("STEP droop[1] (1,2) -> (3,3)")
    assert out2.endswith(out)
    assert run(capsys, "insert", "--left", str(tmp_path / "missing"), "1_1")[0] == 1
    path.write_text(".x\n")
    assert run(capsys, "insert", "--right", str(path), "1_1")[0] == 1


def test_unrsk(capsys, tmp_path):
    _, out, _ = run(capsys, "rsk", "--right", "2_3 1_2 2_2")
    grid, chain = out.rsplit("\n", 2)[0], out.splitlines()[-1]
    path = tmp_path / "g.txt"
    path.write_text(grid)
    code, out, _ = run(capsys, "unrsk", "--right", str(path), "--chain", chain)
    assert (code, out) == (0, "2_3 1_2 2_2\n")
    code, _, _ = run(capsys, "unrsk", "--left", str(path), "--chain", "1324 <2 1423")
    assert code == 1


def test_growth_and_jdt(capsys):
    args = ["--bottom", "1234 <2 1324 <3 1342", "--right", "1342 <3 13524 <2 15324"]
    code, out, _ = run(capsys, "growth", *args)
    assert code == 0 and out.splitlines()[-2:] == ["k\t2\t3", "l\t3\t2"]
    _, out, _ = run(capsys, "growth", *args, "--json")
    assert "entries" in json.loads(out)
    _, out, _ = run(capsys, "jdt", "--c", "1234 <2 1324 <3 1342", "--d", "1342 <3 13524 <2 15324")
    assert out == "1234 <3 1243 <2 1342\n"
    code, _, err = run(capsys, "growth", "--bottom", "1234 <2 1324 <3 1342", "--right", "1324 <2 1423")
    assert code == 2 and err.startswith("internal error:")


def test_chains(capsys):
    _, out, _ = run(capsys, "chains", "--up", "1432")
    assert out == "1234 <2 1324 <3 1423 <3 1432\n"
    _, out, _ = run(capsys, "chains", "--down", "1432")
    assert out == "1234 <3 1243 <2 1342 <2 1432\n"


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rsk", "1_1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["check", "nosuch"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bpdrsk", "bpds", "21", "--count"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"

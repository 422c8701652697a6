import numpy as np
import pytest

from partialspread.cli import main
from partialspread.construct import construct_partial_spread, write_spread


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "8", "--t", "3")
    assert code == 0
    assert out.splitlines()[-1] == "mu=34 exact [EJSSS_THM3, LEMMA11, DF_THM1=34]"
    code, out, _ = run(capsys, "bounds", "--q", "3", "--n", "11", "--t", "4")
    assert "mu in [2188," in out
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "3", "--t", "2", "--sweep", "6", "--machine")
    lines = out.splitlines()
    assert len(lines) == 4 and all(l.startswith("BOUND 2 ") for l in lines)


def test_construct_then_verify(capsys, tmp_path):
    path = str(tmp_path / "s.txt")
    code, out, _ = run(capsys, "construct", "--q", "2", "--n", "7", "--t", "3", "-o", path)
    assert code == 0
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and out.strip() == "size=17 holes=8 min_dist=6 OK"


def test_verify_corrupted(capsys, tmp_path):
    s = construct_partial_spread(2, 7, 3)
    s.bases[7] = s.bases[3]
    path = tmp_path / "bad.txt"
    write_spread(s, path)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert out.startswith("OverlapError members (3,7) share point ")


def test_verify_format_error(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("q=2 n=4 t=2\n1 1 0 0; 1 0 0 0\n")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and "FormatError" not in out and "RREF" in out


def test_missing_file_and_bad_flags(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "none.txt"))
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--q", "2"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "bounds", "--q", "6", "--n", "4", "--t", "2")
    assert code == 2 and "NotAPrimePower" in err


def test_search(capsys, tmp_path):
    path = str(tmp_path / "best.txt")
    code, out, _ = run(capsys, "search", "--q", "2", "--n", "4", "--t", "2", "-o", path)
    assert code == 0 and "size=5 optimal" in out
    code, out, _ = run(capsys, "verify", path)
    assert out.startswith("size=5 holes=0")


def test_analyze(capsys, tmp_path):
    path = str(tmp_path / "s.txt")
    write_spread(construct_partial_spread(2, 5, 2), path)
    code, out, _ = run(capsys, "analyze", path, "--hyperplanes")
    assert code == 0
    assert "partition type [2^9,1^4] size=13 OK" in out
    assert "s_b [2,2] 24" in out
    assert sum(1 for l in out.splitlines() if l.startswith("H [")) == 31


def test_descent(capsys):
    code, out, _ = run(capsys, "descent", "--q", "2", "--n", "10", "--t", "4")
    assert code == 0 and out.splitlines()[-1] == "CONTRADICTION ⇒ mu ≤ 65"
    code, out, _ = run(capsys, "descent", "--q", "2", "--n", "8", "--t", "3")
    assert code == 1 and "HypothesisNotMet" in out

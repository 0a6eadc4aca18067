import io
import json

import pytest

from augiso import cli, corpus

DIR = corpus.CORPUS_DIR


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_validate():
    assert run("validate", DIR / "trefoil.dga") == (0, "valid\n")


def test_validate_invalid(tmp_path):
    bad = tmp_path / "bad.dga"
    bad.write_text("field 2^1\ncomponents 1\ngen a 1 1 1 chord\ngen e 0 1 1 chord\n"
                   "gen b -1 1 1 chord\ndiff a = e\ndiff e = b\ndiff b = 0\n")
    code, out = run("validate", bad)
    assert code == cli.EXIT_INVALID
    assert "d2 [a]" in out


def test_iso_unknot():
    code, out = run("iso", DIR / "unknot.dga", "--e1", "t=1", "--e2", "t=1")
    assert code == 0
    assert out.splitlines()[:2] == ["ISO", "d = (1)"]


def test_not_iso_exit_code(tmp_path):
    e1, e0 = tmp_path / "e1.aug", tmp_path / "e0.aug"
    e1.write_text("e=1\n")
    e0.write_text("e=0\n")
    assert run("iso", DIR / "dgaA_gf2.dga", "--e1", e1, "--e2", e0) == (cli.EXIT_NEGATIVE, "NOT-ISO\n")


def test_iso_output_verifies(tmp_path):
    code, out = run("iso", DIR / "dgaA_gf4.dga", "--e1", "e=1", "--e2", "e=g")
    assert code == 0 and "d = (1, g+1)" in out
    w = tmp_path / "w.txt"
    w.write_text(out)
    assert run("verify", DIR / "dgaA_gf4.dga", "--e1", "e=1", "--e2", "e=g", "--witness", w) == (0, "VALID\n")
    w.write_text("d = (1, g)\n")
    code, out = run("verify", DIR / "dgaA_gf4.dga", "--e1", "e=1", "--e2", "e=g", "--witness", w)
    assert code == cli.EXIT_NEGATIVE and out.startswith("INVALID") and "at e" in out


def test_classes_table():
    code, out = run("classes", DIR / "dgaA_gf4.dga")
    assert code == 0
    rows = out.splitlines()[1:]
    assert sorted(int(r.split()[1]) for r in rows) == [1, 3]


def test_classes_json():
    code, out = run("classes", "--json", "--audit", DIR / "hopf.dga")
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == cli.JSON_SCHEMA
    assert data["augmentations"] == 9
    assert [c["size"] for c in data["classes"]] == [3, 3, 3]
    assert all(c["dilation_only"] for c in data["classes"])
    assert data["audit"]["full"] and not data["audit"]["symmetry"]


def test_classes_deterministic():
    a = run("classes", "--json", DIR / "trefoil.dga", "--field", "2^2")
    b = run("classes", "--json", DIR / "trefoil.dga", "--field", "2^2")
    assert a == b
    assert json.loads(a[1])["augmentations"] == 17


def test_guard():
    code, _ = run("classes", DIR / "unknot_stab2.dga", "--field", "2^2", "--limit", "5")
    assert code == cli.EXIT_GUARD
    code, _ = run("augs", DIR / "unknot_stab2.dga", "--field", "2^2", "--limit", "5")
    assert code == cli.EXIT_GUARD


def test_augs_and_bch():
    code, out = run("augs", DIR / "trefoil.dga")
    assert code == 0 and len(out.splitlines()) == 5
    first = out.splitlines()[0]
    code, out = run("bch", DIR / "trefoil.dga", "--e1", first, "--e2", first)
    assert code == 0
    assert out.splitlines() == ["degree 1: 2", "degree 2: 1", "total: 3  poincare: 2t + t^2"]


def test_cocycle():
    assert run("cocycle", DIR / "unknot.dga", "--e1", "t=1", "--e2", "t=1", "--elem", "alpha=(1)") == (0, "COCYCLE\n")
    code, out = run("cocycle", DIR / "dgaA_gf2.dga", "--e1", "e=1", "--e2", "e=0", "--elem", "alpha=(1,1)")
    assert code == cli.EXIT_NEGATIVE
    assert "m1 coefficient of e^v = 1" in out


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.dga"
    bad.write_text("field 2^1\ncomponents 1\ngen a 1 1 1 chord\ndiff a = zz\n")
    assert run("validate", bad)[0] == cli.EXIT_PARSE
    assert run("iso", DIR / "unknot.dga", "--e1", "t=g", "--e2", "t=1")[0] == cli.EXIT_PARSE


@pytest.mark.parametrize("argv", [[], ["nosuch"], ["iso", "x.dga"], ["augs", "missing.dga"],
                                  ["classes", "--field", "2^0", str(DIR / "unknot.dga")]])
def test_usage_errors(argv):
    assert run(*argv)[0] == cli.EXIT_USAGE


def test_corpus_check():
    assert run("corpus", "check") == (0, "OK\n")

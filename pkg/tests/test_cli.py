import json
import subprocess
import sys

import pytest

from arcweb import cli, verify
from arcweb.cli import main, multiplication_table, parse_table, table_text


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enum(capsys):
    code, out, _ = run(capsys, "enum", "--algebra", "A", "--rank", "1")
    assert code == 0
    assert sorted(out.splitlines()) == ["1-2 | ^v | 1-2\tdeg=2", "1-2 | v^ | 1-2\tdeg=0",
                                        "1-2* | ^^ | 1-2*\tdeg=0", "1-2* | vv | 1-2*\tdeg=2"]


def test_enum_json(capsys):
    code, out, _ = run(capsys, "enum", "--algebra", "cW", "--rank", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["basis"]) == 40


def test_mult_mismatched_middles_prints_zero(capsys):
    code, out, _ = run(capsys, "mult", "--algebra", "A", "--left", "1-2 3-4 | ^v^v | 1-2 3-4",
                       "--right", "1-4 2-3 | ^v^v | 1-4 2-3")
    assert code == 0 and out.strip() == "0"


def test_mult_all_orders(capsys):
    code, out, _ = run(capsys, "mult", "--algebra", "Abar", "--left", "1-4 2-3 | vv^^ | 1-2* 3-4*",
                       "--right", "1-2* 3-4* | vv^^ | 1-4 2-3", "--order", "all")
    assert code == 0
    assert out.splitlines()[-1] == "- [1-4 2-3 | ^v^v | 1-4 2-3] + [1-4 2-3 | v^v^ | 1-4 2-3]"


def test_mult_explicit_and_random_order(capsys):
    args = ["mult", "--algebra", "cW", "--left", "1-4 2-3 | dots=- | 1-2* 3-4*",
            "--right", "1-2* 3-4* | dots=- | 1-4 2-3"]
    _, plain, _ = run(capsys, *args)
    code, out, _ = run(capsys, *args, "--order", "p1.5-3.5,3-4*,1-2*")
    assert code == 0 and out == plain
    _, r1, _ = run(capsys, *args, "--order", "random", "--seed", "3")
    _, r2, _ = run(capsys, *args, "--order", "random", "--seed", "3")
    assert r1 == r2 and r1.splitlines()[-1] == plain.strip()


def test_parse_errors_exit_2(capsys):
    assert run(capsys, "mult", "--algebra", "A", "--left", "1-2 | x | 1-2", "--right", "1-2 | ^v | 1-2")[0] == 2
    assert run(capsys, "enum", "--algebra", "Q")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "mult", "--algebra", "A", "--left", "1-2 | ^v | 1-2", "--right",
               "1-2* | ^^ | 1-2*")[0] == 2


def test_map_sign_and_top_bar(capsys):
    code, out, _ = run(capsys, "map", "--map", "sign", "--input", "1-2 | ^v | 1-2")
    assert code == 0 and out.strip() == "- [1-2 | ^v | 1-2]"
    code, out, _ = run(capsys, "map", "--map", "top_bar", "--input", "1-4 2-3 | vv^^ | 1-2* 3-4*")
    lines = out.splitlines()
    assert lines[0] == "term coeff=-1 basis=[1-4 2-3 | dots=- | 1-2* 3-4*] degree=1"
    assert any(l.startswith("circle c0 ") for l in lines)
    assert any(l.startswith("seam ") for l in lines)


def test_verify_order_exit_0(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "order", "--algebra", "Abar", "--rank", "2")
    assert code == 0 and "PASS" in out


def test_verify_stats_conformance(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "stats-conformance")
    assert code == 0 and "stats-conformance: PASS" in out


def test_verify_failure_exit_1(capsys, monkeypatch):
    real = verify.mult_cW
    monkeypatch.setattr(verify, "mult_cW", lambda x, y, order="leftmost": real(x, y, order).scale(-1))
    code, out, _ = run(capsys, "verify", "--suite", "embed", "--rank", "1")
    assert code == 1 and "(4)" in out


def test_output_is_byte_stable(capsys):
    outs = {run(capsys, "export", "--algebra", "cW", "--rank", "2")[1] for _ in range(2)}
    assert len(outs) == 1


@pytest.mark.parametrize("algebra", ["A", "Abar", "cW"])
def test_export_round_trip(algebra, capsys, tmp_path):
    path = tmp_path / "t.txt"
    assert run(capsys, "export", "--algebra", algebra, "--rank", "2", "--output", str(path))[0] == 0
    alg, rank, rows = parse_table(path.read_text())
    assert (alg, rank) == (algebra, 2)
    assert rows == multiplication_table(algebra, 2)
    assert table_text(alg, rank, rows) == path.read_text()


def test_export_json(capsys):
    code, out, _ = run(capsys, "export", "--algebra", "A", "--rank", "1", "--format", "json")
    data = json.loads(out)
    assert len(data["products"]) == 8


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "arcweb.cli", "verify", "--suite", "intertwine", "--rank", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "PASS" in r.stdout

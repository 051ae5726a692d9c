import json
import subprocess
import sys

import pytest

from spherecolor.cli import run
from spherecolor.coloring import Coloring, dumps_coloring, find_3_coloring, loads_coloring
from spherecolor.complex import double_wheel, dumps_tri2, loads_tri2
from spherecolor.connectivity import dw8_witness


@pytest.fixture
def dw8(tmp_path):
    p = tmp_path / "dw8.tri2"
    assert run(["gen", "double_wheel", "--n", "8", "-o", str(p)]) == 0
    return p


def _write(path, text):
    path.write_text(text)
    return str(path)


def test_gen_and_validate(dw8, capsys):
    assert loads_tri2(dw8.read_text()).faces == double_wheel(8).faces
    assert run(["validate", str(dw8), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"verdict": "VALID", "format": "tri2", "vertices": 8, "faces": 12, "even": True}


def test_gen_is_byte_stable(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        assert run(["gen", "expanded", "--n", "3", "--seed", "4", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    G = loads_tri2(a.read_text())
    assert dumps_tri2(G) == a.read_text()


def test_check(dw8, tmp_path, capsys):
    three = _write(tmp_path / "a.col", dumps_coloring(find_3_coloring(double_wheel(8))))
    wit = _write(tmp_path / "w.col", dumps_coloring(dw8_witness()))
    assert run(["check", str(dw8), three]) == 0
    assert capsys.readouterr().out.strip() == "BALANCED"
    assert run(["check", str(dw8), wit]) == 0
    assert capsys.readouterr().out.strip() == "UNBALANCED"


def test_solve_and_verify(dw8, tmp_path, capsys):
    a = find_3_coloring(double_wheel(8))
    b = a.permuted([2, 0, 1, 3])
    pa = _write(tmp_path / "a.col", dumps_coloring(a))
    pb = _write(tmp_path / "b.col", dumps_coloring(b))
    seq = tmp_path / "s.seq"
    assert run(["solve", str(dw8), pa, pb, "-o", str(seq)]) == 0
    assert run(["verify", str(dw8), pa, str(seq), "--beta", pb]) == 0
    assert "OK" in capsys.readouterr().out
    bad = _write(tmp_path / "bad.seq", "seq 1\n0 " + str(a[1]) + "\n")
    assert run(["verify", str(dw8), pa, bad]) == 4


def test_solve_exit_codes(dw8, tmp_path):
    a = _write(tmp_path / "a.col", dumps_coloring(find_3_coloring(double_wheel(8))))
    w = dw8_witness()
    pw = _write(tmp_path / "w.col", dumps_coloring(w))
    pw2 = _write(tmp_path / "w2.col", dumps_coloring(w.permuted([1, 0, 2, 3])))
    assert run(["solve", str(dw8), a, pw]) == 2
    assert run(["solve", str(dw8), pw, pw2]) == 3
    assert run(["solve", str(dw8), pw, pw2, "--oracle-fallback"]) in (0, 2)


def test_connected_and_witness(dw8, tmp_path, capsys):
    out = tmp_path / "w.col"
    assert run(["connected", str(dw8), "--witness", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "DISCONNECTED"
    w = loads_coloring(out.read_text())
    assert w.k == 4 and len(w) == 8
    oct_ = _write(tmp_path / "o.tri2", dumps_tri2(double_wheel(6)))
    assert run(["connected", oct_]) == 0
    assert capsys.readouterr().out.strip() == "CONNECTED"
    assert run(["witness", oct_]) == 0
    assert capsys.readouterr().out.strip() == "NONE"


def test_oracle_subcommands(dw8, tmp_path, capsys):
    assert run(["oracle", "connected", str(dw8)]) == 0
    assert capsys.readouterr().out.strip() == "DISCONNECTED k=4"
    assert run(["oracle", "enumerate", str(dw8), "--budget", "5"]) == 5
    a = _write(tmp_path / "a.col", dumps_coloring(find_3_coloring(double_wheel(8))))
    w = _write(tmp_path / "w.col", dumps_coloring(dw8_witness()))
    assert run(["oracle", "same", str(dw8), "--alpha", a, "--beta", w]) == 2


def test_reduce_and_suspend(tmp_path, capsys):
    gx = tmp_path / "x.json"
    assert run(["gen", "gadgetx", "-o", str(gx)]) == 0
    prefix = tmp_path / "red"
    assert run(["reduce", str(gx), "--k", "4", "-o", str(prefix)]) == 0
    G = loads_tri2((tmp_path / "red.tri2").read_text())
    assert G.is_even()
    alpha = loads_coloring((tmp_path / "red.alpha.col").read_text())
    assert alpha.k == 5 and len(alpha) == G.vertex_count
    capsys.readouterr()
    s = tmp_path / "s.trid"
    assert run(["suspend", str(tmp_path / "red.tri2"), "-o", str(s),
                "--alpha", str(tmp_path / "red.alpha.col"), "--alpha-out", str(tmp_path / "s.col")]) == 0
    lifted = loads_coloring((tmp_path / "s.col").read_text())
    assert lifted.colors == alpha.colors + (5, 5)
    assert run(["validate", str(s)]) == 0


def test_invalid_input_and_usage(tmp_path):
    bad = _write(tmp_path / "bad.tri2", "tri2 4 1\n0 1 2\n")
    assert run(["validate", bad]) == 4
    assert run(["validate", str(tmp_path / "missing.tri2")]) == 1
    with pytest.raises(SystemExit) as exc:
        run(["validate", bad, "--nope"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 1


def test_console_entry_point(dw8):
    res = subprocess.run(
        [sys.executable, "-c", "from spherecolor.cli import main; main()", "validate", str(dw8)],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.startswith("VALID")

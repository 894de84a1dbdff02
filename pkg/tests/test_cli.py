import io
import os
import subprocess
import sys

import pytest

from quivergrad.cli import run
from quivergrad.textformat import parse_presentation
from quivergrad.graded import hilbert


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


GOLDEN = {
    ("hilbert", "kq-kronecker", "--up-to", "3"): "0:2 1:2 2:0 3:0\n",
    ("koszul", "kronecker-pi", "--steps", "3", "--bound", "8"): (
        "koszul-up-to(3) (steps 3, bound 8)\n"
        "  step 0: generators in degrees 0x2\n"
        "  step 1: generators in degrees 1x4\n"
        "  step 2: generators in degrees 2x2\n"
        "  step 3: generators in degrees -\n"),
    ("almost-koszul", "pi-a3", "--bound", "8", "--format", "structured"): (
        "status: (2,2)\nbound: 8\ntop-degree: 2\ntotal-dim: 10\np: 2\nq: 2\n"
        "witness[1]: 3@4\nwitness[2]: 2@4\nwitness[3]: 1@4\n"),
    ("ext-gen", "cubic-control", "--steps", "3", "--bound", "8"): (
        "not-generated (steps 3, bound 8)\n"
        "  Ext^0: dim 4, spanned by products: -\n"
        "  Ext^1: dim 3, spanned by products: -\n"
        "  Ext^2: dim 1, spanned by products: 0\n"
        "  Ext^3: dim 0, spanned by products: 0\n"),
    ("cut", "check", "kronecker-pi", "--cut", "a*,b*", "--n", "1"): (
        "{a*,b*}: valid (n 1, bound 2)\n"
        "  degree-0 part has global dimension 1\n"
        "  slice 0: dim 4\n  slice 1: dim 12\n  slice 2: dim 20\n"),
    ("cut", "mutate", "kronecker-pi", "--cut", "a*,b*", "--vertex", "e"): "{a,b}\n",
    ("nilpotency", "kronecker-pi", "--elements", "a;a.a*", "--bound", "12"): (
        "a: nilpotent(2)\na.a*: unknown-beyond(12)\n"),
    ("conjugate", "kronecker-pi", "--by", "a"): (
        "e -> e + a\nf -> f - a\na -> a\nb -> b\n"
        "a* -> a* - a.a* + a*.a - a.a*.a\nb* -> b* - a.b* + b*.a - a.b*.a\n"),
    ("gradical-compare", "kronecker-pi", "--w1", "length", "--w2", "cut:a*,b*",
     "--w2-conjugate-by", "a", "--bound", "4"): "equal (bound 4)\n",
}


@pytest.mark.parametrize("argv", sorted(GOLDEN))
def test_golden(argv):
    code, out, err = call(*argv)
    assert code == 0, err
    assert out == GOLDEN[argv]


def test_qdual_output_parses():
    code, out, _ = call("qdual", "polynomial2")
    assert code == 0
    d = parse_presentation(out)
    assert hilbert(d, 3).as_list() == [1, 2, 1, 0]


def test_preproj_round_trip(tmp_path):
    code, out, _ = call("preproj", "kq-kronecker", "--n", "1", "--bound", "4")
    assert code == 0
    f = tmp_path / "pi.alg"
    f.write_text(out)
    code2, out2, _ = call("hilbert", str(f), "--up-to", "2,1")
    assert code2 == 0
    # weights are (total, preprojective): the path algebra sits in preprojective
    # degree 0, two new arrows and the six internal-degree-0 bimodule elements in degree 1
    assert out2 == "0,0:2 0,1:0 1,0:2 1,1:2 2,0:0 2,1:6\n"


def test_double_and_classical():
    code, out, _ = call("double", "kq-a2")
    assert code == 0 and "a*" in out and "relations: []" in out
    code, out, _ = call("classical-preproj", "kq-a2")
    assert code == 0 and '"a.a*"' in out


def test_exit_codes():
    assert call("koszul", "kronecker-pi", "--steps", "3")[0] == 1          # missing --bound
    assert call("hilbert", "no-such-file.alg", "--up-to", "2")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("koszul", "polynomial2", "--steps", "5", "--bound", "3")[0] == 2
    assert call("cut", "mutate", "kronecker-pi", "--cut", "a", "--vertex", "e")[0] == 2
    assert call("nilpotency", "kronecker-pi", "--elements", "a..b", "--bound", "3")[0] == 1
    # a negative verdict is still a verdict
    assert call("koszul", "pi-a3", "--steps", "4", "--bound", "8")[0] == 0


def test_structured_errors():
    code, out, _ = call("koszul", "polynomial2", "--steps", "5", "--bound", "3",
                        "--format", "structured")
    assert code == 2
    assert out == "status: error\nreason: bound-too-small\nmessage: step 3 needs degrees beyond 3\n"
    code, out, _ = call("preproj", "beilinson-p2", "--n", "1", "--bound", "3",
                        "--format", "structured")
    assert code == 2 and "reason: " in out
    code, out, _ = call("hilbert", "kq-a2", "--format", "structured")
    assert code == 1 and out.startswith("status: error\nreason: usage\n")


def test_parse_error_position(tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text('vertices: [e]\narrows:\n- {name: x, source: e, target: e}\nrelations:\n- "x..x"\n')
    code, out, _ = call("hilbert", str(f), "--up-to", "2", "--format", "structured")
    assert code == 1
    assert "reason: syntax-error" in out


def test_deterministic():
    argv = ("cuts", "enumerate", "pi-a3", "--n", "1", "--bound", "2", "--format", "structured")
    first = call(*argv)
    assert first == call(*argv)
    assert call(*argv, "--workers", "2") == first


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "quivergrad", "hilbert", "kq-kronecker",
                           "--up-to", "3"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert proc.stdout == "0:2 1:2 2:0 3:0\n"

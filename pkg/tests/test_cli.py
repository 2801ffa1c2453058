import io
import subprocess
import sys

import pytest

from kripkelab.cli import run
from kripkelab.kripke import model_check, parse_structures
from kripkelab.syntax import parse_modal, parse_program


def call(*argv):
    err = io.StringIO()
    code, text = run(list(argv), out=io.StringIO(), err=err)
    return code, text, err.getvalue()


def machine_block(text):
    _, _, tail = text.partition("\n---\n")
    return dict(line.split("=", 1) for line in tail.splitlines() if "=" in line)


def witness_refutes(text):
    head = text.partition("\n---\n")[0]
    data = machine_block(text)
    model = [s for s in parse_structures(head) if s.name == "witness"][0]
    return not model_check(model, data["witness_world"], parse_modal(data["witness_false"]))


@pytest.fixture
def files(tmp_path):
    (tmp_path / "unsat3.horn").write_text("+P1\n-P1 +P2\n-P2\n")
    (tmp_path / "sat.horn").write_text("+P1\n")
    (tmp_path / "split.ss").write_text("1 2\n1 2\n")
    (tmp_path / "nosplit.ss").write_text("1\n1\n")
    (tmp_path / "chain.txt").write_text("frame chain\nworld u\nworld v\nrel R u v\n")
    (tmp_path / "bad.txt").write_text("frame F\nrel R u v\n")
    return tmp_path


class TestExitCodes:
    def test_parity_even(self):
        assert call("check-frame", "--family", "parity", "--n", "4", "--formula", "mckinsey")[0] == 0

    def test_parity_odd_with_witness(self):
        code, text, _ = call("check-frame", "--family", "parity", "--n", "3", "--formula", "mckinsey")
        assert code == 1
        assert witness_refutes(text)

    def test_ca_box_fails(self):
        code, text, _ = call("check-property", "--kind", "ca", "--formula", "[a]p", "--var", "p")
        assert code == 1
        assert witness_refutes(text)
        assert machine_block(text)["result"] == "fails"

    def test_ca_diamond_holds(self):
        code, text, _ = call("check-property", "--kind", "ca", "--formula", "<a>p", "--oracle", "2")
        assert code == 0
        assert machine_block(text)["oracle"] == "holds"

    def test_horn_unsat(self, files):
        code, text, _ = call("reduce-horn", "--in", str(files / "unsat3.horn"), "--verify")
        assert code == 0
        data = machine_block(text)
        assert data["horn"] == "unsat" and data["frame_validates_phih"] == "yes"

    def test_horn_sat(self, files):
        code, text, _ = call("reduce-horn", "--in", str(files / "sat.horn"), "--verify")
        assert code == 0
        assert witness_refutes(text)

    def test_set_splitting(self, files):
        assert call("reduce-setsplit", "--in", str(files / "split.ss"), "--verify")[0] == 0
        code, text, _ = call("reduce-setsplit", "--in", str(files / "nosplit.ss"), "--verify")
        assert code == 0 and machine_block(text)["splitting"] == "no"

    def test_check_valid(self):
        assert call("check-valid", "--formula", "[a](p -> q) -> [a]p -> [a]q")[0] == 0
        code, text, _ = call("check-valid", "--formula", "<a>p -> [a]p")
        assert code == 1 and witness_refutes(text)

    def test_frame_file(self, files):
        code, text, _ = call("check-frame", "--frame", str(files / "chain.txt"), "--formula", "[R]p -> p")
        assert code == 1 and witness_refutes(text)

    def test_fo_sentence(self):
        assert call("check-frame", "--family", "anbn", "--n", "2", "--formula", "chi")[0] == 0
        assert call("check-frame", "--family", "anbn", "--n", "2", "--member", "1", "--formula", "chi")[0] == 1

    def test_game(self):
        code, text, _ = call("game", "--family", "anbn", "--n", "2")
        assert code == 0 and machine_block(text)["winner"] == "Duplicator"
        code, text, _ = call("game", "--family", "anbn", "--n", "1", "--rounds", "2")
        assert machine_block(text)["winner"] == "Spoiler"

    def test_compile(self):
        code, text, _ = call("compile-program", "--formula", "q & <a>(p & ~q)")
        assert code == 0
        assert parse_program(machine_block(text)["program"]) == parse_program("q?;a;(~q)?")
        assert call("compile-program", "--formula", "[a]p")[0] == 1

    def test_gt_define(self):
        assert call("gt-define", "--class", "has-reflexive-point", "--max-size", "2")[0] == 0
        assert call("gt-define", "--class", "irreflexive", "--max-size", "2")[0] == 1


class TestErrors:
    def test_missing_file(self, files):
        code, _, err = call("reduce-horn", "--in", str(files / "nope.horn"))
        assert code == 2 and err.startswith("error: cannot read")

    def test_parse_error(self):
        code, _, err = call("check-valid", "--formula", "<a>p &")
        assert code == 2 and err.startswith("parse error:")

    def test_bad_structure_file(self, files):
        code, _, err = call("check-frame", "--frame", str(files / "bad.txt"), "--formula", "p")
        assert code == 2 and err.startswith("parse error:")

    def test_budget(self):
        code, _, err = call("check-frame", "--family", "parity", "--n", "6", "--formula", "p & q",
                            "--budget-bits", "8")
        assert code == 2 and err.startswith("budget exceeded:")

    def test_usage(self):
        assert call("check-frame", "--formula", "p")[0] == 2
        assert call("frobnicate")[0] == 2
        assert call("gen", "--family", "parity", "--n", "-1")[0] == 2


class TestOutput:
    def test_deterministic(self):
        argv = ("check-frame", "--family", "random", "--n", "4", "--seed", "5", "--formula", "lob")
        assert call(*argv)[1] == call(*argv)[1]

    def test_gen_round_trips(self, tmp_path):
        out = tmp_path / "parity.txt"
        code, text, _ = call("gen", "--family", "parity", "--n", "2", "--out", str(out))
        assert code == 0
        F, G = parse_structures(out.read_text())
        assert F.name == "F2" and G.name == "G2"

    def test_reduction_writes_frame(self, files):
        out = files / "frame.txt"
        call("reduce-horn", "--in", str(files / "unsat3.horn"), "--out", str(out))
        (F,) = parse_structures(out.read_text())
        assert F.n == 5

    def test_export_dot(self, tmp_path):
        out = tmp_path / "g.dot"
        assert call("export-dot", "--family", "parity", "--n", "1", "--out", str(out))[0] == 0
        assert out.read_text().startswith("digraph")

    def test_fresh_props_renamed(self):
        code, text, _ = call("check-property", "--kind", "mono", "--formula", "[a]~p")
        assert code == 1
        assert "#" not in text.partition("\n---\n")[0].replace("# ", "")
        assert witness_refutes(text)

    def test_console_script(self):
        proc = subprocess.run([sys.executable, "-m", "kripkelab.cli", "check-frame", "--family", "parity",
                               "--n", "2", "--formula", "mckinsey"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "result=valid" in proc.stdout

import json

from hitomezashi.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from hitomezashi.decompose import parse_certificate


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


ZERO = ["--eps", "0@0:const0", "--eta", "0@0:const0"]


class TestEnumerate:
    def test_zero_pattern_text(self, capsys):
        code, out, _ = run(capsys, "enumerate", *ZERO, "--window", "0", "0", "3", "3")
        assert code == EXIT_OK
        assert out.count("length=4") == 4
        assert "4 loops" in out

    def test_structured(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", *ZERO, "--window", "0", "0", "3", "3",
            "--format", "structured",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert len(doc["loops"]) == 4
        assert all(l["length"] == 4 for l in doc["loops"])

    def test_bad_window_exit_2(self, capsys):
        code, _, err = run(capsys, "enumerate", *ZERO, "--window", "3", "0", "0", "3")
        assert code == EXIT_USAGE
        assert "--window" in err


class TestTrace:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "trace", *ZERO, "--at", "0", "0")
        assert code == EXIT_OK
        assert "loop length=4" in out

    def test_structured(self, capsys):
        code, out, _ = run(capsys, "trace", *ZERO, "--at", "0", "0", "--format", "structured")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["kind"] == "loop"
        assert len(doc["edges"]) == 4

    def test_bad_spec_exit_2(self, capsys):
        code, _, err = run(capsys, "trace", "--eps", "0@0:const0", "--eta", "bogus", "--at", "0", "0")
        assert code == EXIT_USAGE
        assert "--eta" in err

    def test_budget_cutoff_reported(self, capsys):
        code, out, _ = run(capsys, "trace", *ZERO, "--at", "0", "0", "--budget", "2")
        assert code == EXIT_OK
        assert "unresolved length=2" in out


class TestDecompose:
    def test_unit_square_certificate(self, capsys):
        code, out, _ = run(capsys, "decompose", *ZERO, "--at", "0", "0")
        assert code == EXIT_OK
        cert = parse_certificate(out)
        assert cert.length == 4
        assert cert.crossings == (1,)

    def test_seeded_certificate(self, capsys):
        code, out, _ = run(capsys, "decompose", "--eps", "rand:7", "--eta", "rand:8", "--at", "0", "0")
        assert code == EXIT_OK
        cert = parse_certificate(out)
        assert cert.length % 8 == 4

    def test_unresolved_exit_2(self, capsys):
        code, _, err = run(capsys, "decompose", *ZERO, "--at", "0", "0", "--budget", "2")
        assert code == EXIT_USAGE
        assert "did not close" in err


class TestVerifyCommands:
    def test_verify_random_small(self, capsys):
        code, out, err = run(
            capsys, "verify-random", "--seed", "42", "--trials", "5", "--size", "16",
            "--budget", "2000",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["patterns_examined"] == 5
        assert set(doc["loops_by_residue"]) <= {"4"}
        assert doc["lemma_violations"] == []
        assert "duration" in err

    def test_verify_random_spec_example(self, capsys):
        # `verify-random --seed 42 --trials 100 --size 16` -> exit 0.
        code, out, _ = run(
            capsys, "verify-random", "--seed", "42", "--trials", "100", "--size", "16",
            "--budget", "4096",
        )
        assert code == EXIT_OK
        assert json.loads(out)["lemma_violations"] == []

    def test_verify_exhaustive_small(self, capsys):
        code, out, _ = run(
            capsys, "verify-exhaustive", "--n-eps", "2", "--n-eta", "2",
            "--window", "0", "0", "5", "5",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["patterns_examined"] == 16

    def test_text_format(self, capsys):
        code, out, _ = run(
            capsys, "verify-exhaustive", "--n-eps", "1", "--n-eta", "1",
            "--window", "0", "0", "3", "3", "--format", "text",
        )
        assert code == EXIT_OK
        assert "patterns_examined: 4" in out
        assert "violations: 0" in out


class TestRender:
    def test_svg_stdout(self, capsys):
        code, out, _ = run(capsys, "render", *ZERO, "--window", "0", "0", "1", "1")
        assert code == EXIT_OK
        assert out.count("<line") == 4

    def test_ascii(self, capsys):
        code, out, _ = run(
            capsys, "render", *ZERO, "--window", "0", "0", "1", "1", "--format", "ascii"
        )
        assert code == EXIT_OK
        assert out == " _ \n| |\n _ \n"

    def test_highlight_loops(self, capsys):
        code, out, _ = run(
            capsys, "render", *ZERO, "--window", "0", "0", "1", "1", "--highlight-loops"
        )
        assert code == EXIT_OK
        assert 'stroke="red"' in out

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.svg"
        code, out, _ = run(
            capsys, "render", *ZERO, "--window", "0", "0", "1", "1", "-o", str(target)
        )
        assert code == EXIT_OK
        assert out == ""
        assert target.read_text().count("<line") == 4


class TestExitCodes:
    def test_ok_is_0_violation_is_1_usage_is_2(self):
        assert (EXIT_OK, EXIT_VIOLATION, EXIT_USAGE) == (0, 1, 2)

    def test_bad_eps_names_flag(self, capsys):
        code, _, err = run(capsys, "enumerate", "--eps", "xx", "--eta", "0@0:const0",
                           "--window", "0", "0", "1", "1")
        assert code == EXIT_USAGE
        assert "--eps" in err

    def test_entry_point_installed(self):
        import shutil
        import subprocess

        exe = shutil.which("hitomezashi")
        assert exe, "console script not installed"
        proc = subprocess.run(
            [exe, "trace", "--eps", "0@0:const0", "--eta", "0@0:const0", "--at", "0", "0"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "loop length=4" in proc.stdout

import json
from importlib import resources

import jsonschema
import pytest

from simrex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def schema(name):
    text = resources.files("simrex").joinpath(f"schemas/{name}").read_text()
    return json.loads(text)


class TestCompareCommand:
    def test_simeq_holds(self, capsys):
        code, out, _ = run(capsys, "compare", "simeq", "ab + a(b+c)", "a(b+c)")
        assert code == 0
        assert "holds" in out

    def test_bisim_fails(self, capsys):
        code, out, _ = run(capsys, "compare", "bisim", "ab + a(b+c)", "a(b+c)")
        assert code == 1
        assert "fails" in out and "witness" in out

    def test_sim_fails_with_witness_json(self, capsys):
        code, out, _ = run(capsys, "compare", "sim", "a*", "(aa)*", "--format", "json")
        assert code == 1
        data = json.loads(out)
        jsonschema.validate(data, schema("compare_report.schema.json"))
        assert data["verdict"] is False
        assert data["witness"]["kind"] == "game"

    def test_json_validates_on_success_too(self, capsys):
        for relation in ("sim", "simeq", "bisim", "trace"):
            code, out, _ = run(capsys, "compare", relation, "a", "a", "--format", "json")
            assert code == 0
            jsonschema.validate(json.loads(out), schema("compare_report.schema.json"))

    def test_trace_witness_json(self, capsys):
        code, out, _ = run(capsys, "compare", "trace", "ab", "ac", "--format", "json")
        assert code == 1
        data = json.loads(out)
        jsonschema.validate(data, schema("compare_report.schema.json"))
        assert data["witness"]["kind"] == "word"

    def test_text_and_json_verdicts_agree(self, capsys):
        for relation in ("sim", "simeq", "bisim", "trace"):
            code_t, out_t, _ = run(capsys, "compare", relation, "a*", "(aa)*")
            code_j, out_j, _ = run(capsys, "compare", relation, "a*", "(aa)*", "--format", "json")
            assert code_t == code_j
            assert json.loads(out_j)["verdict"] == ("holds" in out_t)

    def test_parse_error_is_exit_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            run(capsys, "compare", "simeq", "a ++", "a")
        assert err.value.code == 2

    def test_cap_error_is_exit_2(self, capsys):
        code, _, err = run(capsys, "compare", "simeq", "(a+b)*(a+b)(a+b)", "a", "--cap", "2")
        assert code == 2
        assert "state space exceeded" in err


class TestLtsCommand:
    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "lts", "a*", "--format", "dot")
        assert code == 0
        assert "doublecircle" in out
        assert '[label="a"]' in out

    def test_single_state_zero(self, capsys):
        code, out, _ = run(capsys, "lts", "0")
        assert code == 0
        assert out.count("shape=circle") == 1
        assert "->" not in out.replace("__root0 -> n0", "")

    def test_json_validates(self, capsys):
        code, out, _ = run(capsys, "lts", "a(b+c)", "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), schema("lts.schema.json"))

    def test_byte_identical_runs(self, capsys):
        _, one, _ = run(capsys, "lts", "(ab)*c", "--format", "json")
        _, two, _ = run(capsys, "lts", "(ab)*c", "--format", "json")
        assert one == two


class TestAxiomsCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = run(capsys, "axioms", "--seed", "42", "--instances", "15")
        assert code == 0
        assert "PASS" in out

    def test_seeded_runs_identical(self, capsys):
        _, one, _ = run(capsys, "axioms", "--seed", "42", "--instances", "10", "--format", "json")
        _, two, _ = run(capsys, "axioms", "--seed", "42", "--instances", "10", "--format", "json")
        assert one == two

    def test_json_validates(self, capsys):
        code, out, _ = run(capsys, "axioms", "--seed", "1", "--instances", "5", "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), schema("suite_report.schema.json"))

    def test_only_filter(self, capsys):
        code, out, _ = run(
            capsys, "axioms", "--seed", "7", "--instances", "5",
            "--only", "right-induction", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert [s["name"] for s in data["schemas"]] == ["right-induction"]

    def test_unknown_schema_is_exit_2(self, capsys):
        code, _, err = run(capsys, "axioms", "--only", "made-up", "--instances", "1")
        assert code == 2
        assert "unknown schema" in err

    def test_bad_alphabet_is_exit_2(self, capsys):
        code, _, _ = run(capsys, "axioms", "--alphabet", "aQ", "--instances", "1")
        assert code == 2


class TestInterpretCommand:
    def test_standard_star(self, capsys):
        code, out, _ = run(capsys, "interpret", "a*", "--std", "--bound", "3")
        assert code == 0
        assert out == "*\n(a *)\n(a (a *))\n"

    def test_zero_prints_nothing(self, capsys):
        code, out, _ = run(capsys, "interpret", "0", "--std", "--bound", "9")
        assert code == 0
        assert out == ""

    def test_one_is_the_variable(self, capsys):
        code, out, _ = run(capsys, "interpret", "1", "--std", "--bound", "1")
        assert code == 0
        assert out == "*\n"

    def test_file_interpretation(self, capsys, tmp_path):
        f = tmp_path / "interp.txt"
        f.write_text("sig: g/1, c/0\na: (g *)\nb: c\n")
        code, out, _ = run(capsys, "interpret", "ab", "--file", str(f), "--bound", "4")
        assert code == 0
        assert out == "(g c)\n"

    def test_malformed_file_is_exit_2(self, capsys, tmp_path):
        f = tmp_path / "interp.txt"
        f.write_text("sig: g/1\na: (g * *)\n")
        code, _, err = run(capsys, "interpret", "a", "--file", str(f))
        assert code == 2
        assert "malformed" in err

    def test_missing_letters_is_exit_2(self, capsys, tmp_path):
        f = tmp_path / "interp.txt"
        f.write_text("sig: c/0\na: c\n")
        code, _, err = run(capsys, "interpret", "ab", "--file", str(f))
        assert code == 2
        assert "does not cover" in err

    def test_missing_file_is_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "interpret", "a", "--file", str(tmp_path / "nope.txt"))
        assert code == 2


class TestSelftestCommand:
    def test_quick_battery_passes(self, capsys):
        code, out, _ = run(capsys, "selftest", "--instances", "5")
        assert code == 0
        assert "FAIL" not in out

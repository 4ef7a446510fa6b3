import json

import pytest

from conftest import FIXTURES
from outageflow.cli import main
from outageflow.core import Schedule
from outageflow.io import ParseError, emit_instance, emit_schedule, parse_instance, parse_schedule
from outageflow.solve import emit_report, report_json, solve

FIXTURE_FILES = sorted(FIXTURES.glob("*.msp"))


class TestInstanceFormat:
    def test_sp_example_fixture(self, I2):
        inst = parse_instance((FIXTURES / "sp_example.msp").read_text())
        assert len(inst.network.nodes) == 3
        assert len(inst.network.arcs) == 4
        assert len(inst.jobs) == 3 and inst.T == 3
        assert inst.network.arcs == I2.network.arcs and dict(inst.jobs) == dict(I2.jobs)

    @pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.name)
    def test_round_trip(self, path):
        inst = parse_instance(path.read_text())
        again = parse_instance(emit_instance(inst))
        assert again == inst
        assert emit_instance(again) == emit_instance(inst)

    def test_empty(self):
        with pytest.raises(ParseError) as exc:
            parse_instance("")
        assert exc.value.code == "MissingHeader"

    def test_comments_only(self):
        with pytest.raises(ParseError) as exc:
            parse_instance("c nothing here\n")
        assert exc.value.code == "MissingHeader"

    def test_duplicate_arc(self):
        text = "p msp 2 2 1\nn s source\nn t sink\na x s t 1 0\na x s t 2 0\n"
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert (exc.value.code, exc.value.line, exc.value.column) == ("DuplicateArcId", 5, 3)

    @pytest.mark.parametrize(
        "text,code,line,column",
        [
            ("p max 2 0 1\n", "BadHeader", 1, 3),
            ("p msp 2 0\n", "WrongFieldCount", 1, 10),
            ("p msp 2 0 x\n", "BadInteger", 1, 11),
            ("p msp 2 0 1\nn s source\nn t source\n", "DuplicateTerminal", 3, 5),
            ("p msp 2 0 1\nn s source\nn s sink\n", "DuplicateNode", 3, 3),
            ("p msp 2 0 1\nn s origin\n", "BadRole", 2, 5),
            ("p msp 2 0 1\nn s source\nz\n", "UnknownLineType", 3, 1),
            ("p msp 3 0 1\nn s source\nn t sink\n", "CountMismatch", 3, 9),
            ("p msp 1 0 1\nn s source\n", "MissingTerminal", 2, 11),
            ("p msp 2 1 1\nn s source\nn t sink\na x s t 1 -1\n", "BadValue", 4, 11),
            ("p msp 0 0 1\np msp 0 0 1\n", "DuplicateHeader", 2, 1),
        ],
    )
    def test_diagnostics(self, text, code, line, column):
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert (exc.value.code, exc.value.line, exc.value.column) == (code, line, column)


class TestScheduleFormat:
    def test_round_trip(self):
        s = Schedule({"a": {3}, "b": {1, 2}})
        text = emit_schedule(s)
        assert text == "j a 3\nj b 1 2\n"
        assert parse_schedule(text) == s

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_schedule("j a\n")
        with pytest.raises(ParseError):
            parse_schedule("j a 1 1\n")
        with pytest.raises(ParseError):
            parse_schedule("j a 0\n")


class TestReports:
    def test_sp_example_json(self, I2):
        data = json.loads(emit_report(solve(I2), "json"))
        assert data["optimum"] == 9 and data["vector"] == [4, 4, 1]
        assert data["status"] == "Optimal" and data["strategy"] == "SpDynamicProgram"

    def test_tight_ratio_bounds(self, I3):
        b = report_json(solve(I3))["bounds"]
        assert (b["L"], b["U"]) == (1, 2)
        assert b["ratio_floor"] == {"num": 1, "den": 2}

    def test_heuristic(self, I2):
        data = report_json(solve(I2, strategy="heuristic"))
        assert data["status"] == "Heuristic"
        assert data["optimum"] == data["bounds"]["L"] == 8
        assert data["bounds"]["U"] == 10

    def test_heuristic_needs_unit_jobs(self, I6):
        from outageflow.core import Instance, UnsupportedMultiplicity

        with pytest.raises(UnsupportedMultiplicity):
            solve(Instance(I6.network, {"su": 2}, 3), strategy="heuristic")
        assert solve(Instance(I6.network, {"su": 2}, 3)).status.value == "Optimal"

    def test_human_table(self, I2):
        text = emit_report(solve(I2), "human")
        assert "period" in text and "optimum    9" in text

    @pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.name)
    def test_json_deterministic(self, path):
        inst = parse_instance(path.read_text())
        a = emit_report(solve(inst), "json")
        b = emit_report(solve(parse_instance(path.read_text())), "json")
        assert a == b


class TestCli:
    def run(self, capsys, *argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_solve_json(self, capsys):
        code, out, _ = self.run(capsys, "solve", FIXTURES / "sp_example.msp", "--format", "json")
        assert code == 0 and json.loads(out)["optimum"] == 9

    def test_solve_byte_identical(self, capsys):
        args = ("solve", FIXTURES / "uniform_7.msp", FIXTURES / "intro.msp", "--format", "json")
        _, a, _ = self.run(capsys, *args)
        _, b, _ = self.run(capsys, *args)
        assert a == b

    @pytest.mark.parametrize("strategy", ["auto", "sp", "exact", "bnb", "heuristic"])
    def test_strategies(self, capsys, strategy):
        code, out, _ = self.run(
            capsys, "solve", FIXTURES / "sp_example.msp", "--strategy", strategy, "--format", "json"
        )
        expect = 8 if strategy == "heuristic" else 9
        assert code == 0 and json.loads(out)["optimum"] == expect

    def test_budget_exit_code(self, capsys):
        code, out, _ = self.run(
            capsys, "solve", FIXTURES / "three_partition_yes.msp", "--strategy", "bnb", "--budget", "2", "--format", "json"
        )
        assert code == 2
        assert json.loads(out)["budget_exhausted"] is True

    def test_brute_force_budget_exit_code(self, capsys):
        code, _, err = self.run(capsys, "solve", FIXTURES / "partition_123.msp", "--strategy", "exact", "--budget", "1")
        assert code == 2 and "budget" in err

    def test_parse_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.msp"
        bad.write_text("")
        code, _, err = self.run(capsys, "solve", bad)
        assert code == 1 and "MissingHeader" in err

    def test_wrong_strategy_exit_code(self, capsys):
        code, _, err = self.run(capsys, "solve", FIXTURES / "sp_example.msp", "--strategy", "uniform")
        assert code == 1

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = self.run(capsys, "bound", tmp_path / "nope.msp")
        assert code == 1

    def test_bound(self, capsys):
        code, out, _ = self.run(capsys, "bound", FIXTURES / "tight_ratio_5.msp", "--format", "json")
        data = json.loads(out)
        assert code == 0 and (data["L"], data["U"]) == (4, 5)

    def test_analyze(self, capsys):
        code, out, _ = self.run(capsys, "analyze", FIXTURES / "sp_example.msp", "--format", "json")
        data = json.loads(out)
        assert data["recommended_strategy"] == "SpDynamicProgram"
        assert data["sp_tree"] == "S(P(a, b), P(c, d))"

    def test_evaluate(self, capsys, tmp_path):
        sched = tmp_path / "s.txt"
        sched.write_text("j a 3\nj b 2\nj c 3\n")
        code, out, _ = self.run(
            capsys, "evaluate", FIXTURES / "sp_example.msp", "--schedule", sched, "--format", "json"
        )
        assert code == 0 and json.loads(out) == {"total": 9, "per_period": [4, 4, 1]}

    def test_evaluate_infeasible(self, capsys, tmp_path):
        sched = tmp_path / "s.txt"
        sched.write_text("j a 3\n")
        code, _, _ = self.run(capsys, "evaluate", FIXTURES / "sp_example.msp", "--schedule", sched)
        assert code == 1

    def test_generate_matches_fixture(self, capsys, tmp_path):
        out_file = tmp_path / "g.msp"
        code, _, _ = self.run(capsys, "generate", "sp-example", "-o", out_file)
        assert code == 0
        assert out_file.read_text() == (FIXTURES / "sp_example.msp").read_text()

    def test_generate_invalid(self, capsys):
        code, _, _ = self.run(capsys, "generate", "partition", "--D", "1,2")
        assert code == 1

import json
import subprocess
import sys

import pytest

from defeasible_alc.cli import main

from conftest import fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


@pytest.fixture
def write_kb(tmp_path):
    def write(text, name="kb.dl"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


class TestRank:
    @pytest.mark.parametrize(
        "concept, expected", [("Penguin", 1), ("Bird", 0), ("A and not A", "inf")]
    )
    def test_kb1_ranks(self, capsys, concept, expected):
        result = run_json(capsys, "rank", fixture_path("kb1"), concept)
        assert result["rank"] == expected

    def test_strata_listing(self, capsys):
        result = run_json(capsys, "rank", fixture_path("kb1"), "Bird")
        assert result["strata"] == [
            ["T(Bird) <= HasNiceFeather", "T(Bird) <= Fly"],
            ["T(Penguin) <= not Fly"],
        ]
        assert result["infinite"] == []

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "rank", fixture_path("kb1"), "Penguin")
        assert code == 0
        assert out.splitlines()[0] == "rank(Penguin) = 1"
        assert "D1: T(Penguin) <= not Fly" in out


class TestEntails:
    @pytest.mark.parametrize(
        "kb, method, query, expected",
        [
            ("kb1", "mp", "T(Penguin) <= HasNiceFeather", True),
            ("kb1", "rc", "T(Penguin) <= HasNiceFeather", False),
            ("kb3", "mp", "T(Penguin) <= C", False),
            ("kb3", "lex", "T(Penguin) <= C", True),
            ("kb4", "rc", "T(BabyPenguin) <= not Fly", False),
            ("kb4", "mp", "T(BabyPenguin) <= not Fly", True),
            ("kb1", "classical", "Penguin <= Bird", True),
            ("kb1", "classical", "Bird <= Fly", False),
            ("kb1", "oracle-rc", "T(Penguin) <= not Fly", True),
            ("kb1", "oracle-s", "T(Penguin) <= HasNiceFeather", True),
        ],
    )
    def test_verdicts(self, capsys, kb, method, query, expected):
        result = run_json(capsys, "entails", fixture_path(kb), "--method", method, query)
        assert result["entailed"] is expected
        assert result["method"] == method

    def test_false_verdict_exits_zero(self, capsys):
        code, out, _ = run(
            capsys, "entails", fixture_path("kb3"), "--method", "mp", "T(Penguin) <= C"
        )
        assert code == 0
        assert out.startswith("T(Penguin) <= C: false (mp)")

    def test_schema(self, capsys):
        result = run_json(
            capsys, "entails", fixture_path("kb2"), "--method", "mp", "T(Penguin) <= C"
        )
        assert {
            "command",
            "method",
            "query",
            "entailed",
            "rank_lhs",
            "rank_lhs_and_neg_rhs",
            "bases",
            "elapsed_ms",
        } <= set(result)
        assert result["rank_lhs"] == 1
        assert result["rank_lhs_and_neg_rhs"] == 1
        assert len(result["bases"]) == 2

    def test_explain_lists_each_base(self, capsys):
        code, out, _ = run(
            capsys,
            "entails",
            fixture_path("kb2"),
            "--method",
            "mp",
            "--explain",
            "T(Penguin) <= A",
        )
        assert code == 0
        assert out.count("query holds:") == 2
        assert "query holds: yes" in out and "query holds: no" in out

    def test_explain_json(self, capsys):
        result = run_json(
            capsys, "entails", fixture_path("kb3"), "--method", "lex", "--explain", "T(Penguin) <= C"
        )
        assert [item["holds"] for item in result["explanation"]] == [True]

    def test_output_is_stable(self, capsys):
        argv = ("entails", fixture_path("kb2"), "--method", "lex", "--explain", "T(Penguin) <= C")
        first = run_json(capsys, *argv)
        second = run_json(capsys, *argv)
        first.pop("elapsed_ms")
        second.pop("elapsed_ms")
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


class TestBases:
    @pytest.mark.parametrize(
        "kb, method, count", [("kb2", "mp", 2), ("kb1", "mp", 1), ("kb3", "lex", 1), ("kb3", "mp", 2)]
    )
    def test_counts(self, capsys, kb, method, count):
        result = run_json(capsys, "bases", fixture_path(kb), "--method", method, "Penguin")
        assert len(result["bases"]) == count

    def test_kb1_base(self, capsys):
        result = run_json(capsys, "bases", fixture_path("kb1"), "Penguin")
        assert result["bases"] == [["T(Bird) <= HasNiceFeather", "T(Penguin) <= not Fly"]]
        assert result["stratified"] == [
            {"selection": [["T(Bird) <= HasNiceFeather"]], "forced": ["T(Penguin) <= not Fly"]}
        ]


class TestExitCodes:
    def test_check(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("kb4"))
        assert code == 0 and out.startswith("consistent:")

    def test_parse_error(self, capsys, write_kb):
        code, _, err = run(capsys, "check", write_kb("A <= ."))
        assert code == 2 and err.startswith("error:")

    def test_bad_query(self, capsys):
        code, _, _ = run(capsys, "entails", fixture_path("kb1"), "T(Bird) <=")
        assert code == 2

    def test_namespace_clash(self, capsys, write_kb):
        code, _, _ = run(capsys, "check", write_kb("r <= exists r.A."))
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", tmp_path / "absent.dl")
        assert code == 2 and "cannot read" in err

    def test_classical_rejects_typical_query(self, capsys):
        code, _, _ = run(
            capsys, "entails", fixture_path("kb1"), "--method", "classical", "T(Bird) <= Fly"
        )
        assert code == 2

    def test_inconsistent_abox(self, capsys, write_kb):
        path = write_kb("Penguin <= not Fly. Penguin(tweety). Fly(tweety).")
        for argv in (("check", path), ("rank", path, "Penguin")):
            code, _, _ = run(capsys, *argv)
            assert code == 3

    def test_resource_limit(self, capsys):
        code, _, err = run(capsys, "rank", fixture_path("kb1"), "Penguin", "--max-nodes", "1")
        assert code == 4 and "error:" in err

    def test_oracle_bounds(self, capsys):
        code, _, _ = run(
            capsys, "entails", fixture_path("kb2"), "--method", "oracle-s", "T(Penguin) <= C"
        )
        assert code == 5

    def test_oracle_rejects_roles(self, capsys, write_kb):
        path = write_kb("T(A) <= exists r.B.")
        code, _, _ = run(capsys, "entails", path, "--method", "oracle-rc", "T(A) <= B")
        assert code == 5

    def test_oracle_bounds_can_be_raised(self, capsys):
        result = run_json(
            capsys,
            "entails",
            fixture_path("kb2"),
            "--method",
            "oracle-s",
            "--max-atoms",
            "8",
            "--max-domain",
            "128",
            "T(Penguin) <= C",
        )
        assert result["entailed"] is True

    def test_nonpositive_max_nodes(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rank", str(fixture_path("kb1")), "Bird", "--max-nodes", "0"])
        assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "defeasible_alc.cli", "rank", str(fixture_path("kb1")), "Penguin", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rank"] == 1

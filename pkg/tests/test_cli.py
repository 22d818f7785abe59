from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hesselink.cli import main, parse_root_expr, rat, split_list
from hesselink.root_datum import build


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def fr(xs):
    return tuple(Fraction(x) for x in xs)


class TestStrata:
    def test_a1(self, capsys):
        rec = run_json(capsys, "strata", "--type", "A1")
        assert rec["schema_version"] == "1"
        rows = [r for r in rec["results"] if r["m"]]
        assert len(rows) == 1
        assert rows[0]["mu"] == ["1/2"] and rows[0]["lambda"] == ["1/1"] and rows[0]["m"] == 2

    def test_su21(self, capsys):
        rec = run_json(capsys, "strata", "--relative", "su21")
        assert sorted((r["m"], fr(r["mu"])) for r in rec["results"] if r["m"]) == [(1, (1,)), (2, (Fraction(1, 2),))]

    def test_c2_json(self, capsys):
        rec = run_json(capsys, "strata", "--type", "C2")
        rows = [r for r in rec["results"] if r["m"]]
        assert {fr(r["mu"]) for r in rows} == {fr(["3/2", "1/2"]), fr(["1/2", "1/2"]), fr(["1/2", "0"])}
        assert all(r["certificate"]["semistable"] for r in rows)
        (diag,) = rec["diagnostics"]
        assert diag["kind"] == "rejected_candidate"
        assert fr(diag["mu"]) == (1, 0)
        assert diag["certificate"]["semistable"] is False

    def test_human(self, capsys):
        code, out, _ = run(capsys, "strata", "--type", "C2")
        assert code == 0
        assert "(3/2, 1/2)" in out
        assert "rejected candidate (1, 0)" in out

    def test_lattice_flag(self, capsys):
        rec = run_json(capsys, "strata", "--type", "A1", "--lattice", "adjoint")
        assert [r["m"] for r in rec["results"] if r["m"]] == [1]

    def test_gram_file(self, capsys, tmp_path):
        g = tmp_path / "scales.txt"
        g.write_text("1 3\n")
        rec = run_json(capsys, "strata", "--type", "A1xA1", "--gram", str(g))
        assert len(rec["results"]) == 4

    def test_relative_file(self, capsys, tmp_path):
        f = tmp_path / "su21.txt"
        f.write_text("# SU(2,1)\nroot 1 mult 2\nroot 2 mult 1\nsimple 1\ngram 1\n")
        rec = run_json(capsys, "strata", "--relative", str(f))
        assert sorted(r["m"] for r in rec["results"]) == [0, 1, 2]


class TestOptimal:
    def test_examples(self, capsys):
        r = run_json(capsys, "optimal", "--type", "C2", "--support", "2a+b")["results"][0]
        assert (fr(r["mu"]), r["m"]) == (fr(["1/2", "0"]), 2)
        r = run_json(capsys, "optimal", "--type", "A1", "--support", "a")["results"][0]
        assert r["m"] == 2
        r = run_json(capsys, "optimal", "--type", "C2", "--support", "a,b")["results"][0]
        assert fr(r["mu"]) == fr(["3/2", "1/2"])
        assert sorted(r["active"]) == ["a", "b"]

    def test_raw_coordinates(self, capsys):
        r = run_json(capsys, "optimal", "--type", "C2", "--support", "[2,0]")["results"][0]
        assert fr(r["mu"]) == fr(["1/2", "0"])


class TestMuP:
    @pytest.mark.parametrize("levi,expected", [("b", ["1", "0"]), ("a", ["1/2", "1/2"]), ("a,b", ["0", "0"])])
    def test_c2(self, capsys, levi, expected):
        r = run_json(capsys, "mu-p", "--type", "C2", "--levi", levi)["results"][0]
        assert fr(r["mu_P"]) == fr(expected)


class TestInduce:
    def test_borel(self, capsys):
        r = run_json(capsys, "induce", "--type", "C2", "--levi", "", "--stratum", "trivial")["results"][0]
        assert fr(r["induced"]["mu"]) == fr(["3/2", "1/2"])

    def test_siegel(self, capsys):
        r = run_json(capsys, "induce", "--type", "C2", "--levi", "a")["results"][0]
        assert fr(r["induced"]["mu"]) == fr(["1/2", "1/2"])

    def test_flagged(self, capsys):
        r = run_json(capsys, "induce", "--type", "C2", "--levi", "b")["results"][0]
        assert r["flagged"] is True
        assert r["induced"] is None
        assert r["fallback"]["best_effort"] is True
        assert fr(r["fallback"]["label"]["mu"]) == fr(["1/2", "1/2"])

    def test_levi_stratum_index(self, capsys):
        r = run_json(capsys, "induce", "--type", "C2", "--levi", "a", "--stratum", "0")["results"][0]
        assert fr(r["induced"]["mu"]) == fr(["3/2", "1/2"])

    def test_su21(self, capsys):
        r = run_json(capsys, "induce", "--relative", "su21")["results"][0]
        assert r["induced"]["m"] == 1 and fr(r["induced"]["mu"]) == (1,)

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, "induce", "--type", "C2", "--levi", "a", "--stratum", "9")
        assert code == 2 and "out of range" in err


class TestDeterminismAndSchema:
    @pytest.mark.parametrize(
        "argv",
        [
            ("strata", "--type", "C2"),
            ("strata", "--relative", "su21"),
            ("induce", "--type", "C2", "--levi", "b", "--seed", "11"),
            ("optimal", "--type", "G2", "--support", "a,b"),
        ],
    )
    def test_byte_identical(self, capsys, argv):
        first = run(capsys, *argv, "--json")[1]
        second = run(capsys, *argv, "--json")[1]
        assert first == second

    def test_round_trip(self, capsys):
        rec = run_json(capsys, "strata", "--type", "A2")
        assert json.loads(json.dumps(rec)) == rec
        assert set(rec) == {"schema_version", "command", "inputs", "results", "diagnostics"}
        for r in rec["results"]:
            for x in r["mu"] + r["lambda"] + [r["q2"]]:
                assert "/" in x
                Fraction(x)


class TestExitCodes:
    def test_unsupported_type(self, capsys):
        code, _, err = run(capsys, "strata", "--type", "F4")
        assert code == 2 and "unsupported" in err

    def test_malformed_relative(self, capsys):
        assert run(capsys, "strata", "--relative", "nonsense")[0] == 2

    def test_missing_datum(self, capsys):
        assert run(capsys, "strata")[0] == 2

    def test_bad_support(self, capsys):
        assert run(capsys, "optimal", "--type", "C2", "--support", "2q")[0] == 2
        assert run(capsys, "optimal", "--type", "C2", "--support", "[1,2,3]")[0] == 2

    def test_infeasible_support(self, capsys):
        assert run(capsys, "optimal", "--type", "A1", "--support", "a,-a")[0] == 2

    def test_budget(self, capsys):
        code, _, err = run(capsys, "strata", "--type", "A3", "--budget", "3")
        assert code == 3 and "budget" in err

    def test_argparse(self):
        with pytest.raises(SystemExit) as exc:
            main(["nope"])
        assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hesselink", "mu-p", "--type", "C2", "--levi", "b", "--json"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(out.stdout)["results"][0]["mu_P"] == ["1/1", "0/1"]


def test_helpers():
    d = build("C2")
    assert parse_root_expr("2a+b", d) == fr(["2", "0"])
    assert parse_root_expr("-a", d) == fr(["-1", "1"])
    assert split_list("a,[1, 2],b") == ["a", "[1, 2]", "b"]
    assert rat(Fraction(3)) == "3/1"

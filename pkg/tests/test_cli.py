"""Command-line surface: records, schemas and exit codes."""

import json
import math

import pytest
from scipy import special

from besselk_cli.app import EXIT_ERROR, EXIT_FAILED_CHECK, EXIT_OK, main, parse_grid
from besselk_cli.utils.formatters import format_records


def _run(capsys, *argv):
    status = main(list(argv) + ["--quiet"])
    out = capsys.readouterr().out
    return status, out


def _records(capsys, *argv):
    status, out = _run(capsys, *argv)
    return status, json.loads(out)


class TestEval:
    def test_zeroth_order(self, capsys):
        status, records = _records(capsys, "eval", "--n", "0", "--x", "1")
        assert status == EXIT_OK
        assert records[0]["t_derivative"] == pytest.approx(0.5778636749, rel=1e-9)
        assert records[0]["k_derivative"] == pytest.approx(0.4610685044, rel=1e-9)

    def test_first_order(self, capsys):
        status, records = _records(capsys, "eval", "--n", "1", "--x", "1")
        record = records[0]
        assert status == EXIT_OK
        assert list(record) == ["x", "n", "t_derivative", "k_derivative", "error_estimate", "oracle", "rel_diff"]
        expected = float(special.kv(0.5, 1.0)) * math.exp(2.0) * float(special.exp1(2.0))
        assert record["k_derivative"] == pytest.approx(expected, rel=1e-11)
        assert record["rel_diff"] < 1e-7

    def test_second_order_oracle(self, capsys):
        status, records = _records(capsys, "eval", "--n", "2", "--x", "5")
        assert status == EXIT_OK
        assert records[0]["rel_diff"] < 1e-5
        assert records[0]["error_estimate"] >= 0.0

    def test_bad_order_is_an_error(self, capsys):
        status, _ = _run(capsys, "eval", "--n", "9", "--x", "1")
        assert status == EXIT_ERROR

    def test_quadrature_failure_exits_2(self, capsys, tmp_path):
        config = tmp_path / "capped.json"
        config.write_text(json.dumps({"quadrature": {"max_halvings": 2}}))
        _run(capsys, "eval", "--n", "2", "--x", "1")
        status, out = _run(capsys, "eval", "--n", "2", "--x", "1", "--config", str(config))
        assert status == EXIT_ERROR
        assert out == ""


class TestTable:
    def test_row_count_and_order(self, capsys):
        status, records = _records(capsys, "table", "--n-max", "2", "--x-grid", "0.5,1,2")
        assert status == EXIT_OK
        assert [(r["x"], r["n"]) for r in records] == [(x, n) for x in (0.5, 1.0, 2.0) for n in range(3)]

    def test_matches_eval_exactly(self, capsys):
        _, table = _records(capsys, "table", "--n-max", "1", "--x-grid", "1")
        _, evaluated = _records(capsys, "eval", "--n", "1", "--x", "1")
        row = table[1]
        for key in ("t_derivative", "k_derivative", "error_estimate"):
            assert row[key] == evaluated[0][key]

    def test_k_column_at_one(self, capsys):
        _, records = _records(capsys, "table", "--n-max", "0", "--x-grid", "1")
        assert records[0]["k_derivative"] == pytest.approx(0.4610685044, rel=1e-9)

    def test_csv_header(self, capsys):
        status, out = _run(capsys, "table", "--n-max", "1", "--x-grid", "1,2", "--format", "csv")
        lines = out.strip().splitlines()
        assert status == EXIT_OK
        assert lines[0] == "x,n,t_derivative,k_derivative,error_estimate"
        assert len(lines) == 5

    def test_threads_give_identical_output(self, capsys):
        _, single = _run(capsys, "table", "--n-max", "2", "--x-grid", "0.5,1,2", "--workers", "1")
        _, threaded = _run(capsys, "table", "--n-max", "2", "--x-grid", "0.5,1,2", "--workers", "3")
        assert single == threaded

    def test_invalid_grid(self):
        with pytest.raises(SystemExit) as info:
            main(["table", "--n-max", "1", "--x-grid", "2,1"])
        assert info.value.code == 2


class TestVerify:
    def test_kernels_suite(self, capsys):
        status, records = _records(capsys, "verify", "--suite", "kernels")
        assert status == EXIT_OK
        gamma = [r for r in records if r["check_id"] == "gamma_cancellation"]
        assert len(gamma) == 1 and gamma[0]["abs_diff"] < 1e-12
        assert list(records[0]) == ["check_id", "at", "lhs", "rhs", "abs_diff", "rel_diff", "tol", "pass"]

    def test_theorem2_suite(self, capsys):
        status, records = _records(capsys, "verify", "--suite", "theorem2")
        assert status == EXIT_OK
        checks = [r for r in records if r["check_id"] == "thm2_n1_equals_thm1"]
        assert checks and all(r["pass"] and r["tol"] == 1e-11 for r in checks)

    def test_zeta_suite(self, capsys):
        status, records = _records(capsys, "verify", "--suite", "zeta")
        assert status == EXIT_OK
        (check,) = [r for r in records if r["check_id"] == "h_identity_s2"]
        assert check["pass"] and check["tol"] == 1e-9
        for check_id in ("h_tail", "h_tail_vs_kv", "h_truncation"):
            checks = [r for r in records if r["check_id"] == check_id]
            assert len(checks) == 2 and all(r["pass"] for r in checks)

    def test_quadrature_suite_bounds(self, capsys):
        status, records = _records(capsys, "verify", "--suite", "quadrature")
        assert status == EXIT_OK
        honesty = [r for r in records if r["check_id"] == "u_error_estimate"]
        assert len(honesty) == 24 and all(r["lhs"] <= r["rhs"] for r in honesty)
        decreasing = [r for r in records if r["check_id"] == "u001_decreasing"]
        assert len(decreasing) == 5 and all(r["pass"] for r in decreasing)

    def test_kernels_suite_bessel_symmetries(self, capsys):
        _, records = _records(capsys, "verify", "--suite", "kernels")
        assert len([r for r in records if r["check_id"] == "bessel_k_even" and r["pass"]]) == 9
        assert len([r for r in records if r["check_id"] == "half_integer_ladder" and r["pass"]]) == 20

    def test_failed_check_exits_1(self, capsys, tmp_path):
        config = tmp_path / "strict.json"
        config.write_text(json.dumps({"verification": {"bessel_relation": -1.0}}))
        status, records = _records(capsys, "verify", "--suite", "kernels", "--config", str(config))
        assert status == EXIT_FAILED_CHECK
        assert not all(r["pass"] for r in records)


class TestAlpha:
    def test_zeroth_coefficient(self, capsys):
        status, records = _records(capsys, "alpha", "--n-max", "0", "--j-max", "60")
        assert status == EXIT_OK
        assert records[0]["rel_diff"] < 1e-8
        assert len(records[0]["terms"]) == 60

    def test_single_term_breakdown(self, capsys):
        _, records = _records(capsys, "alpha", "--j-max", "1")
        assert records[0]["terms"][0] == pytest.approx(float(special.kv(0.5, 2 * math.pi)), rel=1e-13)

    def test_csv_drops_terms(self, capsys):
        _, out = _run(capsys, "alpha", "--n-max", "1", "--j-max", "5", "--format", "csv")
        assert out.splitlines()[0] == "n,alpha,tail_estimate,fd_comparator,rel_diff"

    def test_order_limit(self, capsys):
        status, _ = _run(capsys, "alpha", "--n-max", "5")
        assert status == EXIT_ERROR


class TestFormatters:
    def test_digits(self):
        out = format_records([{"x": 1.0, "n": 0, "t_derivative": 1 / 3, "k_derivative": 0.0, "error_estimate": 0.0}],
                             "table", "csv", 17)
        assert "0.33333333333333331" in out

    def test_json_round_trip(self):
        value = 0.1 + 0.2
        out = format_records([{"n": 0, "alpha": value, "terms": [value]}], "alpha", "json")
        assert json.loads(out)[0]["alpha"] == value

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            format_records([], "table", "xml")


class TestGridParsing:
    def test_valid(self):
        assert parse_grid("0.5,1,2") == [0.5, 1.0, 2.0]

    @pytest.mark.parametrize("text", ["", "1,1", "-1,2", "a,b"])
    def test_invalid(self, text):
        with pytest.raises(Exception):
            parse_grid(text)

"""Command-line surface checks, driven through cli.main return codes."""

import csv
import io
import json

import pytest

from grossum import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_eval_text(capsys):
    code, out = run(capsys, "eval", "sum(k, 1, G, k)", "--G", "100")
    assert code == 0
    assert "value: 5050" in out


def test_eval_json_payload(capsys):
    code, out = run(
        capsys, "eval", "sum(k, 1, G, k)", "--G", "100", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "5050"
    assert payload["G"] == 100
    assert payload["precision"] == 64


def test_eval_with_parity(capsys):
    code, out = run(
        capsys,
        "eval", "(1 + (-1)^G)/2", "--G", "8", "--parity", "even",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["value"] == "1"


def test_eval_extra_variable_bindings(capsys):
    code, out = run(
        capsys,
        "eval", "x^2 + y", "--x", "3", "--y", "1/2", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "19/2"
    assert payload["bindings"] == {"x": "3", "y": "1/2"}


def test_eval_csv(capsys):
    code, out = run(
        capsys, "eval", "G^2", "--G", "9", "--format", "csv"
    )
    assert code == 0
    table = rows(out)
    assert table[0] == ["expr", "G", "precision", "value"]
    assert table[1] == ["G^2", "9", "64", "81"]


def test_exit_code_syntax_error(capsys):
    code, out = run(capsys, "eval", "2 +")
    assert code == 2


def test_exit_code_evaluation_error(capsys):
    code, out = run(capsys, "eval", "x + 1")
    assert code == 3


def test_exit_code_unknown_subcommand(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_exit_code_no_command(capsys):
    assert cli.main([]) == 2


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0


def test_dots_exit_codes(capsys):
    holds, _ = run(capsys, "dots", "G/(G + 1)", "1")
    assert holds == 0
    fails, out = run(capsys, "dots", "(-1)^G", "0")
    assert fails == 1
    assert "Fails" in out
    inconclusive, out = run(
        capsys,
        "dots", "(3 + (-1)^G)/sqrt(G)", "0",
        "--schedule", "256..1048576",
    )
    assert inconclusive == 4
    assert "Inconclusive" in out


def test_dots_short_schedule_json(capsys):
    code, out = run(
        capsys,
        "dots", "sum(k, 1, G, 1/2^k)", "1",
        "--schedule", "16..1024", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"outcome", "witness", "trace"}
    assert payload["outcome"] == "Holds"


def test_global_flags_after_subcommand(capsys):
    before = run(capsys, "--format", "json", "eval", "G", "--G", "5")
    after = run(capsys, "eval", "G", "--G", "5", "--format", "json")
    assert before == after
    assert before[0] == 0


def test_transfer_text_and_json(capsys):
    code, out = run(
        capsys, "transfer", "n^2 > 100*n", "--window", "1..1000"
    )
    assert code == 0
    assert "least_threshold: 100" in out
    code, out = run(
        capsys,
        "transfer", "2^n > n", "--window", "1..1000", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"least_threshold": 0, "counterexamples": []}


def test_transfer_bad_window(capsys):
    code, _ = run(capsys, "transfer", "n > 0", "--window", "17")
    assert code == 2


def test_limit_json(capsys):
    code, out = run(
        capsys,
        "limit", "(1 + 1/G)^G", "--schedule", "4096..16777216",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "FiniteLimit"
    assert payload["value"].startswith("2.718")


def test_sum_table_lists_identities(capsys):
    code, out = run(capsys, "sum")
    assert code == 0
    assert "sum(k, 1, G, k)" in out
    code, out = run(capsys, "sum", "--G", "10", "--format", "csv")
    assert code == 0
    table = rows(out)
    assert table[0] == ["name", "sum_form", "closed_form", "lhs_at_G", "rhs_at_G"]
    body = {r[0]: r for r in table[1:]}
    assert body["triangular"][3] == body["triangular"][4] == "55"


def test_set_text_json_csv(capsys):
    code, out = run(capsys, "set", "squares", "--G", "5")
    assert code == 0
    assert "members at G=5: 1 4 9 16 25" in out
    code, out = run(capsys, "set", "evens", "--G", "4", "--format", "json")
    payload = json.loads(out)
    assert payload["members"] == [2, 4, 6, 8]
    assert payload["size"] == "G"
    code, _ = run(capsys, "set", "evens", "--format", "csv")
    assert code == 2


def test_set_evens_inside_respects_parity(capsys):
    code, out = run(
        capsys, "set", "evens-inside", "--G", "10", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["members"] == [2, 4, 6, 8, 10]
    code, _ = run(capsys, "set", "evens-inside", "--G", "9")
    assert code == 3


def test_zeta_csv_and_exactness(capsys):
    code, out = run(
        capsys, "zeta", "--s", "2", "--M", "2", "--cap", "2",
        "--format", "csv",
    )
    assert code == 0
    table = rows(out)
    assert table[0] == ["M", "cap", "s", "value", "gap_to_reference"]
    assert table[1][3] == "637/432"
    code, out = run(capsys, "zeta", "--s", "2", "--M", "4", "--format", "csv")
    table = rows(out)
    assert table[1][1] == ""
    assert table[1][4] == ""


def test_zeta_pole_is_refused(capsys):
    code, _ = run(capsys, "zeta", "--s", "0", "--M", "2")
    assert code == 3


def test_integrate_exact(capsys):
    code, out = run(capsys, "integrate", "1", "--N", "10")
    assert code == 0
    assert "201/10" in out
    code, out = run(
        capsys, "integrate", "x^3", "--N", "6", "--format", "json"
    )
    assert json.loads(out)["value"] == "0"


def test_pi_csv(capsys):
    code, out = run(
        capsys, "pi", "--steps", "4", "--formula", "root", "--format", "csv"
    )
    assert code == 0
    table = rows(out)
    assert table[0] == ["K", "value", "abs_error_vs_reference"]
    assert len(table) == 5
    assert table[1][1].startswith("2")


def test_seed_doc(capsys):
    code, out = run(capsys, "--seed-doc")
    assert code == 0
    assert "grossum dots" in out


def test_determinism(capsys):
    a = run(capsys, "zeta", "--s", "2", "--M", "50", "--format", "csv")
    b = run(capsys, "zeta", "--s", "2", "--M", "50", "--format", "csv")
    assert a == b
    c = run(capsys, "dots", "G*sin(1/G)", "1", "--schedule", "256..65536")
    d = run(capsys, "dots", "G*sin(1/G)", "1", "--schedule", "256..65536")
    assert c == d


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out = run(
        capsys,
        "eval", "G", "--G", "3", "--format", "json", "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["value"] == "3"


def test_precision_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("GROSSUM_PRECISION", "32")
    code, out = run(capsys, "eval", "exp(1)", "--format", "json")
    assert code == 0
    assert json.loads(out)["precision"] == 32
    code, out = run(
        capsys, "eval", "exp(1)", "--precision", "20", "--format", "json"
    )
    assert json.loads(out)["precision"] == 20


def test_precision_floor_rejected(capsys):
    code, _ = run(capsys, "eval", "1", "--precision", "8")
    assert code == 2


def test_schedule_needs_four_points(capsys):
    code, _ = run(capsys, "dots", "1/G", "0", "--schedule", "16..64")
    assert code == 2

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sl2hahn.cli import (
    TableRow,
    main,
    table_from_csv,
    table_from_json,
    table_to_csv,
    table_to_json,
)
from sl2hahn.report import CheckRecord, Report, from_csv, from_json, to_csv, to_json


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_hahn_lists_25_checks(capsys):
    code, out = run(capsys, "verify", "hahn", "--m-max", "4", "--n-max", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["checks"]) == 25
    assert {c["id"] for c in doc["checks"]} == {"hahn.relations"}
    assert doc["summary"] == {"total": 25, "passed": 25, "failed": 0}
    assert set(doc) == {"version", "config", "checks", "summary"}
    assert set(doc["checks"][0]) == {"id", "params", "expected", "actual", "pass", "millis"}


def test_verify_johnson_has_dim_record_per_pair(capsys):
    code, out = run(capsys, "verify", "johnson", "--d-max", "6", "--format", "json")
    assert code == 0
    dims = {(c["params"]["D"], c["params"]["k"]) for c in json.loads(out)["checks"] if c["id"] == "johnson.dim"}
    assert dims == {(D, k) for D in range(2, 7) for k in range(1, D)}


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "all", "--d-max", "-1"),
        ("verify", "sl2", "--m-max", "-2"),
        ("verify", "nonsense"),
        ("table", "4", "2"),
        ("table", "1", "3"),
        ("decompose", "2", "2", "--l", "5"),
        ("decompose", "-1", "2"),
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(list(argv)) == 2
    capsys.readouterr()


def test_decompose_1_1(capsys):
    code, out = run(capsys, "decompose", "1", "1")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("l=")]
    assert len(lines) == 3
    assert [l.split("dim=")[1].split()[0] for l in lines] == ["1", "2", "1"]


def test_decompose_2_0_dims_all_one(capsys):
    code, out = run(capsys, "decompose", "2", "0", "--format", "json")
    assert code == 0
    checks = json.loads(out)["checks"]
    assert len(checks) == 3
    # expected is rendered as (weight,(a,b,d),dim,orbit)
    assert all(c["pass"] for c in checks)
    assert all(",0)," in c["expected"] for c in checks)


def test_decompose_exact_rationals(capsys):
    code, out = run(capsys, "decompose", "3", "2", "--l", "2")
    assert code == 0
    assert "(a,b,d)=(1/2,-7/2,2)" in out
    assert "dim=3" in out


def test_table_csv(capsys):
    code, out = run(capsys, "table", "2", "4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "D,k,case,dim_formula,blocks,dim_bruteforce,agree"
    rows = table_from_csv(out)
    assert len(rows) == 6
    assert all(r.agree for r in rows)
    row = next(r for r in rows if (r.D, r.k) == (4, 2))
    assert row.dim_formula == 11
    assert "4,2,iii,11,3;1;1,11,true" in lines


def test_table_skips_bruteforce_over_cap(capsys):
    code, out = run(capsys, "table", "6", "6", "--format", "csv", "--cap", "10")
    assert code == 0
    rows = table_from_csv(out)
    assert [r.dim_bruteforce is None for r in rows] == [False, True, True, True, False]
    assert rows[0].dim_bruteforce == rows[0].dim_formula


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert main(["verify", "hahn", "--m-max", "1", "--n-max", "1", "--format", "json", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert from_json(path.read_text()).passed


def test_json_deterministic(capsys):
    argv = ["verify", "sl2", "--m-max", "2", "--n-max", "2", "--format", "json", "--no-timing"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_records_sorted(capsys):
    _, out = run(capsys, "verify", "sl2", "--m-max", "2", "--n-max", "2", "--format", "json")
    report = from_json(out)
    assert report.checks == sorted(report.checks, key=CheckRecord.sort_key)


def test_failed_check_exits_1(monkeypatch, capsys):
    import sl2hahn.cli as cli

    bad = CheckRecord("fake", (("n", 0),), "1", "2", False)
    monkeypatch.setattr(cli, "run_suite", lambda name, config: [bad])
    assert main(["verify", "sl2"]) == 1
    assert "FAIL fake" in capsys.readouterr().out


def test_report_never_contains_floats(capsys):
    _, out = run(capsys, "verify", "decomp", "--m-max", "1", "--n-max", "1", "--d-max", "3", "--format", "json")

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float {x} in report")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))


# --- round trips -----------------------------------------------------------

# report strings are printable; control characters never occur in them
text = st.text(st.characters(blacklist_categories=("Cs", "Cc")), max_size=12)
param_values = st.one_of(st.integers(-50, 50), st.from_regex(r"[a-z{},]{1,6}", fullmatch=True))
records = st.builds(
    CheckRecord,
    st.from_regex(r"[a-z]{1,8}\.[a-z_]{1,8}", fullmatch=True),
    st.dictionaries(st.from_regex(r"[a-zA-Z_]{1,5}", fullmatch=True), param_values, max_size=3).map(
        lambda d: tuple(sorted(d.items()))
    ),
    text,
    text,
    st.booleans(),
    st.integers(0, 10 ** 6),
)


@given(st.lists(records, max_size=6))
def test_json_round_trip(checks):
    r = Report({"command": "verify", "m_max": 3}, checks)
    assert from_json(to_json(r)) == r


@given(st.lists(records, max_size=6))
def test_csv_round_trip(checks):
    r = Report({}, checks)
    assert from_csv(to_csv(r)) == r


rows = st.builds(
    TableRow,
    st.integers(2, 40),
    st.integers(1, 39),
    st.sampled_from(["i", "ii", "iii", "iv", "v"]),
    st.integers(0, 10 ** 5),
    st.lists(st.integers(1, 30), min_size=1, max_size=6).map(lambda b: tuple(sorted(b, reverse=True))),
    st.one_of(st.none(), st.integers(0, 10 ** 5)),
    st.booleans(),
)


@given(st.lists(rows, max_size=5))
def test_table_round_trip(table):
    assert table_from_csv(table_to_csv(table)) == table
    assert table_from_json(table_to_json(table, {})) == table

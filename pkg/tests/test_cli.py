import json

import pytest

from surfcensus.cli import SCHEMA, _exit_for, main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *args):
    code, out, err = run(capsys, *args, "--format", "json")
    return code, json.loads(out), err


def test_count_family_table(capsys):
    code, out, _ = run(capsys, "count", "--family", "quintic", "--p", "11")
    assert code == 0
    assert "total: 144" in out
    assert "line_count: 0" in out


def test_count_json_schema(capsys):
    code, doc, _ = run_json(capsys, "count", "--family", "half-fermat",
                            "--p", "11")
    assert code == 0
    assert doc["schema"] == SCHEMA
    assert doc["command"] == "count"
    r = doc["results"]
    assert r["total"] == 405
    assert r["on_lines"] == 405
    assert r["off_lines"] == 0
    assert r["x_total"] == 405
    assert r["line_count"] == 75
    assert "census_s" in doc["timings"]


def test_count_literal_form(capsys):
    code, doc, _ = run_json(capsys, "count", "--form", "x0^3", "--p", "5")
    assert code == 0
    assert doc["results"]["total"] == 31


def test_count_degree_guard(capsys):
    code, _, err = run(capsys, "count", "--form",
                       "x0^5 + x1^5 + x2^5 + x3^5", "--p", "5")
    assert code == 2
    assert "error:" in err


def test_lines_pivot_classes(capsys):
    code, doc, _ = run_json(capsys, "lines", "--family", "half-fermat",
                            "--p", "13")
    assert code == 0
    r = doc["results"]
    assert r["m"] == 108
    assert r["by_pivot_class"] == {"0,1": 72, "0,2": 36}
    assert r["ordered_meeting_pairs"] == 108 * 2 * (13 - 2)
    assert len(r["lines"]) == 108


def test_bounds_parametric(capsys):
    code, doc, _ = run_json(capsys, "bounds", "--p", "11", "--d", "5",
                            "--m", "75")
    assert code == 0
    b = doc["results"]["bounds"]
    assert b["triple"]["value"] == {"fraction": "2425/2", "floor": 1212}
    assert b["refined"]["value"]["floor"] == 1600
    assert b["deligne"]["value"]["floor"] \
        == 11 * 11 + 1 + (125 - 100 + 30 - 2) * 11
    # no count or evidence supplied: nothing holds, nothing applies
    assert b["triple"]["holds"] is None
    assert b["triple"]["applicable"] is False


def test_bounds_from_form(capsys):
    code, doc, _ = run_json(capsys, "bounds", "--family", "half-fermat",
                            "--p", "7")
    assert code == 0
    r = doc["results"]
    assert r["actual_count"] == 99
    assert r["m"] == 27


def test_verify_half_fermat_passes(capsys):
    code, out, _ = run(capsys, "verify", "--family", "half-fermat",
                       "--p", "7")
    assert code == 0
    assert "failed: 0" in out
    assert "[PASS] count matches closed form: measured 99, expected 99" in out


def test_verify_fermat_passes(capsys):
    code, doc, _ = run_json(capsys, "verify", "--family", "fermat",
                            "--p", "13", "--d", "3")
    assert code == 0
    names = {c["check"]: c["status"] for c in doc["results"]["checks"]}
    assert names["line count is 3d^2"] == "pass"
    assert names["lines match expected construction"] == "pass"
    assert names["transversality witness on every line"] == "pass"
    assert all(s in ("pass", "skip") for s in names.values())


def test_verify_requires_family(capsys):
    code, _, err = run(capsys, "verify", "--p", "7")
    assert code == 2
    assert "error:" in err


def test_verify_unknown_family(capsys):
    code, _, err = run(capsys, "verify", "--family", "cubic", "--p", "7")
    assert code == 2


def test_cyclo_pinned(capsys):
    code, doc, _ = run_json(capsys, "cyclo", "--d", "5", "--k", "5")
    assert code == 0
    r = doc["results"]
    assert r["exceptional_primes"] == [11, 41, 61]
    assert r["norm_bound"] == 625
    norms_11 = {w["norm"] for w in r["witnesses"]["11"]}
    assert norms_11 == {11, 55}
    assert "41" in r["witnesses"] and "61" in r["witnesses"]
    assert r["zero_sums"]["11"]  # nonempty listing for each prime


def test_cyclo_guards(capsys):
    code, _, err = run(capsys, "cyclo", "--d", "11", "--k", "3")
    assert code == 2  # phi(11) = 10 is past the desk-scale guard
    code, _, err = run(capsys, "cyclo", "--d", "5", "--k", "8")
    assert code == 2


def test_scan_septic(capsys):
    code, doc, _ = run_json(capsys, "scan-septic", "--p", "120")
    assert code == 0
    assert doc["results"]["hits"] == {
        "29": True, "43": False, "71": False, "113": False}
    assert doc["results"]["primes_with_hit"] == [29]


def test_xscheme_match(capsys):
    code, doc, _ = run_json(capsys, "xscheme", "--family", "half-fermat",
                            "--p", "7")
    assert code == 0
    r = doc["results"]
    assert r["surface_total"] == 99
    assert r["intersection_total"] == 99
    assert r["totals_match"] is True
    assert r["m"] == 27


def test_form_file_with_comments(tmp_path, capsys):
    path = tmp_path / "surface.txt"
    path.write_text(
        "# degree five diagonal with sign split\n"
        "x0^5 + x1^5\n"
        "  - x2^5 - x3^5  # tail\n")
    code, doc, _ = run_json(capsys, "count", "--form-file", str(path),
                            "--p", "11")
    assert code == 0
    assert doc["results"]["total"] == 405


def test_form_sources_conflict(capsys):
    code, _, err = run(capsys, "count", "--form", "x0^3", "--family",
                       "fermat", "--p", "7", "--d", "3")
    assert code == 2


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["count", "--family", "quintic", "--p", "11",
                 "--format", "json", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["results"]["total"] == 144


def test_missing_required_flag(capsys):
    code, _, err = run(capsys, "count", "--form", "x0^3")
    assert code == 2


def test_bad_form_text(capsys):
    code, _, err = run(capsys, "count", "--form", "x0^2 + x1", "--p", "7")
    assert code == 2
    assert "error:" in err


def test_no_command_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_exit_for_unit():
    assert _exit_for([{"status": "pass"}, {"status": "skip"}]) == 0
    assert _exit_for([{"status": "pass"}, {"status": "fail"}]) == 1
    assert _exit_for([]) == 0


def test_threads_validation(capsys):
    code, _, err = run(capsys, "count", "--family", "quintic", "--p", "11",
                       "--threads", "0")
    assert code == 2


def test_verify_cross_power(capsys):
    code, doc, _ = run_json(capsys, "verify", "--family", "cross-power",
                            "--p", "13", "--d", "2")
    assert code == 0
    r = doc["results"]
    assert r["field_degree"] == 2
    assert r["omega"] == [3, 0]
    names = {c["check"]: c["status"] for c in r["checks"]}
    assert names["parametric line lies on surface"] == "pass"

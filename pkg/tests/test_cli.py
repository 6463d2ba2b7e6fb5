import json

import pytest

from liestoch.cli import EXIT_BUDGET, EXIT_CHECK, EXIT_CONFIG, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _strip_time(obj):
    if isinstance(obj, dict):
        return {k: _strip_time(v) for k, v in obj.items() if k != "timestamp"}
    if isinstance(obj, list):
        return [_strip_time(v) for v in obj]
    return obj


def test_exact_moment_symbolic_unitary(capsys):
    code, out, _ = run(capsys, "exact-moment", "--ensemble", "U", "--n", "5", "--symbolic")
    assert code == EXIT_OK
    cf = json.loads(out)["closed_form"]
    assert cf["factored"] == "34 / ((N+1)*(N+2)*(N+3)*(N+4))"


def test_exact_moment_orthogonal_value(capsys):
    code, out, _ = run(capsys, "exact-moment", "--ensemble", "O", "--n", "2", "--dim", "6")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == {"num": "1", "den": "4"}


def test_exact_moment_shifted_bdi(capsys):
    code, out, _ = run(capsys, "exact-moment", "--ensemble", "BDI", "--n", "1", "--a", "3", "--b", "1",
                       "--shifted", "--format", "text")
    assert code == EXIT_OK
    assert out.strip() == "1/4"


def test_tables_match_and_mismatch(capsys):
    code, out, _ = run(capsys, "tables", "--family", "FU", "--n", "4")
    assert code == EXIT_OK
    assert json.loads(out)["reference"] == "match"
    code, out, err = run(capsys, "tables", "--family", "FAII", "--n", "3")
    assert code == EXIT_CHECK
    assert json.loads(out)["reference"] == "mismatch"
    assert "FAII_3" in err


def test_tables_budget_refusal(capsys):
    code, _, err = run(capsys, "tables", "--family", "GO", "--n", "4", "--budget", "1000")
    assert code == EXIT_BUDGET
    assert "GO" in err


def test_config_errors(capsys):
    assert run(capsys, "exact-moment", "--ensemble", "S", "--n", "2", "--dim", "5")[0] == EXIT_CONFIG
    assert run(capsys, "sample", "--ensemble", "Q", "--dim", "4")[0] == EXIT_CONFIG
    assert run(capsys, "sample", "--ensemble", "AIII", "--dim", "4")[0] == EXIT_CONFIG
    assert run(capsys, "verify", "--criteria", "9")[0] == EXIT_CONFIG


def test_asymptotics_unitary_singular(capsys):
    code, out, _ = run(capsys, "asymptotics", "--ensemble", "U", "--quantity", "singular", "--n", "2")
    assert code == EXIT_OK
    coeffs = json.loads(out)["coefficients"]
    assert coeffs[3] == {"j": 4, "num": "2", "den": "1"}
    assert all(c["num"] == "0" for c in coeffs[:3])


def test_weingarten_dump(capsys):
    code, out, _ = run(capsys, "weingarten", "--family", "U", "--n", "3", "--dim", "4")
    assert code == EXIT_OK
    vals = {tuple(e["partition"]): (e["value_num"], e["value_den"]) for e in json.loads(out)["entries"]}
    assert vals[(1, 1, 1)] == ("7", "360")
    assert vals[(2, 1)] == ("-1", "180")
    assert vals[(3,)] == ("1", "360")
    code, out, _ = run(capsys, "weingarten", "--family", "Sp", "--n", "2", "--dim", "6")
    assert code == EXIT_OK
    assert all("representative_sign" in e for e in json.loads(out)["entries"])


def test_sample_unitary_dimension_one(capsys):
    code, out, _ = run(capsys, "sample", "--ensemble", "U", "--dim", "1", "--count", "3")
    assert code == EXIT_OK
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["type"] == "run"
    spectra = [x for x in lines if x["type"] == "spectrum"]
    assert len(spectra) == 3 and all(s["eigenvalues"] == [] for s in spectra)


def test_sample_chiral_spectra_are_real(capsys):
    code, out, _ = run(capsys, "sample", "--ensemble", "AIII", "--dim", "20", "--a", "15", "--count", "2")
    assert code == EXIT_OK
    header, *rest = [json.loads(x) for x in out.splitlines()]
    assert header["ensemble"]["alpha"] == "1/2"
    for s in rest:
        assert all(isinstance(v, float) for v in s["eigenvalues"])


def test_sample_outputs_and_reproducibility(tmp_path, capsys):
    runs = []
    for name in ("one", "two"):
        out = tmp_path / f"{name}.jsonl"
        code = main(["sample", "--ensemble", "O", "--dim", "12", "--count", "4", "--seed", "5",
                     "--format", "csv", "--out", str(out)])
        assert code == EXIT_OK
        runs.append(out)
    capsys.readouterr()
    first, second = ([json.loads(x) for x in p.read_text().splitlines()] for p in runs)
    assert first[1:] == second[1:]
    assert _strip_time(first[0])["config"].pop("out") != _strip_time(second[0])["config"].pop("out")
    summary = json.loads((tmp_path / "one.jsonl.summary.json").read_text())
    assert "quarter_circle" in summary["fits"]
    assert (tmp_path / "one.jsonl.hist.csv").read_text().startswith("bin_left,bin_right,density")


def test_identical_config_gives_identical_json(capsys):
    argv = ["exact-moment", "--ensemble", "AI", "--n", "2", "--symbolic"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert _strip_time(json.loads(a)) == _strip_time(json.loads(b))


def test_verify_subset(tmp_path, capsys):
    report = tmp_path / "verify.json"
    code, out, _ = run(capsys, "verify", "--criteria", "7,4", "--out", str(report))
    assert code == EXIT_OK
    assert out.count("PASS") == 2
    data = json.loads(report.read_text())
    assert [c["criterion"] for c in data["criteria"]] == [7, 4]


def test_verify_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "--criteria", "1")
    assert code == EXIT_CHECK
    assert "FAII" in out


@pytest.mark.parametrize("argv", [["--help"], ["sample", "--help"]])
def test_help(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0

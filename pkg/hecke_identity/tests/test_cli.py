import json

import pytest

from hecke_identity.cli import main
from hecke_identity.config import load_config
from hecke_identity.storage.report_store import ReportStore


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--q", "23", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report['y_diff'] == 3
    assert report['h_forms'] == 3
    assert report['verdict'] is True


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--q", "7")
    assert code == 0
    assert out.splitlines()[0].split()[0] == "q"


@pytest.mark.parametrize("q, message", [
    ("13", "3 (mod 4)"),
    ("3", "treated individually"),
    ("21", "not prime"),
])
def test_usage_errors(capsys, q, message):
    code, out, err = run(capsys, "verify", "--q", q)
    assert code == 2
    assert out == ""
    assert message in err


def test_missing_arguments(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "--q", "7", "--format", "xml")[0] == 2


def test_sweep_summary(capsys):
    code, out, err = run(capsys, "sweep", "--min", "7", "--max", "100", "--workers", "2", "--quiet")
    assert code == 0
    assert "12 primes verified, 0 failures" in err
    assert len(out.splitlines()) == 2 + 12


def test_sweep_bad_range(capsys):
    code, _, err = run(capsys, "sweep", "--min", "100", "--max", "7")
    assert code == 2
    assert "--min" in err


def test_sweep_json_is_deterministic(capsys):
    outputs = []
    for workers in ("1", "3"):
        code, out, _ = run(capsys, "sweep", "--min", "7", "--max", "120", "--workers", workers, "--format", "json", "--quiet")
        assert code == 0
        outputs.append([{k: v for k, v in r.items() if k != 'elapsed'} for r in json.loads(out)])
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize("command", ["table", "classes", "cusps", "ptable"])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_exports(capsys, command, fmt, restore_ceiling):
    code, out, _ = run(capsys, command, "--q", "7", "--format", fmt, "--quiet")
    assert code == 0
    assert out
    if fmt == "json":
        json.loads(out)


def test_cusps_json(capsys):
    code, out, _ = run(capsys, "cusps", "--q", "7", "--format", "json")
    assert code == 0
    cusps = json.loads(out)
    assert len(cusps) == 6
    assert sorted(c['kappa'] for c in cusps if c['width'] == 1) == ["1/7", "2/7", "4/7"]


def test_numeric_table(capsys, restore_ceiling):
    code, out, _ = run(capsys, "table", "--q", "11", "--exact-ceiling", "100", "--format", "json", "--quiet")
    assert code == 0
    assert json.loads(out)['mode'] == "numeric"


def test_numeric_ptable(capsys, restore_ceiling):
    code, out, _ = run(capsys, "ptable", "--q", "11", "--exact-ceiling", "100", "--format", "json", "--quiet")
    assert code == 0
    records = json.loads(out)
    assert len(records) == 8
    assert all(record['matches_closed_form'] for record in records)


def test_output_file(capsys, tmp_path):
    target = tmp_path / "reports" / "q11.json"
    code, out, _ = run(capsys, "verify", "--q", "11", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())['y_diff'] == 1


def test_store(capsys, tmp_path):
    code, _, _ = run(capsys, "sweep", "--min", "7", "--max", "40", "--workers", "1", "--store", str(tmp_path / "lmdb"), "--quiet")
    assert code == 0
    with ReportStore(tmp_path / "lmdb", readonly=True) as store:
        assert [r['q'] for r in store.iter_reports()] == [7, 11, 19, 23, 31]


def test_create_and_use_config(capsys, tmp_path, restore_ceiling):
    path = tmp_path / "hecke.yaml"
    assert run(capsys, "--create-config", str(path))[0] == 0
    assert load_config(path).exact_ceiling == 10**6

    path.write_text("arithmetic:\n  exact_ceiling: 100\n")
    code, out, _ = run(capsys, "table", "--q", "11", "--config", str(path), "--format", "json", "--quiet")
    assert code == 0
    assert json.loads(out)['mode'] == "numeric"


def test_numeric_table_tolerance(capsys, tmp_path, restore_ceiling):
    path = tmp_path / "strict.yaml"
    path.write_text("arithmetic:\n  exact_ceiling: 100\n  numeric_tolerance: 1.0e-300\n")
    code, out, _ = run(capsys, "table", "--q", "11", "--config", str(path), "--format", "json", "--quiet")
    assert code == 1
    assert json.loads(out)['mode'] == "numeric"

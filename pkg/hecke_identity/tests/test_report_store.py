import pytest

from hecke_identity.storage.report_store import ReportStore, report_key
from hecke_identity.verification.hecke import sweep_verify, verify_hecke_identity


@pytest.fixture
def reports():
    return sweep_verify(7, 60)


def test_keys_sort_numerically():
    assert report_key(7) < report_key(11) < report_key(1999)
    assert report_key(7) == b"00000007"


def test_write_and_read_back(tmp_path, reports):
    with ReportStore(tmp_path / "store") as store:
        assert store.write_reports(reports, 7, 60) == len(reports)

    with ReportStore(tmp_path / "store", readonly=True) as store:
        assert store.count() == len(reports)
        assert [record['q'] for record in store.iter_reports()] == [r.q for r in reports]

        record = store.get(23)
        assert record['y_diff'] == 3
        assert record['kappa_sum'] == "4/1"
        assert store.get(13) is None

        info = store.sweep_info()
        assert info['q_min'] == 7 and info['q_max'] == 60
        assert info['total_primes'] == len(reports)
        assert info['failures'] == 0


def test_failed_reports_counted(tmp_path):
    reports = [verify_hecke_identity(7), verify_hecke_identity(13)]
    with ReportStore(tmp_path / "store") as store:
        store.write_reports(reports, 7, 13)
        assert store.sweep_info()['failures'] == 1
        assert store.get(13)['error'].startswith("UnsupportedPrime")


def test_closed_store_raises(tmp_path):
    store = ReportStore(tmp_path / "store")
    with pytest.raises(RuntimeError):
        store.get(7)


def test_missing_readonly_store(tmp_path):
    with pytest.raises(FileNotFoundError):
        ReportStore(tmp_path / "absent", readonly=True).open()

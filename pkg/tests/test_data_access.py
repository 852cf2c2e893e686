# tests/test_data_access.py
import logging

import pytest

from core import data_access
from core.lattice_search import SearchLimits


def test_db_path_follows_environment(isolated_db):
    assert data_access.get_db_path() == isolated_db
    data_access.init_db()
    assert isolated_db.exists()


def test_defaults_without_rows():
    assert data_access.get_setting("diagonalization_box") == "6"
    assert data_access.get_setting("missing", "x") == "x"
    assert data_access.get_all_settings() == data_access.DEFAULT_SETTINGS


def test_set_and_get():
    data_access.set_setting("trigonal_search_box", 7)
    assert data_access.get_setting("trigonal_search_box") == "7"
    assert data_access.get_all_settings()["trigonal_search_box"] == "7"
    with pytest.raises(KeyError):
        data_access.set_setting("colour", "blue")


def test_load_search_limits():
    assert data_access.load_search_limits() == SearchLimits()
    data_access.set_setting("max_search_vectors", "1000")
    limits = data_access.load_search_limits(box=3)
    assert limits.diagonalization_box == 3
    assert limits.max_search_vectors == 1000


def test_bad_integer_falls_back(caplog):
    data_access.set_setting("diagonalization_box", "abc")
    with caplog.at_level(logging.WARNING):
        assert data_access.load_search_limits().diagonalization_box == 6
    assert "not an integer" in caplog.text


def test_history_switch():
    assert data_access.history_enabled()
    data_access.set_setting("record_history", "no")
    assert not data_access.history_enabled()


def test_record_and_read_history():
    data_access.record_decision("criterion", {"schema": "nslat/1"}, {"admits": True})
    data_access.record_decision("dolgachev", {"multiplicities": [2, 3]}, {"lambda": 1})
    df = data_access.get_history(limit=5)
    assert list(df["command"]) == ["dolgachev", "criterion"]
    assert df.loc[1, "input_digest"] == data_access.input_digest({"schema": "nslat/1"})
    assert len(data_access.get_history(limit=1)) == 1


def test_search_limits_without_database(tmp_path, monkeypatch, caplog):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    monkeypatch.setenv("NSLAT_DB", str(blocker / "nslat.sqlite"))
    with caplog.at_level(logging.WARNING, logger="core.data_access"):
        assert data_access.load_search_limits() == SearchLimits()
        assert data_access.load_search_limits(box=9) == SearchLimits(diagonalization_box=9)
    assert "default search limits" in caplog.text
    with pytest.raises(OSError):
        data_access.get_setting("diagonalization_box")

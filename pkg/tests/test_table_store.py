import pytest

from table_io import table_doc
from table_store import (
    DB_NAME,
    default_db_path,
    ensure_db,
    list_tables,
    load_table,
    save_table,
    wipe,
)


@pytest.fixture
def con(data_dir):
    c = ensure_db()
    yield c
    c.close()


def test_default_path_follows_data_dir(data_dir):
    assert default_db_path() == data_dir / DB_NAME


def test_ensure_db_is_idempotent(data_dir):
    ensure_db().close()
    c = ensure_db()
    try:
        count = c.execute("SELECT COUNT(*) FROM schema_migrations").fetchone()[0]
    finally:
        c.close()
    assert count == 1
    assert (data_dir / DB_NAME).exists()


def test_explicit_path(tmp_path):
    c = ensure_db(tmp_path / "nested" / "t.db")
    try:
        save_table(c, table_doc("s2", 2))
        assert len(list_tables(c)) == 1
    finally:
        c.close()


def test_load_cuts_larger_table(con):
    save_table(con, table_doc("s2", 6))
    doc = load_table(con, "s2", 4)
    assert doc == table_doc("s2", 4)


def test_load_eulerian_prefix(con):
    save_table(con, table_doc("eulerian", 6))
    assert load_table(con, "eulerian", 3) == table_doc("eulerian", 3)


def test_load_picks_smallest_covering(con):
    save_table(con, table_doc("sf2", 8))
    save_table(con, table_doc("sf2", 5))
    assert load_table(con, "sf2", 5) == table_doc("sf2", 5)
    assert load_table(con, "sf2", 9) is None


def test_missing_kind(con):
    assert load_table(con, "bell", 2) is None


def test_replace_same_key(con):
    save_table(con, table_doc("s1", 3))
    save_table(con, table_doc("s1", 3))
    assert [(t["kind"], t["max_n"]) for t in list_tables(con)] == [("s1", 3)]


def test_evaluated_docs_are_not_cached(con):
    with pytest.raises(ValueError):
        save_table(con, table_doc("s2", 3, q=1))


def test_wipe(con):
    save_table(con, table_doc("s2", 3))
    save_table(con, table_doc("bell", 3))
    assert wipe(con) == 2
    assert list_tables(con) == []

"""SQLite cache of symbolic table documents, keyed by (kind, max_n)."""

from __future__ import annotations

import json
import sqlite3
from pathlib import Path
from typing import Any

from config import get_data_dir, log_event

DB_NAME = "tables.db"
MIGRATION_NAME_INIT = "0001_init"


def default_db_path() -> Path:
    return get_data_dir() / DB_NAME


def connect(db_path: Path | None = None) -> sqlite3.Connection:
    path = db_path or default_db_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    con = sqlite3.connect(str(path))
    con.row_factory = sqlite3.Row
    # busy_timeout: wait up to 5s on locks held by a concurrent rebuild
    for pragma in ("busy_timeout = 5000", "journal_mode = WAL"):
        try:
            con.execute(f"PRAGMA {pragma}")
        except sqlite3.DatabaseError:
            pass
    return con


SCHEMA_SQL = r"""
BEGIN;
CREATE TABLE IF NOT EXISTS tables (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  kind TEXT NOT NULL,
  max_n INTEGER NOT NULL,
  payload TEXT NOT NULL,
  created_at TEXT NOT NULL DEFAULT (datetime('now')),
  UNIQUE(kind, max_n)
);
CREATE INDEX IF NOT EXISTS idx_tables_kind ON tables(kind, max_n);
COMMIT;
"""


def ensure_db(db_path: Path | None = None) -> sqlite3.Connection:
    con = connect(db_path)
    con.execute(
        "CREATE TABLE IF NOT EXISTS schema_migrations (id INTEGER PRIMARY KEY AUTOINCREMENT, name TEXT NOT NULL UNIQUE, applied_at TEXT NOT NULL DEFAULT (datetime('now')))"
    )
    cur = con.execute("SELECT 1 FROM schema_migrations WHERE name = ?", (MIGRATION_NAME_INIT,))
    if cur.fetchone() is None:
        con.executescript(SCHEMA_SQL)
        con.execute("INSERT INTO schema_migrations(name) VALUES (?)", (MIGRATION_NAME_INIT,))
        con.commit()
        log_event("CACHE", f"initialized {db_path or default_db_path()}")
    return con


def save_table(con: sqlite3.Connection, doc: dict[str, Any]) -> None:
    """Store a symbolic document; evaluated documents (with "q") are not cached."""
    if "q" in doc:
        raise ValueError("only symbolic table documents are cached")
    con.execute(
        "INSERT OR REPLACE INTO tables(kind, max_n, payload) VALUES (?,?,?)",
        (doc["kind"], int(doc["max_n"]), json.dumps(doc["rows"], separators=(",", ":"))),
    )
    con.commit()
    log_event("CACHE", f"stored {doc['kind']} max_n={doc['max_n']}")


def load_table(con: sqlite3.Connection, kind: str, max_n: int) -> dict[str, Any] | None:
    """Smallest cached table of this kind covering max_n, cut down to max_n rows."""
    row = con.execute(
        "SELECT max_n, payload FROM tables WHERE kind = ? AND max_n >= ? ORDER BY max_n LIMIT 1",
        (kind, max_n),
    ).fetchone()
    if row is None:
        return None
    rows = json.loads(row["payload"])
    keep = max_n if kind == "eulerian" else max_n + 1
    log_event("CACHE", f"hit {kind} max_n={max_n} (stored {row['max_n']})")
    return {"kind": kind, "max_n": max_n, "rows": rows[:keep]}


def list_tables(con: sqlite3.Connection) -> list[dict[str, Any]]:
    rows = con.execute(
        "SELECT kind, max_n, length(payload) AS bytes, created_at FROM tables ORDER BY kind, max_n"
    ).fetchall()
    return [dict(r) for r in rows]


def wipe(con: sqlite3.Connection) -> int:
    """Delete every cached table; returns how many were removed."""
    cur = con.execute("DELETE FROM tables")
    con.commit()
    return cur.rowcount

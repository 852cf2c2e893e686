# core/data_access.py
"""
SQLite-backed settings and decision history for the nslat command line.
"""

import datetime
import hashlib
import json
import logging
import os
import sqlite3
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

import pandas as pd

from core.lattice_search import SearchLimits

logger = logging.getLogger(__name__)

BASE_DIR = Path(__file__).resolve().parent.parent
DEFAULT_DB_PATH = BASE_DIR / "data" / "nslat.sqlite"

DEFAULT_SETTINGS = {
    "diagonalization_box": "6",
    "trigonal_search_box": "4",
    "max_search_vectors": "2000000",
    "record_history": "true",
}


def get_db_path() -> Path:
    """``NSLAT_DB`` if set, else data/nslat.sqlite next to the package."""
    env = os.environ.get("NSLAT_DB")
    return Path(env) if env else DEFAULT_DB_PATH


@contextmanager
def get_db_connection():
    """Connection to the nslat database; commits on success, rolls back on error."""
    conn = None
    try:
        path = get_db_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        conn = sqlite3.connect(path, timeout=10.0)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL;")
        yield conn
        conn.commit()
    except Exception:
        if conn:
            conn.rollback()
        raise
    finally:
        if conn:
            conn.close()


# ---------- Schema ----------

def init_db():
    """Create the settings and decisions tables if they are missing."""
    with get_db_connection() as conn:
        cur = conn.cursor()

        # ========== 1. Settings Table ==========
        cur.execute("""
            CREATE TABLE IF NOT EXISTS settings (
                key TEXT PRIMARY KEY,
                value TEXT
            );
        """)

        # ========== 2. Decisions Table ==========
        cur.execute("""
            CREATE TABLE IF NOT EXISTS decisions (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                command TEXT NOT NULL,
                input_digest TEXT,
                result_json TEXT,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            );
        """)
    logger.debug("✓ database ready at %s", get_db_path())


# ---------- Search settings ----------

def set_setting(key: str, value: str):
    """Store a search setting; values are kept as text."""
    if key not in DEFAULT_SETTINGS:
        raise KeyError(f"unknown setting {key!r}")
    init_db()
    with get_db_connection() as conn:
        conn.execute("REPLACE INTO settings (key, value) VALUES (?, ?);", (key, str(value)))


def get_setting(key: str, default: str | None = None) -> str | None:
    """Stored value of a search setting, or ``default`` when unset."""
    init_db()
    with get_db_connection() as conn:
        cur = conn.cursor()
        cur.execute("SELECT value FROM settings WHERE key = ?;", (key,))
        row = cur.fetchone()
    if row:
        return row[0]
    return default if default is not None else DEFAULT_SETTINGS.get(key)


def get_all_settings() -> dict:
    init_db()
    with get_db_connection() as conn:
        rows = conn.execute("SELECT key, value FROM settings;").fetchall()
    merged = dict(DEFAULT_SETTINGS)
    merged.update({r["key"]: r["value"] for r in rows})
    return merged


def _int_setting(key: str) -> int:
    raw = get_setting(key)
    try:
        return int(raw)
    except (TypeError, ValueError):
        logger.warning("⚠️ setting %s=%r is not an integer; using %s", key, raw, DEFAULT_SETTINGS[key])
        return int(DEFAULT_SETTINGS[key])


def load_search_limits(box: int | None = None) -> SearchLimits:
    """
    Search bounds from the settings table; ``box`` overrides the diagonalization box.
    An unreadable database gives the default bounds.
    """
    try:
        limits = SearchLimits(
            diagonalization_box=_int_setting("diagonalization_box"),
            trigonal_search_box=_int_setting("trigonal_search_box"),
            max_search_vectors=_int_setting("max_search_vectors"),
        )
    except (sqlite3.Error, OSError) as exc:
        logger.warning("⚠️ settings unavailable (%s); using default search limits", exc)
        limits = SearchLimits()
    if box is not None:
        limits = replace(limits, diagonalization_box=box)
    return limits


def history_enabled() -> bool:
    return str(get_setting("record_history")).strip().lower() in ("1", "true", "yes", "y")


# ---------- Decisions ----------

def input_digest(document) -> str:
    text = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def record_decision(command: str, document, result: dict):
    init_db()
    with get_db_connection() as conn:
        conn.execute(
            "INSERT INTO decisions (command, input_digest, result_json, created_at) VALUES (?, ?, ?, ?);",
            (
                command,
                input_digest(document),
                json.dumps(result, sort_keys=True),
                datetime.datetime.now().isoformat(timespec="seconds"),
            ),
        )


def get_history(limit: int = 20) -> pd.DataFrame:
    """Latest decisions first."""
    init_db()
    with get_db_connection() as conn:
        return pd.read_sql_query(
            "SELECT id, command, input_digest, result_json, created_at FROM decisions ORDER BY id DESC LIMIT ?;",
            conn,
            params=(int(limit),),
        )

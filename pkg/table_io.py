"""Table export: JSON documents (canonical) and CSV via pandas."""

from __future__ import annotations

import io
from typing import Any

import pandas as pd

from analytic import eulerian
from errors import DomainError, ParseError
from exact_arith import (
    LaurentPoly,
    Rational,
    lp_deserialize,
    lp_eval_rat,
    lp_serialize,
    lp_to_str,
    rat_to_json,
    rat_to_str,
)
from fermionic import build_fermionic_tables
from stirling_q import (
    FIRST,
    SECOND,
    QBellSequence,
    QStirlingTable,
    bell_q,
    build_first_table,
    build_second_table,
)

KINDS = ("s1", "s2", "sf1", "sf2", "bell", "eulerian")
POLY_KINDS = ("s1", "s2", "bell")
CSV_COLUMNS = ["n", "k", "value"]


def _poly_rows(rows: list[list[LaurentPoly]]) -> list[list[Any]]:
    return [[lp_serialize(p) for p in row] for row in rows]


def table_doc(kind: str, n: int, q: Rational | None = None) -> dict[str, Any]:
    """Build the triangle ``kind`` up to row n as a JSON-ready document.

    Eulerian rows start at n = 1; every other kind starts at row 0.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown table kind {kind!r}; expected one of {KINDS}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if q is not None and kind not in POLY_KINDS:
        raise DomainError(f"kind {kind} has integer entries and takes no q")
    rows: list[list[Any]]
    if kind in ("s1", "s2"):
        table = build_first_table(n) if kind == "s1" else build_second_table(n)
        rows = _poly_rows([list(r) for r in table.rows])
    elif kind == "bell":
        table = build_second_table(n)
        rows = _poly_rows([[bell_q(table, m)] for m in range(n + 1)])
    elif kind in ("sf1", "sf2"):
        ft = build_fermionic_tables(n)
        rows = [list(r) for r in (ft.s_f if kind == "sf1" else ft.S_f)]
    else:
        rows = [[eulerian(m, k) for k in range(m)] for m in range(1, n + 1)]
    doc: dict[str, Any] = {"kind": kind, "max_n": n, "rows": rows}
    return doc if q is None else evaluate_doc(doc, q)


def evaluate_doc(doc: dict[str, Any], q: Rational) -> dict[str, Any]:
    """Replace every polynomial cell of a symbolic document by its value at q."""
    kind, max_n, rows = _check_doc(doc)
    if kind not in POLY_KINDS:
        raise DomainError(f"kind {kind} has integer entries and takes no q")
    values = [[rat_to_json(lp_eval_rat(lp_deserialize(cell), q)) for cell in row] for row in rows]
    return {"kind": kind, "max_n": max_n, "q": rat_to_str(q), "rows": values}


def _first_row_index(kind: str) -> int:
    return 1 if kind == "eulerian" else 0


def _row_width(kind: str, n: int) -> int:
    if kind == "bell":
        return 1
    return n if kind == "eulerian" else n + 1


def _check_doc(doc: Any) -> tuple[str, int, list[Any]]:
    if not isinstance(doc, dict):
        raise ParseError("table document must be a JSON object")
    kind, max_n, rows = doc.get("kind"), doc.get("max_n"), doc.get("rows")
    if kind not in KINDS:
        raise ParseError(f"unknown table kind {kind!r}")
    if not isinstance(max_n, int) or isinstance(max_n, bool) or max_n < 1:
        raise ParseError(f"max_n must be a positive integer, got {max_n!r}")
    if not isinstance(rows, list) or len(rows) != max_n + 1 - _first_row_index(kind):
        raise ParseError(f"{kind} document with max_n={max_n} has a wrong number of rows")
    start = _first_row_index(kind)
    for n, row in enumerate(rows, start):
        if not isinstance(row, list) or len(row) != _row_width(kind, n):
            raise ParseError(f"{kind} row {n} must hold {_row_width(kind, n)} cells")
    return kind, max_n, rows


def json_doc_to_table(doc: Any) -> QStirlingTable | QBellSequence | tuple[tuple[int, ...], ...]:
    """Parse a symbolic document back into the in-memory structure it was made from."""
    kind, max_n, rows = _check_doc(doc)
    if "q" in doc:
        raise ParseError("evaluated documents carry numbers, not a table")
    if kind in ("s1", "s2"):
        parsed = tuple(tuple(lp_deserialize(cell) for cell in row) for row in rows)
        return QStirlingTable(FIRST if kind == "s1" else SECOND, max_n, parsed)
    if kind == "bell":
        return QBellSequence(max_n, tuple(lp_deserialize(row[0]) for row in rows))
    out = []
    for row in rows:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise ParseError(f"{kind} rows must hold integers")
        out.append(tuple(row))
    return tuple(out)


def _csv_value(cell: Any) -> Any:
    if isinstance(cell, list):
        return lp_to_str(lp_deserialize(cell))
    return cell


def doc_to_frame(doc: dict[str, Any]) -> pd.DataFrame:
    """One (n, k, value) row per entry; polynomials rendered as text."""
    kind, _, rows = _check_doc(doc)
    start = _first_row_index(kind)
    records = []
    for i, row in enumerate(rows):
        n = i + start
        for k, cell in enumerate(row):
            records.append({"n": n, "k": k, "value": _csv_value(cell)})
    return pd.DataFrame(records, columns=CSV_COLUMNS)


def doc_to_csv(doc: dict[str, Any]) -> str:
    return doc_to_frame(doc).to_csv(index=False, lineterminator="\n")


def csv_to_frame(text: str) -> pd.DataFrame:
    """Read an exported CSV back; values stay strings."""
    df = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    if df.columns.tolist() != CSV_COLUMNS:
        raise ParseError(f"expected columns {CSV_COLUMNS}, got {df.columns.tolist()}")
    return df

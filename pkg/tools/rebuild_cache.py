import sys

from table_io import KINDS, table_doc
from table_store import ensure_db, save_table, wipe

DEFAULT_N = 30


def rebuild(n: int = DEFAULT_N, *, fresh: bool = False) -> dict[str, int]:
    """Precompute every table kind up to row n into the cache."""
    con = ensure_db()
    try:
        removed = wipe(con) if fresh else 0
        for kind in KINDS:
            save_table(con, table_doc(kind, n))
    finally:
        con.close()
    return {"max_n": n, "stored": len(KINDS), "removed": removed}


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_N
    print(rebuild(n, fresh="--fresh" in sys.argv[2:]))

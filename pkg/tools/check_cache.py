from table_store import default_db_path, ensure_db, list_tables


def summary() -> dict:
    con = ensure_db()
    try:
        tables = list_tables(con)
    finally:
        con.close()
    return {"db": str(default_db_path()), "tables": len(tables), "entries": tables}


if __name__ == "__main__":
    info = summary()
    print({"db": info["db"], "tables": info["tables"]})
    for t in info["entries"]:
        print(t["kind"], "|", t["max_n"], "|", t["bytes"], "bytes |", t["created_at"])

from table_store import ensure_db, wipe


def wipe_all() -> int:
    con = ensure_db()
    try:
        return wipe(con)
    finally:
        con.close()


if __name__ == "__main__":
    print(f"wiped {wipe_all()} tables")

from tools import check_cache, rebuild_cache, sequence_check, wipe_cache


def test_sequences_match_oeis_prefixes():
    results = sequence_check.run()
    assert results == {"A000110": True, "A008277": True, "A008275": True, "A008292": True}


def test_cache_maintenance(data_dir):
    stats = rebuild_cache.rebuild(6)
    assert stats == {"max_n": 6, "stored": 6, "removed": 0}
    info = check_cache.summary()
    assert info["tables"] == 6
    assert info["db"] == str(data_dir / "tables.db")
    assert rebuild_cache.rebuild(6, fresh=True)["removed"] == 6
    assert wipe_cache.wipe_all() == 6
    assert check_cache.summary()["tables"] == 0

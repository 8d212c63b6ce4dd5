import os
import random

import pytest

import eoflex


def test_params_fields():
    cp = eoflex.validate_params(2, 5, 3)
    assert (cp.rows, cp.ring, cp.t, cp.columns) == (8, 10, 2, 5)
    assert cp == eoflex.validate_params(2, 5, 3)


def test_invalid_params_raise():
    with pytest.raises(eoflex.CodeError) as info:
        eoflex.validate_params(1, 9, 4)
    assert info.value.code == "DivisorConditionViolated"
    assert info.value.value == 3
    assert isinstance(info.value, ValueError)


def test_encode_decode_every_pair():
    cp = eoflex.validate_params(2, 5, 3)
    rng = random.Random(7)
    info = [bytes(rng.randrange(256) for _ in range(cp.rows * 4)) for _ in range(cp.k)]
    full = eoflex.encode(cp, info)
    assert len(full) == cp.k + 2
    assert full[: cp.k] == info
    for a in range(cp.columns):
        for b in range(a + 1, cp.columns):
            damaged = list(full)
            damaged[a] = damaged[b] = None
            assert eoflex.decode(cp, damaged) == full


def test_counts():
    cp = eoflex.validate_params(2, 5, 3)
    assert eoflex.count_encode_xors(cp) == 34
    assert eoflex.encode_formula(cp) == 34
    d = eoflex.count_decode_xors(cp, 0, 2)
    assert d["total"] == 33 and d["formula"] == 33 and not d["stalled"]
    u = eoflex.update_complexity(cp)
    assert u["measured"] == (17, 8) and u["exact"] == (17, 8) and u["formula"] == (25, 12)


def test_mds_check():
    tested, failing = eoflex.mds_check(eoflex.validate_params(3, 9, 3), trials=3)
    assert tested == 10 and failing == []
    tested, failing = eoflex.mds_check(eoflex.validate_params(2, 7, 4), trials=3)
    assert failing == [(0, 3)]
    assert not eoflex.two_info_recoverable(eoflex.validate_params(2, 7, 4), 0, 3)


def test_shard_round_trip(tmp_path):
    data = os.urandom(3000)
    src = tmp_path / "in.bin"
    src.write_bytes(data)
    paths = eoflex.shard_file(src, eoflex.validate_params(1, 7, 4), 32, tmp_path / "shards")
    assert len(paths) == 6
    os.remove(paths[1])
    os.remove(paths[4])
    missing, written = eoflex.reconstruct(tmp_path / "shards", tmp_path / "out.bin")
    assert missing == [1, 4] and written == len(data)
    assert (tmp_path / "out.bin").read_bytes() == data

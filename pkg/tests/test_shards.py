import random

import pytest

from bfr.constructions import (
    bfr_collect,
    bfr_repair,
    dcbd_construct,
    gab_mds_encode,
    pp_construct,
    rbfr_construct,
    three_block_code,
    transpose_encode,
)
from bfr.errors import CorruptionError, ParameterError
from bfr.fields import BinaryExtField, TowerField
from bfr.regenerating import MBR, MSR, RegenParams
from bfr.shards import (
    code_from_bytes,
    load_shards,
    save_shards,
    shard_bytes,
    symbol_codec,
)


def rand_file(field, count, seed):
    pool = list(field.elements())
    rng = random.Random(seed)
    return [rng.choice(pool) for _ in range(count)]


def build_all():
    """One encoded instance per construction, smallest comfortable sizes."""
    yield transpose_encode(list(range(12)), 8, 4)
    yield three_block_code(
        RegenParams(10, 4, 5, mode=MBR), rand_file(BinaryExtField(4), 42, 1)
    )
    yield pp_construct(
        2, RegenParams(6, 3, 4, mode=MSR), rand_file(BinaryExtField(3), 42, 2)
    )
    yield dcbd_construct(
        3, 1, RegenParams(4, 2, 2, mode=MBR), rand_file(BinaryExtField(3), 18, 3)
    )
    yield gab_mds_encode([9, 2, 55, 7], b=3, c=3, k_c=2, rho=1)
    yield rbfr_construct(
        2,
        RegenParams(6, 3, 4, mode=MBR),
        rand_file(BinaryExtField(3), 36, 4),
        sigma=1,
    )


@pytest.mark.parametrize("code", list(build_all()), ids=lambda c: c.construction)
def test_round_trip(code):
    data = shard_bytes(code)
    assert data[:4] == b"BFR1" and data[4] == 1
    loaded = code_from_bytes(data)
    assert loaded.construction == code.construction
    assert loaded.shards == code.shards
    assert loaded.field == code.field
    if hasattr(code, "params"):
        assert loaded.params == code.params
    # serialization is canonical: same instance, same bytes
    assert shard_bytes(loaded) == data


def test_loaded_instance_still_operates(tmp_path):
    file = rand_file(BinaryExtField(4), 42, 5)
    code = three_block_code(RegenParams(10, 4, 5, mode=MBR), file)
    path = save_shards(code, tmp_path / "toy.bfr")
    loaded = load_shards(path)
    got = bfr_collect(loaded, [0, 1, 2], {0: [0, 1], 1: [2, 4], 2: [0, 3]})
    assert list(got) == file
    vec, report = bfr_repair(
        loaded, (2, 1), [0, 1], {0: [0, 1, 2, 3, 4], 1: [0, 1, 2, 3, 4]}
    )
    assert vec == code.shards[(2, 1)]
    assert report.total == 10


def test_save_into_directory(tmp_path):
    code = transpose_encode(list(range(12)), 8, 4)
    path = save_shards(code, tmp_path)
    assert path.name == "instance.bfr"
    assert load_shards(tmp_path).shards == code.shards


def test_tower_field_symbols_round_trip():
    F = TowerField(BinaryExtField(3), 6)
    width, pack, unpack = symbol_codec(F)
    assert width == 6  # six GF(8) coefficients, one byte each
    for e in [F.zero, F.one, F.unvec([3, 1, 4, 1, 5, 2])]:
        assert unpack(pack(e)) == e
    code = gab_mds_encode(
        rand_file(F, 6, 6), b=3, c=4, k_c=2, rho=0, field=F
    )
    loaded = code_from_bytes(shard_bytes(code))
    assert loaded.shards == code.shards


class TestCorruption:
    def setup_method(self):
        self.data = shard_bytes(transpose_encode(list(range(12)), 8, 4))

    def test_bad_magic(self):
        with pytest.raises(CorruptionError):
            code_from_bytes(b"XXXX" + self.data[4:])

    def test_bad_version(self):
        with pytest.raises(CorruptionError):
            code_from_bytes(self.data[:4] + b"\x09" + self.data[5:])

    def test_unknown_tag(self):
        with pytest.raises(CorruptionError):
            code_from_bytes(self.data[:5] + b"\xfe" + self.data[6:])

    def test_tag_metadata_mismatch(self):
        # valid tag, but not the one the metadata names
        other = self.data[:5] + bytes([3]) + self.data[6:]
        with pytest.raises(CorruptionError):
            code_from_bytes(other)

    def test_truncated_payload(self):
        with pytest.raises(CorruptionError):
            code_from_bytes(self.data[:-1])

    def test_mangled_metadata(self):
        pos = 10
        mangled = bytearray(self.data)
        mangled[pos] ^= 0xFF
        with pytest.raises(CorruptionError):
            code_from_bytes(bytes(mangled))

    def test_out_of_range_symbol(self):
        # transpose over GF(32): payload bytes must stay below 32
        mangled = bytearray(self.data)
        mangled[-1] = 0xFF
        with pytest.raises(CorruptionError):
            code_from_bytes(bytes(mangled))

    def test_unencoded_instance_rejected(self):
        from bfr.constructions import TransposeCode

        with pytest.raises(ParameterError):
            shard_bytes(TransposeCode(8, 4))

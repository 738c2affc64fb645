import numpy as np
import pytest

import oracles
from rdhei.bitplane import decompose
from rdhei.container import LENGTH_FIELD_BITS, capacity
from rdhei.crypto import (
    encrypt_image,
    encrypt_payload,
    keystream_bits,
    keystream_bytes,
    parse_key,
    splitmix64,
    xor_stream,
)

KEY = 0x0123456789ABCDEF


def test_seed_zero_first_output():
    assert oracles.splitmix64(0, 1) == [0xE220A8397B1DCDAF]
    assert int(splitmix64(0, 1)[0]) == 0xE220A8397B1DCDAF


@pytest.mark.parametrize("seed", [0, 1, KEY, 2**64 - 1, 0xDEADBEEF])
def test_keystream_matches_reference(seed):
    assert keystream_bytes(seed, 77).tobytes() == oracles.keystream_bytes(seed, 77)


def test_keystream_deterministic_and_prefix_stable():
    assert np.array_equal(keystream_bytes(KEY, 100)[:40], keystream_bytes(KEY, 40))
    bits = keystream_bits(KEY, 16)
    assert np.array_equal(np.packbits(bits), keystream_bytes(KEY, 2))


def test_distinct_seeds_differ():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        a, b = (int(x) for x in rng.integers(0, 2**63, 2, dtype=np.int64))
        if a != b:
            assert keystream_bytes(a, 64).tobytes() != keystream_bytes(b, 64).tobytes()


def test_parse_key():
    assert parse_key("0123456789abcdef") == KEY
    assert parse_key("0x0123456789ABCDEF") == KEY
    with pytest.raises(ValueError):
        parse_key("1234")
    with pytest.raises(ValueError):
        parse_key("zz23456789abcdef")


def test_image_encryption_involution_and_o_field(lena_container):
    ps = lena_container.serialize()
    enc = encrypt_image(ps, KEY)
    assert encrypt_image(enc, KEY) == ps
    assert np.array_equal(enc.bits[-LENGTH_FIELD_BITS:], ps.bits[-LENGTH_FIELD_BITS:])
    assert capacity(enc) == capacity(ps)
    agree = np.mean(enc.bits[:-LENGTH_FIELD_BITS] == ps.bits[:-LENGTH_FIELD_BITS])
    assert abs(agree - 0.5) < 0.01
    per_plane = (enc.bits[:-LENGTH_FIELD_BITS] == ps.bits[:-LENGTH_FIELD_BITS])
    mn = ps.m * ps.n
    for k in range(7):
        assert abs(per_plane[k * mn:(k + 1) * mn].mean() - 0.5) < 0.01


def test_payload_framing_empty():
    enc = encrypt_payload(b"", None, KEY)
    assert enc.size == 32
    assert np.array_equal(enc, keystream_bits(KEY, 32))


def test_payload_golden_vector():
    # frozen from the pure-Python reference keystream
    enc = encrypt_payload(b"RDHEI-01", None, KEY)
    assert np.packbits(enc).tobytes().hex() == "157a3847f6cbe2d89c5e62aa"
    frame = (64).to_bytes(4, "big") + b"RDHEI-01"
    ref = bytes(a ^ b for a, b in zip(frame, oracles.keystream_bytes(KEY, 12)))
    assert ref.hex() == "157a3847f6cbe2d89c5e62aa"


def test_payload_round_trip_and_partial_bits():
    rng = np.random.default_rng(11)
    for size in (0, 1, 5, 64, 1000):
        data = rng.integers(0, 256, size, dtype=np.uint8).tobytes()
        plain = xor_stream(encrypt_payload(data, None, KEY), KEY)
        assert int("".join(map(str, plain[:32])), 2) == 8 * size
        assert np.packbits(plain[32:]).tobytes() == data
    enc = encrypt_payload(b"\xff", 3, KEY)
    assert xor_stream(enc, KEY)[32:].tolist() == [1, 1, 1]
    with pytest.raises(ValueError):
        encrypt_payload(b"\xff", 9, KEY)


def test_encrypt_small_stack():
    ps = decompose(np.arange(64, dtype=np.uint8).reshape(8, 8))
    enc = encrypt_image(ps, 5)
    assert enc != ps and encrypt_image(enc, 5) == ps

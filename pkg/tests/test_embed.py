import numpy as np
import pytest

from conftest import smooth_image
from rdhei.container import embed_limit, vacate
from rdhei.crypto import encrypt_image
from rdhei.embed import embed, extract, recover, recover_and_extract, vacated_region
from rdhei.errors import CapacityExceeded, RDHError

K_EN = 0x1122334455667788
K_D = 0x8877665544332211


@pytest.fixture(scope="module")
def scene():
    img = smooth_image(np.random.default_rng(21), 48, 40)
    container = vacate(img)
    return img, container, encrypt_image(container.serialize(), K_EN)


def test_empty_payload_touches_only_header(scene):
    img, container, enc = scene
    marked = embed(enc, b"", K_D)
    changed = np.flatnonzero(marked.bits != enc.bits)
    assert changed.size == 0 or (changed.min() >= container.occupied and changed.max() < container.occupied + 32)
    assert extract(marked, K_D) == b""
    assert np.array_equal(recover(marked, K_EN), img)


def test_exact_capacity_fit(scene):
    img, container, enc = scene
    cap = container.capacity_report().capacity_bits
    data = bytes(range(256)) * (cap // 8 // 256 + 1)
    data = data[:cap // 8]
    marked = embed(enc, data, K_D)
    assert extract(marked, K_D) == data
    assert np.array_equal(recover(marked, K_EN), img)
    start, stop = vacated_region(marked)
    assert np.array_equal(marked.bits[:start], enc.bits[:start])
    assert np.array_equal(marked.bits[stop:], enc.bits[stop:])


def test_capacity_exceeded(scene):
    _, container, enc = scene
    cap = container.capacity_report().capacity_bits
    with pytest.raises(CapacityExceeded) as info:
        embed(enc, b"\0" * (cap // 8 + 1), K_D)
    assert info.value.available == cap
    assert info.value.required == 8 * (cap // 8 + 1)


def test_round_trip_random_sizes(scene):
    img, container, enc = scene
    cap = container.capacity_report().capacity_bits // 8
    rng = np.random.default_rng(0)
    for size in rng.integers(0, cap + 1, 15):
        data = rng.integers(0, 256, int(size), dtype=np.uint8).tobytes()
        marked = embed(enc, data, K_D)
        out_img, out_data = recover_and_extract(marked, K_EN, K_D)
        assert out_data == data == extract(marked, K_D)
        assert np.array_equal(out_img, img) and np.array_equal(recover(marked, K_EN), img)


def test_wrong_data_key_never_returns_payload(scene):
    _, _, enc = scene
    data = b"secret payload bytes"
    marked = embed(enc, data, K_D)
    for wrong in range(1, 200):
        try:
            assert extract(marked, K_D ^ wrong) != data
        except RDHError:
            pass


def test_wrong_image_key_detected(scene):
    img, _, enc = scene
    marked = embed(enc, b"x" * 50, K_D)
    detected = 0
    for wrong in range(1, 101):
        try:
            out = recover(marked, K_EN ^ (wrong << 7))
        except RDHError:
            detected += 1
        else:
            assert not np.array_equal(out, img)
    assert detected >= 95


def test_swapped_keys_fail_both_paths(scene):
    img, _, enc = scene
    data = b"payload"
    marked = embed(enc, data, K_D)
    with pytest.raises(RDHError):
        recover(marked, K_D)
    try:
        assert extract(marked, K_EN) != data
    except RDHError:
        pass


def test_unembedded_container_recovers(scene):
    img, _, enc = scene
    assert np.array_equal(recover(enc, K_EN), img)


def test_recovery_ignores_region_rewrites(scene):
    img, container, enc = scene
    rng = np.random.default_rng(4)
    lo, hi = container.occupied, embed_limit(container.m, container.n)
    for _ in range(10):
        bits = enc.bits.copy()
        bits[lo:hi] = rng.integers(0, 2, hi - lo)
        assert np.array_equal(recover(enc.replace_bits(bits), K_EN), img)

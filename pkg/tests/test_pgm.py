import numpy as np
import pytest

from rdhei.errors import FormatError
from rdhei.pgm import decode_pgm, encode_pgm, read_pgm, write_pgm


def test_round_trip(tmp_path):
    img = np.random.default_rng(0).integers(0, 256, (7, 11), dtype=np.uint8)
    write_pgm(tmp_path / "a.pgm", img)
    assert np.array_equal(read_pgm(tmp_path / "a.pgm"), img)
    assert encode_pgm(img).startswith(b"P5\n11 7\n255\n")


def test_comments_in_header():
    data = b"P5\n# made by hand\n3 2 # width height\n255\n" + bytes(range(6))
    assert decode_pgm(data).tolist() == [[0, 1, 2], [3, 4, 5]]


@pytest.mark.parametrize("data", [
    b"P2\n2 2\n255\n0 0 0 0",
    b"P5\n2 2\n65535\n" + bytes(8),
    b"P5\n2 2\n255\n" + bytes(3),
    b"P5\n2",
    b"P5\nx 2\n255\n" + bytes(4),
])
def test_rejects_malformed(data):
    with pytest.raises(FormatError):
        decode_pgm(data)

"""Data-hider and receiver workflows.

``extract`` only takes the data key and ``recover`` only the image key, so
either party can act without the other's secret.
"""
from __future__ import annotations

import numpy as np

from .bitplane import PlaneStack
from .container import (
    PAYLOAD_HEADER_BITS,
    bits_to_int,
    embed_limit,
    parse,
    read_occupied,
)
from .crypto import decrypt_image, encrypt_payload, keystream_bits
from .errors import CapacityExceeded, CorruptionError


def vacated_region(ps: PlaneStack) -> tuple[int, int]:
    """``(start, stop)`` global bit range available to the data hider."""
    return read_occupied(ps), embed_limit(ps.m, ps.n)


def embed(enc: PlaneStack, payload: bytes, key_data: int) -> PlaneStack:
    """Write the encrypted, length-framed payload over the vacated bits."""
    start, stop = vacated_region(enc)
    framed = encrypt_payload(payload, None, key_data)
    if framed.size > stop - start:
        raise CapacityExceeded(max(stop - start - PAYLOAD_HEADER_BITS, 0), framed.size - PAYLOAD_HEADER_BITS)
    bits = enc.bits.copy()
    bits[start:start + framed.size] = framed
    return enc.replace_bits(bits)


def extract_bits(marked: PlaneStack, key_data: int) -> np.ndarray:
    start, stop = vacated_region(marked)
    if stop - start < PAYLOAD_HEADER_BITS:
        raise CorruptionError("vacated region is too small to hold a payload header")
    header = marked.bits[start:start + PAYLOAD_HEADER_BITS] ^ keystream_bits(key_data, PAYLOAD_HEADER_BITS)
    bit_len = bits_to_int(header)
    if bit_len > stop - start - PAYLOAD_HEADER_BITS:
        raise CorruptionError(
            f"payload header claims {bit_len} bits but the region holds "
            f"{stop - start - PAYLOAD_HEADER_BITS}; wrong data key or corrupt image"
        )
    total = PAYLOAD_HEADER_BITS + bit_len
    plain = marked.bits[start:start + total] ^ keystream_bits(key_data, total)
    return plain[PAYLOAD_HEADER_BITS:]


def extract(marked: PlaneStack, key_data: int) -> bytes:
    """Recover the embedded payload bytes using only the data key."""
    return np.packbits(extract_bits(marked, key_data)).tobytes()


def recover(marked: PlaneStack, key_image: int) -> np.ndarray:
    """Rebuild the original image using only the image key."""
    return parse(decrypt_image(marked, key_image)).reconstruct()


def recover_and_extract(marked: PlaneStack, key_image: int, key_data: int):
    return recover(marked, key_image), extract(marked, key_data)


"""Keystream generation and XOR encryption of containers and payloads.

The keystream is splitmix64: output ``i`` (0-based) mixes the state
``seed + (i + 1) * 0x9E3779B97F4A7C15`` and yields 8 bytes, most significant
first; bytes expand to bits MSB first. This is a reproducible stream
generator, not a vetted cipher.
"""
from __future__ import annotations

import numpy as np

from .bitplane import PlaneStack, as_bits
from .container import LENGTH_FIELD_BITS, PAYLOAD_HEADER_BITS, int_to_bits

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_G = np.uint64(GAMMA)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _check_key(key: int) -> int:
    key = int(key)
    if not 0 <= key <= MASK64:
        raise ValueError("keys are unsigned 64-bit integers")
    return key


def parse_key(text: str) -> int:
    """Parse a key given as exactly 16 hexadecimal digits."""
    text = text.strip()
    if text.lower().startswith("0x"):
        text = text[2:]
    if len(text) != 16:
        raise ValueError(f"key must be 16 hex digits, got {len(text)}")
    return int(text, 16)


def splitmix64(seed: int, count: int) -> np.ndarray:
    """The first ``count`` 64-bit outputs for ``seed``."""
    seed = _check_key(seed)
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + steps * _G
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    return z


def keystream_bytes(seed: int, count: int) -> np.ndarray:
    if count < 0:
        raise ValueError("count must be non-negative")
    words = splitmix64(seed, -(-count // 8))
    return words.astype(">u8").view(np.uint8)[:count]


def keystream_bits(seed: int, count: int) -> np.ndarray:
    return np.unpackbits(keystream_bytes(seed, -(-count // 8)))[:count]


def encrypt_image(ps: PlaneStack, key: int) -> PlaneStack:
    """XOR every bit except the trailing occupied-count field. Self-inverse."""
    span = ps.size - LENGTH_FIELD_BITS
    bits = ps.bits.copy()
    bits[:span] ^= keystream_bits(key, span)
    return ps.replace_bits(bits)


decrypt_image = encrypt_image


def encrypt_payload(data: bytes, bit_len: int | None, key: int) -> np.ndarray:
    """Frame ``data`` as ``[bit_len: 32 bits][bits]`` and XOR it with the keystream."""
    data = bytes(data)
    if bit_len is None:
        bit_len = 8 * len(data)
    if not 0 <= bit_len <= 8 * len(data):
        raise ValueError(f"bit_len {bit_len} exceeds the {8 * len(data)} bits supplied")
    payload = np.unpackbits(np.frombuffer(data, dtype=np.uint8))[:bit_len]
    framed = np.concatenate([int_to_bits(bit_len, PAYLOAD_HEADER_BITS), payload])
    return framed ^ keystream_bits(key, framed.size)


def xor_stream(bits, key: int) -> np.ndarray:
    bits = as_bits(bits)
    return bits ^ keystream_bits(key, bits.size)

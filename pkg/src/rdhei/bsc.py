"""Run-length bit-stream codec.

At each cursor position the encoder looks at the run ``L`` of identical bits.
Runs of four or more become a long codeword: ``l - 1`` ones and a zero
(``l = floor(log2 L)``), then ``L - 2**l`` on ``l`` bits big-endian, then the
repeated bit. Shorter runs become a ``0`` followed by the next ``L_fix`` raw
bits, zero padded at the very end of the stream. The stream is not
self-terminating; the decoder stops once it has produced ``target_len`` bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .bitplane import as_bits
from .bpr import BlockGeometry, ScanType, permutation
from .errors import CorruptionError, TruncatedStreamError

MIN_RUN = 4

_OK = 0
_TRUNCATED = 1
_OVERSHOOT = 2


@dataclass(frozen=True)
class CodecParams:
    l_fix: int = 4

    def __post_init__(self):
        if not 1 <= self.l_fix <= 8:
            raise ValueError(f"L_fix must be in 1..8, got {self.l_fix}")


@numba.njit(cache=True)
def _floor_log2(x):
    l = 0
    while x > 1:
        x >>= 1
        l += 1
    return l


@numba.njit(cache=True)
def _run_at(bits, pos):
    n = bits.size
    end = pos + 1
    b = bits[pos]
    while end < n and bits[end] == b:
        end += 1
    return end - pos


@numba.njit(cache=True)
def _encoded_length(bits, l_fix):
    n = bits.size
    pos = 0
    total = 0
    while pos < n:
        run = _run_at(bits, pos)
        if run >= MIN_RUN:
            total += 2 * _floor_log2(run) + 1
            pos += run
        else:
            total += 1 + l_fix
            pos += l_fix
    return total


@numba.njit(cache=True)
def _encode(bits, l_fix):
    n = bits.size
    out = np.zeros(_encoded_length(bits, l_fix), dtype=np.uint8)
    pos = 0
    w = 0
    while pos < n:
        run = _run_at(bits, pos)
        if run >= MIN_RUN:
            l = _floor_log2(run)
            for _ in range(l - 1):
                out[w] = 1
                w += 1
            w += 1  # terminating zero
            mid = run - (1 << l)
            for k in range(l - 1, -1, -1):
                out[w] = (mid >> k) & 1
                w += 1
            out[w] = bits[pos]
            w += 1
            pos += run
        else:
            w += 1  # short-form flag zero
            take = min(l_fix, n - pos)
            for k in range(take):
                out[w + k] = bits[pos + k]
            w += l_fix
            pos += take
    return out


@numba.njit(cache=True)
def _decode(coded, target_len, l_fix):
    out = np.zeros(target_len, dtype=np.uint8)
    size = coded.size
    r = 0
    w = 0
    while w < target_len:
        if r >= size:
            return out, r, _TRUNCATED
        ones = 0
        while r < size and coded[r] == 1:
            ones += 1
            r += 1
        if r >= size:
            return out, r, _TRUNCATED
        r += 1  # the zero closing the prefix
        if ones == 0:
            if r + l_fix > size:
                return out, r, _TRUNCATED
            take = min(l_fix, target_len - w)
            for k in range(take):
                out[w + k] = coded[r + k]
            r += l_fix
            w += take
        else:
            l = ones + 1
            if l > 40:
                return out, r, _OVERSHOOT
            if r + l + 1 > size:
                return out, r, _TRUNCATED
            mid = 0
            for k in range(l):
                mid = (mid << 1) | coded[r + k]
            r += l
            b = coded[r]
            r += 1
            run = (1 << l) + mid
            if w + run > target_len:
                return out, r, _OVERSHOOT
            out[w:w + run] = b
            w += run
    return out, r, _OK


def _params(params) -> CodecParams:
    if isinstance(params, CodecParams):
        return params
    return CodecParams(int(params))


def encode(bits, params=CodecParams()) -> np.ndarray:
    p = _params(params)
    bits = as_bits(bits)
    if bits.size == 0:
        raise ValueError("cannot encode an empty bit stream")
    return _encode(bits, p.l_fix)


def encoded_length(bits, params=CodecParams()) -> int:
    """Length of ``encode(bits, params)`` without materializing it."""
    return int(_encoded_length(as_bits(bits), _params(params).l_fix))


def decode_prefix(coded, target_len: int, params=CodecParams()):
    """Decode ``target_len`` bits from the front of ``coded``.

    Returns ``(bits, consumed)`` where ``consumed`` is the number of coded bits
    read; anything after that is left untouched.
    """
    p = _params(params)
    coded = as_bits(coded)
    if target_len < 0:
        raise ValueError("target length must be non-negative")
    out, consumed, status = _decode(coded, int(target_len), p.l_fix)
    if status == _TRUNCATED:
        raise TruncatedStreamError(
            f"coded stream exhausted after {consumed} bits before producing {target_len}"
        )
    if status == _OVERSHOOT:
        raise CorruptionError(f"run at coded bit {consumed} overshoots target length {target_len}")
    return out, int(consumed)


def decode(coded, target_len: int, params=CodecParams()) -> np.ndarray:
    return decode_prefix(coded, target_len, params)[0]


@dataclass(frozen=True, eq=False)
class CompressedPlane:
    flag: int
    scan_type: ScanType
    body: np.ndarray

    @property
    def cost(self) -> int:
        """Stored bits including the 1-bit flag and 2-bit type header."""
        return 3 + self.body.size


def best_scan(plane, geom: BlockGeometry, params=CodecParams()):
    """``(length, scan_type)`` of the shortest encoding over the four scan types."""
    p = _params(params)
    bits = as_bits(plane)
    best = None
    for t in ScanType:
        length = int(_encoded_length(bits[permutation(geom, t)], p.l_fix))
        if best is None or length < best[0]:
            best = (length, t)
    return best


def compress_plane(plane, geom: BlockGeometry, params=CodecParams()) -> CompressedPlane:
    p = _params(params)
    bits = as_bits(plane)
    if bits.size != geom.size:
        raise ValueError(f"plane has {bits.size} bits, geometry expects {geom.size}")
    length, t = best_scan(bits, geom, p)
    if length < geom.size:
        return CompressedPlane(1, t, _encode(bits[permutation(geom, t)], p.l_fix))
    return CompressedPlane(0, ScanType.ROW_ROW, bits.copy())


def decompress_plane(flag: int, t, coded, geom: BlockGeometry, params=CodecParams()):
    """Inverse of :func:`compress_plane` reading from the front of ``coded``.

    Returns ``(plane, consumed)``.
    """
    coded = as_bits(coded)
    if not flag:
        if coded.size < geom.size:
            raise TruncatedStreamError("uncompressed plane is cut short")
        return coded[:geom.size].copy(), geom.size
    stream, consumed = decode_prefix(coded, geom.size, params)
    out = np.empty_like(stream)
    out[permutation(geom, t)] = stream
    return out, consumed

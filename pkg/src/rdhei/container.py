"""The room-vacated image and its on-image bit layout.

In global bit order (see :mod:`rdhei.bitplane`) a container serializes as::

    [AUX][plane 8 segment] ... [plane 1 segment][zeros ...][O: 32 bits]

``AUX`` is ``log2(s)`` on 4 bits, ``L_fix - 1`` on 3 bits, the overflow count
``t`` on ``P = ceil(log2(m*n))`` bits and ``t`` ascending row-major overflow
locations of ``P`` bits each. A plane segment is a compression flag bit, a
2-bit scan type and the body (the coded stream, or the raw plane when the
flag is 0). ``O`` is the number of occupied bits before the zero fill; it is
the only field left in plaintext by image encryption.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bitplane import NUM_PLANES, PlaneStack, check_image, plane_slice, stack_planes
from .bpr import BLOCK_SIDES, BlockGeometry, ScanType, permutation
from .bsc import CodecParams, CompressedPlane, _encode, _encoded_length, decompress_plane
from .errors import CorruptionError, FormatError, NotEmbeddable
from .predictor import error_to_planestack, predict_image, reconstruct_image

LENGTH_FIELD_BITS = 32
PAYLOAD_HEADER_BITS = 32
BLOCK_CODE_BITS = 4
LFIX_BITS = 3
L_FIX_VALUES = tuple(range(1, 9))


def int_to_bits(value: int, width: int) -> np.ndarray:
    if value < 0 or value >= 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> k) & 1 for k in range(width - 1, -1, -1)], dtype=np.uint8)


def bits_to_int(bits) -> int:
    value = 0
    for b in np.asarray(bits).tolist():
        value = (value << 1) | int(b)
    return value


def location_bits(m: int, n: int) -> int:
    """Width ``P`` of the overflow count and location fields."""
    return max(1, (m * n - 1).bit_length())


def aux_length(m: int, n: int, overflow_count: int) -> int:
    p = location_bits(m, n)
    return BLOCK_CODE_BITS + LFIX_BITS + p * (1 + overflow_count)


def embed_limit(m: int, n: int) -> int:
    """Highest admissible occupied count: everything but the length record."""
    return NUM_PLANES * m * n - LENGTH_FIELD_BITS


@dataclass(frozen=True)
class CapacityReport:
    occupied_bits: int
    capacity_bits: int
    net_er: float


def _capacity_report(m: int, n: int, occupied: int) -> CapacityReport:
    raw = embed_limit(m, n) - occupied - PAYLOAD_HEADER_BITS
    cap = max(raw, 0)
    return CapacityReport(occupied, cap, cap / (m * n))


@dataclass(frozen=True, eq=False)
class Container:
    m: int
    n: int
    block_side: int
    l_fix: int
    overflow_locations: np.ndarray
    planes: tuple  # CompressedPlane for planes 8..1
    raw_planes: tuple | None = field(default=None, repr=False)

    @property
    def overflow_count(self) -> int:
        return int(self.overflow_locations.size)

    @property
    def aux_length(self) -> int:
        return aux_length(self.m, self.n, self.overflow_count)

    @property
    def occupied(self) -> int:
        return self.aux_length + sum(p.cost for p in self.planes)

    @property
    def flags(self) -> list[int]:
        """Compression flags ordered plane 8 first."""
        return [p.flag for p in self.planes]

    def capacity_report(self) -> CapacityReport:
        return _capacity_report(self.m, self.n, self.occupied)

    def aux_bits(self) -> np.ndarray:
        p = location_bits(self.m, self.n)
        parts = [
            int_to_bits(self.block_side.bit_length() - 1, BLOCK_CODE_BITS),
            int_to_bits(self.l_fix - 1, LFIX_BITS),
            int_to_bits(self.overflow_count, p),
        ]
        parts.extend(int_to_bits(int(loc), p) for loc in self.overflow_locations)
        return np.concatenate(parts)

    def serialize(self) -> PlaneStack:
        occupied = self.occupied
        limit = embed_limit(self.m, self.n)
        if occupied > limit:
            raise NotEmbeddable(occupied, limit)
        bits = np.zeros(NUM_PLANES * self.m * self.n, dtype=np.uint8)
        pos = 0
        for chunk in [self.aux_bits()] + [
            np.concatenate([[p.flag], int_to_bits(int(p.scan_type), 2), p.body])
            for p in self.planes
        ]:
            bits[pos:pos + chunk.size] = chunk
            pos += chunk.size
        bits[limit:] = int_to_bits(occupied, LENGTH_FIELD_BITS)
        return PlaneStack(self.m, self.n, bits)

    def error_planes(self) -> PlaneStack:
        """The prediction-error plane stack the container encodes."""
        if self.raw_planes is None:
            raise ValueError("container carries no decoded planes")
        return stack_planes(self.raw_planes, self.m, self.n)

    def reconstruct(self) -> np.ndarray:
        return reconstruct_image(self.error_planes(), self.overflow_locations, self.m, self.n)

    def __eq__(self, other):
        if not isinstance(other, Container):
            return NotImplemented
        same_header = (self.m, self.n, self.block_side, self.l_fix) == (
            other.m, other.n, other.block_side, other.l_fix)
        return (
            same_header
            and np.array_equal(self.overflow_locations, other.overflow_locations)
            and all(
                a.flag == b.flag and a.scan_type == b.scan_type and np.array_equal(a.body, b.body)
                for a, b in zip(self.planes, other.planes)
            )
        )


def search_parameters(planes, m: int, n: int, overflow_count: int):
    """Exhaustive (block side, L_fix) search minimizing the occupied bits.

    Returns ``(occupied, block_side, l_fix)``; ties go to the smaller block
    side, then the smaller L_fix.
    """
    mn = m * n
    aux = aux_length(m, n, overflow_count)
    best = None
    for s in BLOCK_SIDES:
        geom = BlockGeometry(m, n, s)
        scans = [[plane[permutation(geom, t)] for t in ScanType] for plane in planes]
        for l_fix in L_FIX_VALUES:
            total = aux
            for variants in scans:
                length = min(int(_encoded_length(v, l_fix)) for v in variants)
                total += 3 + min(length, mn)
            if best is None or total < best[0]:
                best = (total, s, l_fix)
    return best


def vacate(img) -> Container:
    """Compress the prediction-error planes of ``img`` to vacate room.

    Raises :class:`NotEmbeddable` when the result leaves no space for the
    trailing length record.
    """
    img = check_image(img)
    m, n = img.shape
    err = predict_image(img)
    ps = error_to_planestack(err)
    planes = [plane_slice(ps, k) for k in range(NUM_PLANES, 0, -1)]
    occupied, s, l_fix = search_parameters(planes, m, n, err.overflow_locations.size)
    limit = embed_limit(m, n)
    if occupied > limit:
        raise NotEmbeddable(occupied, limit)
    geom = BlockGeometry(m, n, s)
    compressed = []
    for plane in planes:
        best = None
        for t in ScanType:
            coded = _encode(plane[permutation(geom, t)], l_fix)
            if best is None or coded.size < best[1].size:
                best = (t, coded)
        if best[1].size < geom.size:
            compressed.append(CompressedPlane(1, best[0], best[1]))
        else:
            compressed.append(CompressedPlane(0, ScanType.ROW_ROW, plane.copy()))
    container = Container(m, n, s, l_fix, err.overflow_locations, tuple(compressed),
                          tuple(p.copy() for p in planes))
    assert container.occupied == occupied
    return container


def read_occupied(ps: PlaneStack) -> int:
    o = bits_to_int(ps.bits[-LENGTH_FIELD_BITS:])
    limit = embed_limit(ps.m, ps.n)
    if o > limit or o < aux_length(ps.m, ps.n, 0):
        raise FormatError(f"occupied count {o} is outside [0, {limit}]")
    return o


def capacity(ps: PlaneStack) -> CapacityReport:
    return _capacity_report(ps.m, ps.n, read_occupied(ps))


def parse(ps: PlaneStack) -> Container:
    """Read a plaintext container, decoding every plane.

    Raises :class:`FormatError` for impossible header values and
    :class:`CorruptionError` when the segments disagree with the stored
    occupied count.
    """
    m, n = ps.m, ps.n
    mn = m * n
    occupied = read_occupied(ps)
    bits = ps.bits[:occupied]
    p = location_bits(m, n)

    code = bits_to_int(bits[:BLOCK_CODE_BITS])
    if not 1 <= code <= len(BLOCK_SIDES):
        raise FormatError(f"block size code {code} is not in 1..{len(BLOCK_SIDES)}")
    block_side = 1 << code
    l_fix = bits_to_int(bits[BLOCK_CODE_BITS:BLOCK_CODE_BITS + LFIX_BITS]) + 1
    pos = BLOCK_CODE_BITS + LFIX_BITS
    t = bits_to_int(bits[pos:pos + p])
    pos += p
    if pos + t * p > occupied:
        raise FormatError(f"overflow count {t} does not fit in the occupied region")
    if t:
        fields = bits[pos:pos + t * p].reshape(t, p).astype(np.int64)
        locations = fields @ (1 << np.arange(p - 1, -1, -1, dtype=np.int64))
    else:
        locations = np.zeros(0, dtype=np.int64)
    pos += t * p
    if t and (locations[0] < 1 or locations[-1] >= mn or np.any(np.diff(locations) <= 0)):
        raise FormatError("overflow locations must be ascending pixel indices")

    geom = BlockGeometry(m, n, block_side)
    params = CodecParams(l_fix)
    segments = []
    raw = []
    for k in range(NUM_PLANES, 0, -1):
        if pos + 3 > occupied:
            raise CorruptionError(f"segment header for plane {k} runs past the occupied region")
        flag = int(bits[pos])
        scan = ScanType(bits_to_int(bits[pos + 1:pos + 3]))
        if not flag and scan != ScanType.ROW_ROW:
            raise FormatError(f"uncompressed plane {k} carries scan type {int(scan):02b}")
        pos += 3
        try:
            plane, used = decompress_plane(flag, scan, bits[pos:], geom, params)
        except CorruptionError as exc:
            raise CorruptionError(f"plane {k}: {exc}") from exc
        segments.append(CompressedPlane(flag, scan, bits[pos:pos + used].copy()))
        raw.append(plane)
        pos += used
    if pos != occupied:
        raise CorruptionError(f"segments end at bit {pos} but the length record says {occupied}")
    return Container(m, n, block_side, l_fix, locations, tuple(segments), tuple(raw))

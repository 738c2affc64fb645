"""Conversion between 8-bit grayscale images and serialized bit-plane stacks.

Plane ``k`` (1..8) holds the bit of weight ``2**(k-1)``; plane 8 is the MSB.
The serialized bit string stores plane 8 first and plane 1 last, each plane
in row-major order, so the bit of plane ``k`` at zero-based ``(r, c)`` lives at
``(8 - k) * m * n + r * n + c``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NUM_PLANES = 8


def as_bits(bits) -> np.ndarray:
    """Return ``bits`` as a flat uint8 array of zeros and ones."""
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bit arrays may only contain 0 and 1")
    return arr


def check_image(img) -> np.ndarray:
    """Validate a grayscale image and return it as a 2-D uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale image, got shape {arr.shape}")
    m, n = arr.shape
    if m < 2 or n < 2:
        raise ValueError(f"image must be at least 2x2, got {m}x{n}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"pixel values must be integers, got {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


@dataclass(frozen=True, eq=False)
class PlaneStack:
    """The 8 bit-planes of an ``m x n`` image as one bit string."""

    m: int
    n: int
    bits: np.ndarray

    def __post_init__(self):
        bits = as_bits(self.bits)
        if bits.size != NUM_PLANES * self.m * self.n:
            raise ValueError(
                f"plane stack for {self.m}x{self.n} needs {NUM_PLANES * self.m * self.n} bits, "
                f"got {bits.size}"
            )
        if bits is self.bits:
            bits = bits.copy()
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def size(self) -> int:
        return self.bits.size

    def __eq__(self, other):
        if not isinstance(other, PlaneStack):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and np.array_equal(self.bits, other.bits)

    def __repr__(self):
        return f"PlaneStack(m={self.m}, n={self.n})"

    def replace_bits(self, bits) -> "PlaneStack":
        return PlaneStack(self.m, self.n, bits)


def global_index(k: int, i: int, j: int, m: int, n: int) -> int:
    """Position of plane ``k`` at 1-based pixel ``(i, j)`` in the serialized string."""
    return (NUM_PLANES - k) * m * n + (i - 1) * n + (j - 1)


def decompose(img) -> PlaneStack:
    img = check_image(img)
    m, n = img.shape
    shifts = np.arange(NUM_PLANES - 1, -1, -1, dtype=np.uint8)  # plane 8 first
    bits = (img.ravel()[None, :] >> shifts[:, None]) & 1
    return PlaneStack(m, n, bits.ravel())


def recompose(ps: PlaneStack) -> np.ndarray:
    planes = ps.bits.reshape(NUM_PLANES, ps.m * ps.n).astype(np.uint16)
    weights = (1 << np.arange(NUM_PLANES - 1, -1, -1)).astype(np.uint16)
    pixels = (planes * weights[:, None]).sum(axis=0)
    return pixels.astype(np.uint8).reshape(ps.m, ps.n)


def plane_slice(ps: PlaneStack, k: int) -> np.ndarray:
    """Row-major bits of plane ``k`` (8 = MSB, 1 = LSB)."""
    if not 1 <= k <= NUM_PLANES:
        raise ValueError(f"plane index must be in 1..8, got {k}")
    mn = ps.m * ps.n
    start = (NUM_PLANES - k) * mn
    return ps.bits[start:start + mn]


def stack_planes(planes, m: int, n: int) -> PlaneStack:
    """Inverse of slicing: ``planes`` ordered from plane 8 down to plane 1."""
    planes = list(planes)
    if len(planes) != NUM_PLANES:
        raise ValueError("exactly 8 planes are required")
    return PlaneStack(m, n, np.concatenate([as_bits(p) for p in planes]))

"""Block-based bit-plane rearrangement.

A plane is cut into ``s x s`` blocks (clipped at the right and bottom edges)
and re-read in one of four scan types. The high bit of the type code picks
the scan inside a block, the low bit the order of the blocks::

    0b00  blocks row by row,    bits in block row by row
    0b01  blocks column-wise,   bits in block row by row
    0b10  blocks row by row,    bits in block column-wise
    0b11  blocks column-wise,   bits in block column-wise
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

import numpy as np

from .bitplane import as_bits


class ScanType(IntEnum):
    ROW_ROW = 0b00
    COL_BLOCKS = 0b01
    COL_INSIDE = 0b10
    COL_COL = 0b11

    @property
    def blocks_column_major(self) -> bool:
        return bool(self & 0b01)

    @property
    def inside_column_major(self) -> bool:
        return bool(self & 0b10)


BLOCK_SIDES = (2, 4, 8, 16)


@dataclass(frozen=True)
class BlockGeometry:
    m: int
    n: int
    s: int

    def __post_init__(self):
        if self.s < 2:
            raise ValueError(f"block side must be at least 2, got {self.s}")
        if self.m < 1 or self.n < 1:
            raise ValueError("plane dimensions must be positive")

    @property
    def size(self) -> int:
        return self.m * self.n


@lru_cache(maxsize=128)
def _permutation(m: int, n: int, s: int, t: int) -> np.ndarray:
    rows, cols = np.divmod(np.arange(m * n, dtype=np.int64), n)
    br, ir = np.divmod(rows, s)
    bc, ic = np.divmod(cols, s)
    nbr = -(-m // s)
    nbc = -(-n // s)
    st = ScanType(t)
    block_key = bc * nbr + br if st.blocks_column_major else br * nbc + bc
    inner_key = ic * s + ir if st.inside_column_major else ir * s + ic
    perm = np.argsort(block_key * (s * s) + inner_key, kind="stable")
    perm.flags.writeable = False
    return perm


def permutation(geom: BlockGeometry, t) -> np.ndarray:
    """Index array ``p`` such that ``rearrange(plane) == plane[p]``."""
    return _permutation(geom.m, geom.n, geom.s, int(ScanType(t)))


def _checked(plane, geom: BlockGeometry) -> np.ndarray:
    bits = as_bits(plane)
    if bits.size != geom.size:
        raise ValueError(f"plane has {bits.size} bits, geometry expects {geom.size}")
    return bits


def rearrange(plane, geom: BlockGeometry, t) -> np.ndarray:
    return _checked(plane, geom)[permutation(geom, t)]


def inverse_rearrange(stream, geom: BlockGeometry, t) -> np.ndarray:
    bits = _checked(stream, geom)
    out = np.empty_like(bits)
    out[permutation(geom, t)] = bits
    return out

"""Median edge detector prediction and the prediction-error image.

Border pixels use a simpler causal rule: pixel (0, 0) is stored verbatim,
the rest of the first row is predicted from its left neighbour and the rest
of the first column from the pixel above. Every other pixel uses MED on its
upper-left, upper and left neighbours.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .bitplane import PlaneStack, check_image, decompose, recompose
from .errors import CorruptionError, FormatError

ERROR = 0
REFERENCE = 1
OVERFLOW = 2

MAX_MAGNITUDE = 127


def med_predict(x1: int, x2: int, x3: int) -> int:
    """MED prediction from the upper-left (x1), upper (x2) and left (x3) neighbours."""
    lo, hi = min(x2, x3), max(x2, x3)
    if x1 <= lo:
        return hi
    if x1 >= hi:
        return lo
    return x2 + x3 - x1


def predict_values(img: np.ndarray) -> np.ndarray:
    """Predicted value for every pixel (int16, unclamped); (0, 0) is left at 0."""
    x = img.astype(np.int16)
    px = np.zeros_like(x)
    px[0, 1:] = x[0, :-1]
    px[1:, 0] = x[:-1, 0]
    x1 = x[:-1, :-1]
    x2 = x[:-1, 1:]
    x3 = x[1:, :-1]
    lo = np.minimum(x2, x3)
    hi = np.maximum(x2, x3)
    px[1:, 1:] = np.where(x1 <= lo, hi, np.where(x1 >= hi, lo, x2 + x3 - x1))
    return px


@dataclass(frozen=True, eq=False)
class ErrorImage:
    """Per-pixel prediction-error records.

    ``kind`` marks each pixel as ERROR, REFERENCE or OVERFLOW; ``code`` is the
    byte stored in-plane for it (sign bit plus 7-bit magnitude for ERROR
    entries, the original pixel otherwise).
    """

    kind: np.ndarray
    code: np.ndarray
    overflow_locations: np.ndarray

    @property
    def m(self) -> int:
        return self.kind.shape[0]

    @property
    def n(self) -> int:
        return self.kind.shape[1]

    @property
    def sign(self) -> np.ndarray:
        return np.where(self.kind == ERROR, self.code >> 7, 0).astype(np.uint8)

    @property
    def magnitude(self) -> np.ndarray:
        return np.where(self.kind == ERROR, self.code & 0x7F, 0).astype(np.uint8)

    def signed_error(self) -> np.ndarray:
        mag = self.magnitude.astype(np.int16)
        return np.where(self.sign == 1, -mag, mag)


def predict_image(img) -> ErrorImage:
    img = check_image(img)
    m, n = img.shape
    ex = img.astype(np.int16) - predict_values(img)
    kind = np.where(np.abs(ex) > MAX_MAGNITUDE, OVERFLOW, ERROR).astype(np.uint8)
    kind[0, 0] = REFERENCE
    code = np.where(ex < 0, 0x80, 0) | np.minimum(np.abs(ex), MAX_MAGNITUDE)
    code = code.astype(np.uint8)
    verbatim = kind != ERROR
    code[verbatim] = img[verbatim]
    overflow = np.flatnonzero(kind.ravel() == OVERFLOW).astype(np.int64)
    return ErrorImage(kind, code, overflow)


def error_to_planestack(err: ErrorImage) -> PlaneStack:
    return decompose(err.code)


@numba.njit(cache=True)
def _reconstruct(code, verbatim):
    m, n = code.shape
    out = np.zeros((m, n), dtype=np.int16)
    for i in range(m):
        for j in range(n):
            c = np.int16(code[i, j])
            if verbatim[i, j]:
                out[i, j] = c
                continue
            if i == 0:
                px = out[0, j - 1]
            elif j == 0:
                px = out[i - 1, 0]
            else:
                x1 = out[i - 1, j - 1]
                x2 = out[i - 1, j]
                x3 = out[i, j - 1]
                lo = min(x2, x3)
                hi = max(x2, x3)
                if x1 <= lo:
                    px = hi
                elif x1 >= hi:
                    px = lo
                else:
                    px = x2 + x3 - x1
            mag = c & 0x7F
            value = px - mag if c & 0x80 else px + mag
            if value < 0 or value > 255:
                return out, i * n + j
            out[i, j] = value
    return out, -1


def reconstruct_image(ps: PlaneStack, overflow_locations, m: int | None = None,
                      n: int | None = None) -> np.ndarray:
    """Invert ``error_to_planestack(predict_image(img))`` in raster order."""
    m = ps.m if m is None else m
    n = ps.n if n is None else n
    if (m, n) != (ps.m, ps.n):
        raise ValueError(f"plane stack is {ps.m}x{ps.n}, expected {m}x{n}")
    locs = np.asarray(overflow_locations, dtype=np.int64)
    if locs.size and (locs.min() < 0 or locs.max() >= m * n):
        raise FormatError("overflow location outside the image")
    verbatim = np.zeros(m * n, dtype=np.bool_)
    verbatim[locs] = True
    verbatim[0] = True
    out, bad = _reconstruct(recompose(ps), verbatim.reshape(m, n))
    if bad >= 0:
        raise CorruptionError(
            f"reconstructed pixel at ({bad // n}, {bad % n}) is outside [0, 255]"
        )
    return out.astype(np.uint8)

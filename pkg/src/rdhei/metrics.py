"""Image quality and embedding-rate metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


@dataclass(frozen=True)
class QualityReport:
    psnr: float
    ssim: float
    er: float


def _pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.mean((a - b) ** 2))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / err)


def ssim(a, b) -> float:
    """Mean SSIM with an 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03."""
    a, b = _pair(a, b)
    if a.ndim != 2 or min(a.shape) < SSIM_WINDOW:
        raise ValueError(f"SSIM needs a 2-D image of at least {SSIM_WINDOW}x{SSIM_WINDOW}")
    # truncate chosen so the kernel radius is exactly 5 taps
    truncate = ((SSIM_WINDOW - 1) // 2) / SSIM_SIGMA

    def blur(x):
        return gaussian_filter(x, SSIM_SIGMA, truncate=truncate, mode="reflect")

    mu_a, mu_b = blur(a), blur(b)
    var_a = blur(a * a) - mu_a ** 2
    var_b = blur(b * b) - mu_b ** 2
    cov = blur(a * b) - mu_a * mu_b
    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a ** 2 + mu_b ** 2 + c1) * (var_a + var_b + c2)
    pad = (SSIM_WINDOW - 1) // 2
    s = (num / den)[pad:-pad, pad:-pad]
    return float(s.mean())


def embedding_rate(capacity_bits: int, m: int, n: int) -> float:
    """Bits per pixel."""
    if m * n <= 0:
        raise ValueError("image must have at least one pixel")
    return capacity_bits / (m * n)


def quality(original, restored, capacity_bits: int) -> QualityReport:
    m, n = np.shape(original)
    return QualityReport(psnr(original, restored), ssim(original, restored),
                         embedding_rate(capacity_bits, m, n))
